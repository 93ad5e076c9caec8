"""SplitMix64 streams and seed derivation.

Every random decision in revspy flows from a 64-bit seed through SplitMix64.
The generator is counter based: output k of the stream started at ``seed``
is ``mix(seed + (k + 1) * GOLDEN)``, so any position of a stream can be
read without replaying the ones before it. G(n,p) sampling relies on this
to evaluate the coin of an arbitrary vertex pair directly.

A uniform draw in [0, 1) is ``(x >> 11) * 2**-53``. Coin flips with success
probability p compare the integer ``x >> 11`` against ``ceil(p * 2**53)``,
which is exact for every double p and identical on every platform.
"""

from __future__ import annotations

import hashlib
import math
from typing import TYPE_CHECKING

import numpy as np


if TYPE_CHECKING:
    from collections.abc import Sequence

    from numpy.typing import NDArray


MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

_NP_GOLDEN = np.uint64(GOLDEN)
_NP_MUL1 = np.uint64(_MUL1)
_NP_MUL2 = np.uint64(_MUL2)
_NP_30 = np.uint64(30)
_NP_27 = np.uint64(27)
_NP_31 = np.uint64(31)
_NP_11 = np.uint64(11)
_NP_1 = np.uint64(1)


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


def stream_value(seed: int, k: int) -> int:
    """Return output ``k`` (0-based) of the SplitMix64 stream for ``seed``."""
    return mix64((seed + (k + 1) * GOLDEN) & MASK64)


def stream_values(seed: int, ks: NDArray[np.uint64]) -> NDArray[np.uint64]:
    """Vectorized :func:`stream_value` over an array of stream positions."""
    z = np.uint64(seed & MASK64) + (ks + _NP_1) * _NP_GOLDEN
    z = (z ^ (z >> _NP_30)) * _NP_MUL1
    z = (z ^ (z >> _NP_27)) * _NP_MUL2
    return z ^ (z >> _NP_31)


def coin_threshold(p: float) -> int:
    """Integer threshold T with ``(x >> 11) < T`` iff ``uniform(x) < p``."""
    return math.ceil(p * 2.0**53)


def coins(seed: int, ks: NDArray[np.uint64], p: float) -> NDArray[np.bool_]:
    """Bernoulli(p) outcomes for the given stream positions."""
    threshold = coin_threshold(p)
    if threshold <= 0:
        return np.zeros(ks.shape, dtype=np.bool_)
    if threshold >= 1 << 53:
        return np.ones(ks.shape, dtype=np.bool_)
    return (stream_values(seed, ks) >> _NP_11) < np.uint64(threshold)


def derive_seed(seed: int, tag: str, *indices: int) -> int:
    """Derive an independent 64-bit seed for a named component.

    The derivation hashes the tag with BLAKE2b (8-byte digest) and folds the
    indices in through the SplitMix64 finalizer, so ``(seed, tag, indices)``
    maps to the same value on every platform and Python version.
    """
    digest = hashlib.blake2b(tag.encode("utf-8"), digest_size=8).digest()
    z = (seed ^ int.from_bytes(digest, "little")) & MASK64
    z = mix64((z + GOLDEN) & MASK64)
    for index in indices:
        z = mix64((z + (index + 1) * GOLDEN) & MASK64)
    return z


class SplitMix64:
    """Sequential SplitMix64 stream with the helpers strategies need.

    Example:
        >>> rng = SplitMix64(7)
        >>> 0 <= rng.below(10) < 10
        True
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        """Advance the stream and return the next 64-bit output."""
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def choice(self, items: Sequence[int]) -> int:
        """Uniformly chosen element of a non-empty sequence."""
        return items[self.below(len(items))]

    def sample(self, population: int, k: int) -> list[int]:
        """k distinct values from range(population), in draw order.

        Partial Fisher-Yates over a sparse swap table, so drawing a few
        values out of a large population costs O(k).
        """
        if k > population:
            raise ValueError("sample larger than population")
        swaps: dict[int, int] = {}
        out: list[int] = []
        for i in range(k):
            j = i + self.below(population - i)
            out.append(swaps.get(j, j))
            swaps[j] = swaps.get(i, i)
        return out
