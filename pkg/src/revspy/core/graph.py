"""Immutable graphs, BFS neighbourhoods and seeded G(n,p) sampling.

Vertices are ``0..n-1``. A :class:`Graph` stores sorted neighbour tuples and
is never mutated after construction, so one instance can be shared by any
number of concurrent games and checkers. Bitset views of neighbourhoods
(Python ints, bit ``u`` set for vertex ``u``) are built lazily on first use;
the property checkers lean on them for fast membership tests.

Sampling follows the edge-list convention used across revspy: the unordered
pair ``{u, v}`` with ``u < v`` has lexicographic index
``u * (2n - u - 1) / 2 + (v - u - 1)`` and its coin is output number
``index`` of the SplitMix64 stream of the seed (see :mod:`revspy.core.rng`).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Protocol, runtime_checkable

import numpy as np

from revspy.core.exceptions import GraphFormatError, InvalidVertexError, ParameterError
from revspy.core.rng import coins


if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator


VertexSet = tuple[int, ...]
"""Strictly increasing tuple of vertex ids."""

BITSET_LIMIT = 4096
"""Largest n for which checkers use the bitset index."""


@runtime_checkable
class NeighborhoodView(Protocol):
    """Anything that can answer neighbourhood queries on vertices ``0..n-1``."""

    @property
    def n(self) -> int:
        """Vertex count."""
        ...

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbours of ``v``."""
        ...


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Use :meth:`from_edges` (validating) or the module-level constructors
    rather than calling ``Graph(...)`` with raw adjacency.

    Example:
        >>> g = Graph.from_edges(3, [(0, 1), (1, 2)])
        >>> g.neighbors(1)
        (0, 2)
        >>> g.edge_count
        2
    """

    def __init__(self, n: int, adjacency: tuple[tuple[int, ...], ...]) -> None:
        if n < 0:
            raise ParameterError("n", n, "must be non-negative")
        if len(adjacency) != n:
            raise ValueError("adjacency must have one entry per vertex")
        self._n = n
        self._adjacency = adjacency
        self._edge_count = sum(len(a) for a in adjacency) // 2
        self._ball_masks: dict[int, tuple[int, ...]] = {}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from an edge iterable, rejecting loops and repeats.

        Raises:
            InvalidVertexError: If an endpoint is outside ``0..n-1``.
            ValueError: On a self-loop or a duplicate edge.
        """
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            for x in (u, v):
                if not 0 <= x < n:
                    raise InvalidVertexError(x, n)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in neighbor_sets[u]:
                raise ValueError(f"duplicate edge {min(u, v)} {max(u, v)}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in neighbor_sets))

    @property
    def n(self) -> int:
        """Vertex count."""
        return self._n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbour tuples."""
        return self._adjacency

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return self._edge_count

    def vertices(self) -> range:
        """All vertex ids."""
        return range(self._n)

    def check_vertex(self, v: int) -> None:
        """Raise InvalidVertexError unless ``0 <= v < n``."""
        if not 0 <= v < self._n:
            raise InvalidVertexError(v, self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbours of ``v``."""
        self.check_vertex(v)
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        """Degree of ``v``."""
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        """Whether ``{u, v}`` is an edge."""
        self.check_vertex(u)
        self.check_vertex(v)
        return (self.open_masks[u] >> v) & 1 == 1

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self._adjacency):
            for v in nbrs:
                if v > u:
                    yield u, v

    def max_degree(self) -> int:
        """Largest degree (0 for the empty graph)."""
        return max((len(a) for a in self._adjacency), default=0)

    @cached_property
    def open_masks(self) -> tuple[int, ...]:
        """Bitset of N(v) for every vertex."""
        masks = []
        for nbrs in self._adjacency:
            bits = np.zeros(self._n, dtype=np.bool_)
            bits[list(nbrs)] = True
            packed = np.packbits(bits, bitorder="little").tobytes()
            masks.append(int.from_bytes(packed, "little"))
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Bitset of N(v,1) = N(v) plus v, for every vertex."""
        return tuple(m | (1 << v) for v, m in enumerate(self.open_masks))

    def ball_masks(self, radius: int) -> tuple[int, ...]:
        """Bitset of N(v, radius) for every vertex, cached per radius."""
        if radius < 0:
            raise ParameterError("radius", radius, "must be >= 0")
        cached = self._ball_masks.get(radius)
        if cached is not None:
            return cached
        if radius == 0:
            result = tuple(1 << v for v in range(self._n))
        elif radius == 1:
            result = self.closed_masks
        else:
            inner = self.ball_masks(radius - 1)
            closed = self.closed_masks
            grown = []
            for v in range(self._n):
                acc = inner[v]
                rest = inner[v]
                while rest:
                    low = rest & -rest
                    acc |= closed[low.bit_length() - 1]
                    rest ^= low
                grown.append(acc)
            result = tuple(grown)
        self._ball_masks[radius] = result
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adjacency == other._adjacency

    def __hash__(self) -> int:
        return hash((self._n, self._adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self._edge_count})"


@dataclass(frozen=True, slots=True)
class GnpParams:
    """Parameters of a seeded G(n,p) sample.

    Attributes:
        n: Vertex count (>= 1).
        p: Edge probability in [0, 1].
        seed: 64-bit unsigned seed.
    """

    n: int
    p: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError("n", self.n, "must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError("p", self.p, "must lie in [0, 1]")
        if not 0 <= self.seed < 1 << 64:
            raise ParameterError("seed", self.seed, "must be a 64-bit unsigned integer")

    @property
    def expected_degree(self) -> float:
        """d = p(n-1)."""
        return self.p * (self.n - 1)

    @property
    def pair_count(self) -> int:
        """C(n, 2)."""
        return self.n * (self.n - 1) // 2


def pair_index(n: int, u: int, v: int) -> int:
    """Lexicographic index of the pair ``{u, v}`` among all C(n,2) pairs."""
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _row_hits(params: GnpParams, u: int) -> np.ndarray:
    """Neighbours ``w > u`` of ``u`` in the sample, as an int64 array."""
    count = params.n - u - 1
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    start = pair_index(params.n, u, u + 1)
    ks = np.arange(start, start + count, dtype=np.uint64)
    return np.flatnonzero(coins(params.seed, ks, params.p)) + (u + 1)


def sample_gnp(params: GnpParams) -> Graph:
    """Draw G(n,p) with one SplitMix64 coin per pair, in lexicographic order.

    Identical params give identical graphs on every platform.

    Example:
        >>> sample_gnp(GnpParams(n=5, p=1.0, seed=7)).edge_count
        10
    """
    n = params.n
    rows = [_row_hits(params, u) for u in range(n - 1)]
    heads = np.concatenate(
        [np.full(len(row), u, dtype=np.int64) for u, row in enumerate(rows)]
        or [np.zeros(0, dtype=np.int64)]
    )
    tails = np.concatenate(rows or [np.zeros(0, dtype=np.int64)])
    src = np.concatenate([heads, tails])
    dst = np.concatenate([tails, heads])
    order = np.lexsort((dst, src))
    ordered = dst[order]
    bounds = np.cumsum(np.bincount(src, minlength=n))
    adjacency = tuple(
        tuple(chunk.tolist()) for chunk in np.split(ordered, bounds[:-1])
    )
    return Graph(n, adjacency)


class LazyGnp:
    """On-demand view of the G(n,p) sample that ``sample_gnp`` would draw.

    Neighbourhoods are evaluated directly from the counter-based coin
    stream, so only the vertices actually visited cost anything. This is
    what makes expansion audits at n = 10^5 feasible.

    Example:
        >>> params = GnpParams(n=50, p=0.2, seed=3)
        >>> LazyGnp(params).neighbors(7) == sample_gnp(params).neighbors(7)
        True
    """

    def __init__(self, params: GnpParams, cache_size: int = 4096) -> None:
        self._params = params
        self._cache: dict[int, tuple[int, ...]] = {}
        self._cache_size = cache_size

    @property
    def params(self) -> GnpParams:
        """The sampling parameters."""
        return self._params

    @property
    def n(self) -> int:
        """Vertex count."""
        return self._params.n

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Sorted neighbours of ``v`` in the sample."""
        n = self._params.n
        if not 0 <= v < n:
            raise InvalidVertexError(v, n)
        cached = self._cache.get(v)
        if cached is not None:
            return cached
        lower: tuple[int, ...] = ()
        if v > 0:
            us = np.arange(v, dtype=np.uint64)
            # lexicographic index of each pair (u, v) with u below v
            ks = us * (np.uint64(2 * n - 1) - us) // np.uint64(2) + (np.uint64(v - 1) - us)
            lower = tuple(np.flatnonzero(coins(self._params.seed, ks, self._params.p)).tolist())
        result = lower + tuple(_row_hits(self._params, v).tolist())
        if len(self._cache) >= self._cache_size:
            self._cache.clear()
        self._cache[v] = result
        return result

    def degree(self, v: int) -> int:
        """Degree of ``v``."""
        return len(self.neighbors(v))

    def edge_count(self) -> int:
        """Total number of edges, counted row by row without materializing."""
        return sum(len(_row_hits(self._params, u)) for u in range(self._params.n - 1))

    def materialize(self) -> Graph:
        """The equivalent :class:`Graph`."""
        return sample_gnp(self._params)


def vertex_set(vertices: Iterable[int], n: int) -> VertexSet:
    """Normalize an iterable of vertex ids into a VertexSet.

    Raises:
        InvalidVertexError: If any id is outside ``0..n-1``.
    """
    result = tuple(sorted(set(vertices)))
    for v in result:
        if not 0 <= v < n:
            raise InvalidVertexError(v, n)
    return result


def mask_of(vertices: Iterable[int]) -> int:
    """Bitset with the given vertex bits set."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> VertexSet:
    """Vertex ids of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def distances(
    g: NeighborhoodView, sources: Iterable[int], limit: int | None = None
) -> dict[int, int]:
    """Multi-source BFS distances.

    Args:
        g: Graph or lazy view.
        sources: Start vertices (distance 0).
        limit: Stop expanding beyond this distance when given.

    Returns:
        Mapping from every reached vertex to its distance from the nearest
        source. Vertices absent from the mapping are unreachable (or beyond
        ``limit``).
    """
    dist: dict[int, int] = {}
    queue: deque[int] = deque()
    for s in sources:
        if not 0 <= s < g.n:
            raise InvalidVertexError(s, g.n)
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if limit is not None and du >= limit:
            continue
        for w in g.neighbors(u):
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def distance(g: NeighborhoodView, u: int, v: int) -> int | None:
    """Length of a shortest u-v path, or None if v is unreachable."""
    return distances(g, [u]).get(v)


def ball(g: NeighborhoodView, sources: Iterable[int], radius: int) -> VertexSet:
    """N[S, i]: vertices within distance ``radius`` of some source.

    Example:
        >>> ball(path_graph(3), [1], 1)
        (0, 1, 2)
    """
    if radius < 0:
        raise ParameterError("radius", radius, "must be >= 0")
    start = list(sources)
    if not start:
        raise ParameterError("S", start, "must be non-empty")
    return tuple(sorted(distances(g, start, limit=radius)))


def sphere(g: NeighborhoodView, v: int, radius: int) -> VertexSet:
    """S(v, i): vertices at distance exactly ``radius`` from ``v``."""
    if radius < 0:
        raise ParameterError("radius", radius, "must be >= 0")
    dist = distances(g, [v], limit=radius)
    return tuple(sorted(u for u, d in dist.items() if d == radius))


def non_neighborhood(g: NeighborhoodView, v: int) -> VertexSet:
    """N^c(v) = V minus N(v, 1)."""
    closed = set(ball(g, [v], 1))
    return tuple(u for u in range(g.n) if u not in closed)


def shortest_step(g: NeighborhoodView, source: int, target: int) -> int:
    """Next vertex on a shortest source-target path.

    Ties go to the lowest-id neighbour. Returns ``source`` itself when the
    target is unreachable or already reached.
    """
    if source == target:
        return source
    dist = distances(g, [target])
    here = dist.get(source)
    if here is None:
        return source
    for w in g.neighbors(source):
        if dist.get(w) == here - 1:
            return w
    return source


def ell_n(n: float, p: float) -> float:
    """𝕃n = log base 1/(1-p) of n = ln n / -ln(1-p).

    Example:
        >>> round(ell_n(1024, 0.5), 9)
        10.0
    """
    if not 0.0 < p < 1.0:
        raise ParameterError("p", p, "must lie strictly between 0 and 1")
    if n < 2:
        raise ParameterError("n", n, "must be >= 2")
    return math.log(n) / -math.log1p(-p)


def estimate_eta(n: float, p: float) -> float:
    """η̂ = -ln p / ln n clamped to [0, 1] (reads p = n^-η at finite n)."""
    if not 0.0 < p < 1.0:
        raise ParameterError("p", p, "must lie strictly between 0 and 1")
    if n < 2:
        raise ParameterError("n", n, "must be >= 2")
    return min(1.0, max(0.0, -math.log(p) / math.log(n)))


def average_degree(g: Graph) -> float:
    """2 * edge_count / n."""
    return 2.0 * g.edge_count / g.n if g.n else 0.0


def save_graph(g: Graph) -> str:
    """Serialize to the edge-list text format ("n m" then "u v" lines)."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _parse_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2 or not all(p.isascii() and p.isdigit() for p in parts):
        raise GraphFormatError(f"expected two non-negative integers, got {line!r}", lineno)
    return int(parts[0]), int(parts[1])


def load_graph(text: str) -> Graph:
    """Parse the edge-list text format.

    Raises:
        GraphFormatError: On malformed lines, wrong edge counts, ids >= n,
            u >= v ordering violations, self-loops or duplicate edges.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("empty input", 1)
    n, m = _parse_ints(lines[0], 1)
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(
            f"header announces {m} edges but {len(body)} edge lines follow",
            min(len(lines), 1 + max(m, 0)) if len(body) < m else m + 2,
        )
    seen: set[tuple[int, int]] = set()
    edges = []
    for offset, line in enumerate(body, start=2):
        u, v = _parse_ints(line, offset)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", offset)
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex id {max(u, v)} >= n={n}", offset)
        if u > v:
            raise GraphFormatError(f"edge {u} {v} must be written with u < v", offset)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", offset)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


# Canonical small graphs used by tests, docs and the CLI.


def empty_graph(n: int) -> Graph:
    """n isolated vertices."""
    return Graph(n, tuple(() for _ in range(n)))


def path_graph(n: int) -> Graph:
    """Path 0-1-...-(n-1)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    """Cycle with edges {i, i+1 mod n}."""
    if n < 3:
        raise ParameterError("n", n, "must be >= 3 for a cycle")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    """K_n."""
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with parts 0..a-1 and a..a+b-1."""
    return Graph.from_edges(a + b, [(u, a + w) for u in range(a) for w in range(b)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and the given number of leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    """The Petersen graph: outer 5-cycle 0..4, inner pentagram 5..9."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
