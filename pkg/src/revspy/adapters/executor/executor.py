"""Executor adapters implementing ExecutorPort.

Sweeps and sampled checks submit independent jobs and read the futures
back in submission order, so results never depend on which adapter (or
how many workers) ran them.
"""

from __future__ import annotations

import os
from concurrent.futures import Future, ThreadPoolExecutor
from typing import TYPE_CHECKING

from revspy.core.exceptions import ParameterError


if TYPE_CHECKING:
    from collections.abc import Callable


def resolve_workers(threads: int) -> int:
    """Worker count for a REVSPY_THREADS-style setting (0 = one per CPU).

    Example:
        >>> resolve_workers(3)
        3
    """
    if threads < 0:
        raise ParameterError("threads", threads, "must be >= 0 (0 = auto)")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


class SynchronousExecutor:
    """Runs each job immediately in the calling thread.

    Used for ``threads = 1`` and in tests. A job's exception is stored on
    its future and re-raised by ``result()``, exactly like a pool would.
    """

    def submit(
        self,
        fn: Callable[..., object],
        *args: object,
        **kwargs: object,
    ) -> Future[object]:
        """Run the job now and return its completed future."""
        future: Future[object] = Future()
        try:
            future.set_result(fn(*args, **kwargs))
        except Exception as e:
            future.set_exception(e)
        return future

    def __enter__(self) -> SynchronousExecutor:
        """Enter context manager."""
        return self

    def __exit__(
        self, exc_type: object, exc_val: object, exc_tb: object
    ) -> object | None:
        """Nothing to shut down."""
        return None


class ThreadPoolExecutorAdapter:
    """ThreadPoolExecutor behind the ExecutorPort protocol.

    The heavy numeric paths (G(n,p) sampling, bitset intersections) spend
    their time in numpy and in big-int operations, so threads are enough
    for the sweep fan-out.
    """

    def __init__(self, max_workers: int | None = None) -> None:
        self._executor = ThreadPoolExecutor(
            max_workers=max_workers, thread_name_prefix="revspy"
        )

    def submit(
        self,
        fn: Callable[..., object],
        *args: object,
        **kwargs: object,
    ) -> Future[object]:
        """Queue a job on the pool."""
        return self._executor.submit(fn, *args, **kwargs)

    def __enter__(self) -> ThreadPoolExecutorAdapter:
        """Enter context manager."""
        self._executor.__enter__()
        return self

    def __exit__(
        self, exc_type: object, exc_val: object, exc_tb: object
    ) -> object | None:
        """Wait for queued jobs and shut the pool down."""
        return self._executor.__exit__(exc_type, exc_val, exc_tb)  # type: ignore[arg-type]


def make_executor(threads: int) -> SynchronousExecutor | ThreadPoolExecutorAdapter:
    """Synchronous executor for one worker, a thread pool otherwise."""
    workers = resolve_workers(threads)
    if workers == 1:
        return SynchronousExecutor()
    return ThreadPoolExecutorAdapter(max_workers=workers)
