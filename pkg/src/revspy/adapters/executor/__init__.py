"""Executor adapters for sweeps and sampled checks."""

from revspy.adapters.executor.executor import (
    SynchronousExecutor,
    ThreadPoolExecutorAdapter,
    make_executor,
    resolve_workers,
)


__all__ = [
    "SynchronousExecutor",
    "ThreadPoolExecutorAdapter",
    "make_executor",
    "resolve_workers",
]
