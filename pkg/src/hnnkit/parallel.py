"""Process-pool helper with deterministic, order-preserving aggregation.

Workers read their shared context from a module global that the parent sets
immediately before creating the pool; on Linux the fork start method makes
it visible without pickling.  Results come back in task order, so any merge
performed by the caller is independent of scheduling and of the job count.
"""

from __future__ import annotations

import multiprocessing as mp

_CONTEXT = None


def _set_context(ctx):
    global _CONTEXT
    _CONTEXT = ctx


def get_context():
    return _CONTEXT


def run_tasks(worker, tasks, context, jobs: int):
    """worker(task) for every task, with ``context`` visible via get_context()."""
    _set_context(context)
    try:
        if jobs <= 1 or len(tasks) <= 1:
            return [worker(t) for t in tasks]
        try:
            ctx = mp.get_context("fork")
        except ValueError:
            return [worker(t) for t in tasks]
        with ctx.Pool(min(jobs, len(tasks))) as pool:
            return pool.map(worker, tasks)
    finally:
        _set_context(None)
