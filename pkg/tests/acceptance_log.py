"""Per-criterion PASS/FAIL lines collected by the acceptance suite."""

import time
from contextlib import contextmanager

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(k: int, title: str, limit: float | None = None):
    """Time the body, record one line for criterion ``k`` and enforce ``limit`` seconds."""
    info: dict = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException as e:
        line = f"criterion {k:2d} FAIL  {title}: {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
        RESULTS[k] = line
        print(line)
        raise
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{a}={b}" for a, b in info.items())
    ok = limit is None or elapsed < limit
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}; {elapsed:.2f}s{budget}"
    RESULTS[k] = line
    print(line)
    assert ok, line
