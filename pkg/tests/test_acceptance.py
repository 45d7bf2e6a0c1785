"""End-to-end acceptance checks, one test per criterion.

Run with `pytest -s tests/test_acceptance.py` to see one pass/fail line per
criterion, or `alcove selftest` for the same checks from the command line.
"""

import time

import pytest

from alcove.acceptance import CRITERIA

SEED = 7


@pytest.mark.parametrize("name,func", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, func):
    t0 = time.monotonic()
    try:
        detail = func(SEED)
    except AssertionError as exc:
        print(f"FAIL {name}: {exc}")
        raise
    print(f"PASS {name} ({time.monotonic() - t0:.2f}s): {detail}")
