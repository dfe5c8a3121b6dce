"""Acceptance criteria C1 to C14, each run once at its stated tolerance.

Every criterion prints one line, ``C<n> PASS|FAIL <seconds>s <name>``, even
under pytest's output capture. Run directly with ``python3 tests/test_acceptance.py``
for the same lines without pytest.
"""
import sys

import pytest

from tlk.papercheck import CASES, DEFAULT_SEED, run_case

# wall-clock limits in seconds where a criterion states one
LIMITS = {1: 60, 2: 120, 7: 120, 10: 5, 13: 120}


def _line(c):
    return f"C{c.id} {'PASS' if c.passed else 'FAIL'} {c.seconds:.2f}s {c.name}"


@pytest.mark.slow
@pytest.mark.parametrize("cid", sorted(CASES), ids=lambda c: f"C{c}")
def test_criterion(cid, capsys):
    c = run_case(cid, DEFAULT_SEED)
    with capsys.disabled():
        print(f"\n{_line(c)}")
    assert c.passed, c.detail
    if cid in LIMITS:
        assert c.seconds < LIMITS[cid], f"took {c.seconds:.1f}s, limit {LIMITS[cid]}s"


if __name__ == "__main__":
    results = [run_case(cid, DEFAULT_SEED) for cid in sorted(CASES)]
    for c in results:
        over = c.id in LIMITS and c.seconds >= LIMITS[c.id]
        print(_line(c) + (" (over time limit)" if over else ""))
    sys.exit(0 if all(c.passed for c in results) else 1)
