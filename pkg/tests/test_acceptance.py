"""Acceptance suite: every criterion at its pinned tolerance and budget.

Each criterion prints one pass/fail line (run pytest with -s to see them
live; they are also shown in captured output on failure).
"""

import pytest

from causalbeams.verify import CRITERIA, RUNTIME_BUDGETS_S, run_all

_RESULTS = {}


def _get(crit_id):
    if crit_id not in _RESULTS:
        res = run_all(seed=0, profile="default", only=[crit_id])
        _RESULTS[crit_id] = res[0]
    return _RESULTS[crit_id]


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] {result.criterion} {result.title} "
          f"({result.runtime_s:.2f} s, budget "
          f"{RUNTIME_BUDGETS_S[result.criterion]:.0f} s)")
    for c in result.checks:
        mark = "ok  " if c.passed else "FAIL"
        print(f"    {mark} {c.name}: {c.got} (tol {c.tolerance:g})")


@pytest.mark.parametrize("crit_id,title",
                         [(cid, title) for cid, title, _ in CRITERIA])
def test_criterion(crit_id, title):
    result = _get(crit_id)
    _report(result)
    for c in result.checks:
        assert c.passed, f"{crit_id} failed: {c.name}: {c.got}"
    assert result.runtime_s < RUNTIME_BUDGETS_S[crit_id], \
        f"{crit_id} exceeded its runtime budget"


def test_summary_line():
    results = [_get(cid) for cid, _, _ in CRITERIA]
    n_pass = sum(r.passed for r in results)
    print(f"\nacceptance summary: {n_pass}/{len(results)} criteria passed, "
          f"total {sum(r.runtime_s for r in results):.1f} s")
    assert n_pass == len(results)
