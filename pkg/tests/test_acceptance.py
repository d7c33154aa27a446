"""The acceptance gate: one test per criterion, driven by the shared registry.

Each test prints its pass/fail line (visible with pytest -s or on failure)
and asserts the check's verdict.  The slow PSL2(81) variant of the coset
exponent check runs only under ``pytest -m slow``.
"""

import time

import pytest

from groupword.verify import CHECKS, run_checks

CHECK_INDEX = {name: (claim, fn) for name, claim, fn in CHECKS}

BUDGETS = {
    "moments-cauchy-frobenius": 60,
    "bounded-support-order": 60,
    "small-support-order-bound": 120,
    "moment-tail-bounds": 120,
    "regular-subdirect-variance": 60,
    "coset-exponents-4f": 120,
    "power-word-witness": 120,
    "singleton-coset-values": 300,
    "length-recursion": 300,
    "two-adic-exponent-bound": 120,
    "half-exponent-transfer": 300,
    "coordinate-recomposition": 300,
    "segment-calculus": 10,
    "fiber-exactness": 30,
    "parallel-determinism": 480,
}


def _run(name: str) -> dict:
    claim, fn = CHECK_INDEX[name]
    t0 = time.perf_counter()
    res = fn(threads=1, slow=False)
    elapsed = time.perf_counter() - t0
    status = "PASS" if res["ok"] else "FAIL"
    print(f"{status}  {name}  ({elapsed:.2f}s)  {claim}")
    assert elapsed <= BUDGETS[name], f"{name} exceeded its {BUDGETS[name]}s budget"
    return res


@pytest.mark.parametrize("name", sorted(BUDGETS))
def test_acceptance(name):
    res = _run(name)
    assert res["ok"], res["measured"]


def test_registry_runs_everything():
    rep = run_checks(filter_text="no-such-check")
    assert rep["run"] == 0 and rep["failed"] == 0
    rep = run_checks(filter_text="fiber-exactness")
    assert rep["run"] == 1 and rep["passed"] == 1


@pytest.mark.slow
def test_coset_exponent_psl2_81():
    claim, fn = CHECK_INDEX["coset-exponents-4f"]
    res = fn(threads=1, slow=True)
    assert res["ok"], res["measured"]
    row = res["measured"][-1]
    assert row["q"] == 81 and row["exponent"] == 16
