"""Acceptance gate: one test per release criterion, each printing a PASS line.

Every suite runs once at the master seed; individual tests then assert on the
cached reports so the whole gate stays within the per-suite runtime budgets.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines.
"""

import time

import pytest

from exchrand.verify import SUITE_NAMES, run_suite

MASTER_SEED = 42


@pytest.fixture(scope="module")
def suite_runs():
    runs = {}
    for name in SUITE_NAMES:
        start = time.perf_counter()
        reports = run_suite(name, MASTER_SEED)
        runs[name] = (reports, time.perf_counter() - start)
    return runs


def _get(runs, suite, check):
    reports, _ = runs[suite]
    for r in reports:
        if r.name == check:
            return r
    raise AssertionError(f"check {check!r} missing from suite {suite!r}")


def _require(runs, suite, checks, elapsed_budget=None):
    for check in checks:
        r = _get(runs, suite, check)
        assert r.passed, f"{r.name}: statistic {r.statistic} vs threshold {r.threshold}"
    if elapsed_budget is not None:
        _, elapsed = runs[suite]
        assert elapsed < elapsed_budget, f"{suite} took {elapsed:.1f}s"


def test_criterion_1_polya_exact_laws(suite_runs):
    _require(suite_runs, "polya-exact", [
        "polya/oracle-equivalence",
        "polya/normalization",
        "polya/exchangeability",
        "polya/count-law-consistency",
        "polya/count-law-normalization",
    ], elapsed_budget=10.0)
    print("PASS criterion 1: urn closed form matches the sequential oracle, "
          "normalizes, and is exchangeable (runtime < 10 s)")


def test_criterion_2_crp_exact_laws(suite_runs):
    _require(suite_runs, "crp-exact", [
        "crp/oracle-equivalence",
        "crp/normalization",
        "crp/finite-blocks-zero-beyond-cap",
        "crp/exchangeability",
    ], elapsed_budget=60.0)
    print("PASS criterion 2: partition law matches the seating-history oracle on "
          "all partitions of [8], normalizes, zero beyond the block cap (runtime < 60 s)")


def test_criterion_3_limit_formulas(suite_runs):
    _require(suite_runs, "limits", ["limits/alpha-to-zero", "limits/theta-to-zero"])
    print("PASS criterion 3: small-parameter limits agree with the dedicated "
          "alpha=0 and theta=0 formulas within 1e-6 relative")


def test_criterion_4_finite_blocks_urn_equivalence(suite_runs):
    _require(suite_runs, "crp-exact", ["crp/case1-urn-equivalence"])
    print("PASS criterion 4: two-block partition law equals the law induced by "
          "the symmetric two-color urn, n <= 6, within 1e-10")


def test_criterion_5_dirichlet_limit_of_proportions(suite_runs):
    _require(suite_runs, "dirichlet", ["dirichlet/urn-proportion-limit"],
             elapsed_budget=120.0)
    print("PASS criterion 5: urn proportion n_1/n at n=2000 passes KS against "
          "its Beta marginal (runtime < 2 min)")


def test_criterion_6_dirichlet_constructions_agree(suite_runs):
    _require(suite_runs, "dirichlet", ["dirichlet/gamma-vs-stick"])
    print("PASS criterion 6: gamma and stick-breaking Dirichlet constructions "
          "agree coordinate-wise by two-sample KS")


def test_criterion_7_aggregation_and_neutrality(suite_runs):
    _require(suite_runs, "dirichlet", [
        "dirichlet/aggregation",
        "dirichlet/neutrality-independence",
        "dirichlet/neutrality-marginal",
    ])
    print("PASS criterion 7: aggregation marginal and neutrality "
          "(independence proxy and renormalized marginal) accepted")


def test_criterion_8_gem_weights(suite_runs):
    _require(suite_runs, "gem", [
        "gem/stick-means",
        "gem/residual-mean",
        "gem/first-block-weight",
        "gem/ranked-leader",
    ])
    print("PASS criterion 8: stick-breaking means match 2^-k and the empirical "
          "first-block weight matches its Beta marginal")


def test_criterion_9_correlation_functions(suite_runs):
    _require(suite_runs, "correlation", [
        "correlation/quadrature-identities",
        "correlation/mc-vs-quadrature",
        "correlation/block-count-vs-enumeration",
        "correlation/rho-symmetry",
    ], elapsed_budget=300.0)
    print("PASS criterion 9: correlation quadrature identities, Monte Carlo "
          "distinct-index sums, and finite-n block counts all agree (runtime < 5 min)")


def test_criterion_10_determinism_and_negative_controls(suite_runs):
    rerun = run_suite("limits", MASTER_SEED)
    cached, _ = suite_runs["limits"]
    assert [r.to_dict() for r in rerun] == [r.to_dict() for r in cached]
    for name in SUITE_NAMES:
        reports, _ = suite_runs[name]
        controls = [r for r in reports if "negative control" in r.details]
        assert controls, f"suite {name} has no negative control"
        assert all(r.passed for r in controls), \
            f"suite {name}: a negative control was not rejected"
    print("PASS criterion 10: suite re-run is bit-for-bit identical and every "
          "suite rejects its negative control")


def test_all_suite_checks_pass(suite_runs):
    failures = [
        r.name
        for name in SUITE_NAMES
        for r in suite_runs[name][0]
        if not r.passed
    ]
    assert failures == []
    print("PASS: every check in every suite passes at the master seed")
