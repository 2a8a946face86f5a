import math

import numpy as np
import pytest

from exchrand.crp import Partition, crp_validate
from exchrand.errors import InvalidParameterError, UnknownSuiteError
from exchrand.polya import LabelSequence, UrnParams
from exchrand.verify import (
    SUITE_NAMES,
    TestReport,
    beta_cdf,
    check_exchangeability_exact,
    chi_square_critical,
    chi_square_stat,
    ks_critical,
    ks_stat,
    ks_two_sample_critical,
    ks_two_sample_stat,
    oracle_crp_partition_pmf,
    oracle_polya_seq_pmf,
    run_suite,
)
from exchrand.verify import _corrupted_seq_log_pmf


class TestOracles:
    def test_polya_sequence_values(self):
        params = UrnParams((1.0, 1.0))
        assert oracle_polya_seq_pmf(params, LabelSequence((1, 1), 2)) == \
            pytest.approx(1 / 3)
        assert oracle_polya_seq_pmf(params, LabelSequence((2, 1), 2)) == \
            pytest.approx(1 / 6)
        assert oracle_polya_seq_pmf(params, LabelSequence((), 2)) == 1.0

    def test_polya_length_guard(self):
        with pytest.raises(InvalidParameterError):
            oracle_polya_seq_pmf(UrnParams((1.0,)), LabelSequence((1,) * 13, 1))

    def test_crp_partition_values(self):
        half = crp_validate(0.5, 0.5)
        assert oracle_crp_partition_pmf(half, Partition.from_blocks([[1, 2]])) == \
            pytest.approx(1 / 3)
        finite = crp_validate(-1.0, 2.0)
        assert oracle_crp_partition_pmf(finite, Partition.from_blocks([[1, 2, 3]])) == \
            pytest.approx(1 / 2)
        assert oracle_crp_partition_pmf(finite, Partition.from_blocks([[1]])) == 1.0

    def test_crp_length_guard(self):
        pi = Partition.from_blocks([list(range(1, 12))])
        with pytest.raises(InvalidParameterError):
            oracle_crp_partition_pmf(crp_validate(0.5, 0.5), pi)


class TestChiSquare:
    def test_perfect_fit_is_zero(self):
        assert chi_square_stat([50, 50], [0.5, 0.5], 100) == 0.0

    def test_known_value(self):
        # (60-50)^2/50 + (40-50)^2/50 = 4
        assert chi_square_stat([60, 40], [0.5, 0.5], 100) == pytest.approx(4.0)

    def test_small_bins_merged(self):
        # last two expected counts are 2 each; merged they reach 4... still < 5
        with pytest.raises(InvalidParameterError):
            chi_square_stat([96, 2, 2], [0.96, 0.02, 0.02], 100)
        # at n=1000 the merged tail is 40, fine
        stat = chi_square_stat([960, 20, 20], [0.96, 0.02, 0.02], 1000)
        assert stat == pytest.approx(0.0)

    def test_zero_probability_rejected(self):
        with pytest.raises(InvalidParameterError):
            chi_square_stat([50, 50], [1.0, 0.0], 100)

    def test_critical_value(self):
        # P(chi2_1 > 10.83) ~ 1e-3
        assert chi_square_critical(1) == pytest.approx(10.83, abs=0.01)


class TestKs:
    def test_single_point(self):
        assert ks_stat([0.5], lambda x: np.asarray(x)) == pytest.approx(0.5)

    def test_uniform_quantiles_small(self):
        grid = (np.arange(1, 100) - 0.5) / 99
        assert ks_stat(grid, lambda x: np.asarray(x)) < 0.02

    def test_degenerate_mismatch(self):
        assert ks_stat([0.0] * 10, lambda x: np.asarray(x)) == pytest.approx(1.0)

    def test_empty_rejected(self):
        with pytest.raises(InvalidParameterError):
            ks_stat([], lambda x: np.asarray(x))
        with pytest.raises(InvalidParameterError):
            ks_two_sample_stat([], [1.0])

    def test_two_sample_identical(self):
        a = [0.1, 0.4, 0.9]
        assert ks_two_sample_stat(a, a) == 0.0

    def test_two_sample_disjoint(self):
        assert ks_two_sample_stat([0.0, 0.1], [0.8, 0.9]) == pytest.approx(1.0)

    def test_critical_values(self):
        c = math.sqrt(math.log(2000.0) / 2.0)
        assert ks_critical(400) == pytest.approx(c / 20.0)
        assert ks_two_sample_critical(100, 100) == pytest.approx(c * math.sqrt(0.02))

    def test_beta_cdf_endpoints(self):
        cdf = beta_cdf(2.0, 3.0)
        assert float(cdf(0.0)) == 0.0
        assert float(cdf(1.0)) == 1.0
        assert float(cdf(0.5)) == pytest.approx(0.6875)  # 11/16


class TestExchangeabilityCheck:
    def test_urn_law_passes(self):
        report = check_exchangeability_exact(UrnParams((0.7, 2.2)), 5)
        assert report.passed and report.statistic <= 1e-12

    def test_corrupted_law_fails(self):
        report = check_exchangeability_exact(
            UrnParams((1.0, 2.0)), 4, log_pmf=_corrupted_seq_log_pmf)
        assert not report.passed

    def test_length_guard(self):
        with pytest.raises(InvalidParameterError):
            check_exchangeability_exact(UrnParams((1.0, 1.0)), 7)


class TestRunSuite:
    def test_unknown_name(self):
        with pytest.raises(UnknownSuiteError):
            run_suite("nope", 0)

    def test_suite_names_stable(self):
        assert SUITE_NAMES == (
            "polya-exact", "crp-exact", "limits", "dirichlet", "gem", "correlation")

    def test_limits_suite_structure(self):
        reports = run_suite("limits", 42)
        assert all(isinstance(r, TestReport) for r in reports)
        assert all(r.seed == 42 for r in reports)
        assert any("negative control" in r.details for r in reports)
        assert all(r.passed for r in reports)

    def test_report_to_dict_round_trip(self):
        report = run_suite("limits", 7)[0]
        d = report.to_dict()
        assert d["name"] == report.name and d["passed"] is report.passed
