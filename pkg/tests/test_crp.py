import math

import pytest

from exchrand.crp import (
    FINITE_BLOCKS,
    INFINITE_BLOCKS,
    Partition,
    SeatingState,
    crp_next_probs,
    crp_sample,
    crp_validate,
    enumerate_partitions,
    ewens_log_pmf,
    ewens_pitman_log_pmf,
    theta_zero_log_pmf,
)
from exchrand.errors import InvalidParameterError
from exchrand.rngdist import RandomSource
from exchrand.verify import oracle_crp_partition_pmf


class TestValidate:
    def test_infinite_blocks(self):
        params = crp_validate(0.5, 0.5)
        assert params.case_tag == INFINITE_BLOCKS and params.k is None

    def test_finite_blocks(self):
        params = crp_validate(-1.0, 2.0)
        assert params.case_tag == FINITE_BLOCKS and params.k == 2

    def test_theta_zero_allowed_with_positive_alpha(self):
        assert crp_validate(0.5, 0.0).case_tag == INFINITE_BLOCKS

    def test_alpha_one_allowed(self):
        assert crp_validate(1.0, 0.5).case_tag == INFINITE_BLOCKS

    @pytest.mark.parametrize(
        "alpha, theta",
        [(-1.0, 2.5), (1.5, 1.0), (0.5, -0.5), (0.0, 0.0), (-1.0, -1.0)],
    )
    def test_rejections(self, alpha, theta):
        with pytest.raises(InvalidParameterError):
            crp_validate(alpha, theta)

    def test_near_integer_ratio_tolerated(self):
        params = crp_validate(-1.0, 3.0 * (1 + 1e-12))
        assert params.k == 3


class TestNextProbs:
    def test_first_customer_always_new_table(self):
        table_probs, new = crp_next_probs(crp_validate(0.5, 0.5), SeatingState(()))
        assert table_probs == [] and new == 1.0
        # also at theta = 0, where theta/theta would be 0/0
        _, new = crp_next_probs(crp_validate(0.5, 0.0), SeatingState(()))
        assert new == 1.0

    def test_one_occupied_table(self):
        table_probs, new = crp_next_probs(crp_validate(0.5, 0.5), SeatingState((1,)))
        assert table_probs == pytest.approx([1 / 3])
        assert new == pytest.approx(2 / 3)

    def test_block_cap_reached(self):
        table_probs, new = crp_next_probs(crp_validate(-1.0, 2.0), SeatingState((1, 1)))
        assert new == 0.0
        assert sum(table_probs) == pytest.approx(1.0)

    def test_probs_sum_to_one(self):
        params = crp_validate(0.25, 1.7)
        table_probs, new = crp_next_probs(params, SeatingState((4, 2, 1)))
        assert sum(table_probs) + new == pytest.approx(1.0, abs=1e-12)


class TestPartition:
    def test_canonical_form(self):
        pi = Partition.from_blocks([[2], [3, 1]])
        assert pi.blocks == ((1, 3), (2,))
        assert pi.block_sizes() == (2, 1)

    def test_invalid_blocks(self):
        with pytest.raises(InvalidParameterError):
            Partition.from_blocks([[1, 2], [2, 3]])
        with pytest.raises(InvalidParameterError):
            Partition.from_blocks([[1], [4]])
        with pytest.raises(InvalidParameterError):
            Partition.from_blocks([[1], []])

    def test_seating_history(self):
        pi = Partition.from_blocks([[1, 3], [2]])
        assert pi.seating_history() == (0, 1, 0)

    def test_relabel_recanonicalizes(self):
        pi = Partition.from_blocks([[1, 3], [2]])
        swapped = pi.relabel((2, 1, 3))  # 1<->2
        assert swapped.blocks == ((1,), (2, 3))


class TestEnumerate:
    @pytest.mark.parametrize("n, bell", [(1, 1), (2, 2), (3, 5), (4, 15), (8, 4140)])
    def test_bell_numbers(self, n, bell):
        parts = enumerate_partitions(n)
        assert len(parts) == bell
        assert len({p.blocks for p in parts}) == bell

    def test_out_of_range(self):
        with pytest.raises(InvalidParameterError):
            enumerate_partitions(0)
        with pytest.raises(InvalidParameterError):
            enumerate_partitions(11)


class TestEwensPitman:
    def test_pair_partition(self):
        params = crp_validate(0.5, 0.5)
        assert ewens_pitman_log_pmf(
            params, Partition.from_blocks([[1, 2]])).to_real() == pytest.approx(1 / 3)
        assert ewens_pitman_log_pmf(
            params, Partition.from_blocks([[1], [2]])).to_real() == pytest.approx(2 / 3)

    def test_finite_blocks_values(self):
        params = crp_validate(-1.0, 2.0)
        assert ewens_pitman_log_pmf(
            params, Partition.from_blocks([[1, 2, 3]])).to_real() == pytest.approx(1 / 2)
        beyond = Partition.from_blocks([[1], [2], [3]])
        assert ewens_pitman_log_pmf(params, beyond).sign == 0

    def test_matches_oracle_on_all_partitions(self):
        for params in (crp_validate(0.5, 0.5), crp_validate(0.3, -0.1),
                       crp_validate(-0.7, 2.1), crp_validate(0.0, 1.3)):
            for pi in enumerate_partitions(6):
                assert ewens_pitman_log_pmf(params, pi).to_real() == pytest.approx(
                    oracle_crp_partition_pmf(params, pi), abs=1e-13)

    def test_normalization(self):
        params = crp_validate(0.25, 0.75)
        total = sum(
            ewens_pitman_log_pmf(params, pi).to_real()
            for pi in enumerate_partitions(7))
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_depends_only_on_block_sizes(self):
        params = crp_validate(0.5, 1.5)
        a = Partition.from_blocks([[1, 4], [2, 3], [5]])
        b = Partition.from_blocks([[1, 2], [3, 5], [4]])
        assert ewens_pitman_log_pmf(params, a).logmag == pytest.approx(
            ewens_pitman_log_pmf(params, b).logmag, abs=1e-12)


class TestEwensAndThetaZero:
    def test_ewens_single_block(self):
        assert ewens_log_pmf(1.0, Partition.from_blocks([[1, 2, 3]])).to_real() == \
            pytest.approx(1 / 3)

    def test_ewens_normalization(self):
        total = sum(ewens_log_pmf(1.0, pi).to_real() for pi in enumerate_partitions(3))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_single_customer(self):
        one = Partition.from_blocks([[1]])
        assert ewens_log_pmf(3.7, one).to_real() == pytest.approx(1.0)
        assert theta_zero_log_pmf(0.8, one).to_real() == pytest.approx(1.0)

    def test_theta_zero_pair(self):
        assert theta_zero_log_pmf(0.5, Partition.from_blocks([[1, 2]])).to_real() == \
            pytest.approx(0.5)

    def test_theta_zero_normalization_n2(self):
        total = sum(theta_zero_log_pmf(0.5, pi).to_real()
                    for pi in enumerate_partitions(2))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_alpha_limit_agrees_with_ewens(self):
        near = crp_validate(1e-8, 1.0)
        for pi in enumerate_partitions(5):
            ew = ewens_log_pmf(1.0, pi).to_real()
            assert ewens_pitman_log_pmf(near, pi).to_real() == pytest.approx(ew, rel=1e-6)

    def test_theta_limit_agrees_with_theta_zero(self):
        near = crp_validate(0.5, 1e-8)
        for pi in enumerate_partitions(5):
            tz = theta_zero_log_pmf(0.5, pi).to_real()
            assert ewens_pitman_log_pmf(near, pi).to_real() == pytest.approx(tz, rel=1e-6)


class TestSampler:
    def test_degenerate_sizes(self):
        params = crp_validate(0.5, 0.5)
        assert crp_sample(params, 0, RandomSource(0)).n == 0
        assert crp_sample(params, 1, RandomSource(0)).blocks == ((1,),)

    def test_pair_frequency(self):
        params = crp_validate(0.5, 0.5)
        rng = RandomSource(77)
        n = 10**5
        together = sum(
            crp_sample(params, 2, rng.child(i)).num_blocks == 1 for i in range(n))
        assert abs(together / n - 1 / 3) < 3 * math.sqrt((1 / 3) * (2 / 3) / n)

    def test_alpha_one_gives_singletons(self):
        params = crp_validate(1.0, 0.5)
        pi = crp_sample(params, 50, RandomSource(4))
        assert pi.block_sizes() == (1,) * 50

    def test_finite_blocks_cap(self):
        params = crp_validate(-0.5, 1.5)  # k = 3
        for i in range(200):
            assert crp_sample(params, 30, RandomSource(i)).num_blocks <= 3

    def test_determinism(self):
        params = crp_validate(0.2, 1.0)
        assert crp_sample(params, 200, RandomSource(8)) == \
            crp_sample(params, 200, RandomSource(8))
