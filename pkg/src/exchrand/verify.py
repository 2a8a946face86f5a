"""Oracles and statistical verification suites.

The oracles recompute every closed-form law by brute force along the
sequential definitions, on deliberately separate code paths.  The named
suites bundle the exact and statistical checks behind fixed seeds and fixed
critical values (significance 1e-3), so a suite run is deterministic and
flake-free.  Every suite ends with a negative control: a deliberately wrong
hypothesis whose rejection guards against vacuous passes.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from typing import Callable, Dict, List, Sequence

import numpy as np
from scipy import integrate
from scipy.special import betainc
from scipy.stats import chi2 as chi2_dist

from .crp import (
    FINITE_BLOCKS,
    CrpParams,
    Partition,
    SeatingState,
    crp_next_probs,
    crp_table_sizes,
    crp_validate,
    enumerate_partitions,
    ewens_log_pmf,
    ewens_pitman_log_pmf,
    theta_zero_log_pmf,
)
from .errors import InvalidParameterError, UnknownSuiteError
from .polya import (
    CountVector,
    LabelSequence,
    UrnParams,
    aggregate_simplex,
    dirichlet_log_density,
    normalize_subvector,
    polya_count_log_pmf,
    polya_next_probs,
    polya_sample,
    polya_sample_counts,
    polya_seq_log_pmf,
)
from .rngdist import (
    RandomSource,
    SimplexVector,
    sample_beta,
    sample_dirichlet_gamma,
    sample_dirichlet_stick,
)
from .weights import (
    block_count_prob,
    correlation_mc_estimate,
    empirical_block_weights,
    gem_sample,
    rank_weights,
    rho_k,
)

__all__ = [
    "TestReport",
    "oracle_polya_seq_pmf",
    "oracle_crp_partition_pmf",
    "check_exchangeability_exact",
    "chi_square_stat",
    "chi_square_critical",
    "ks_stat",
    "ks_two_sample_stat",
    "ks_critical",
    "ks_two_sample_critical",
    "beta_cdf",
    "run_suite",
    "SUITE_NAMES",
]

SIGNIFICANCE = 1e-3
# sup-norm critical constant sqrt(ln(2/significance)/2) for the KS statistic
_KS_CONST = math.sqrt(math.log(2.0 / SIGNIFICANCE) / 2.0)


@dataclass(frozen=True)
class TestReport:
    """Outcome of one verification check."""

    __test__ = False  # keep pytest from collecting this as a test class

    name: str
    statistic: float
    threshold: float
    passed: bool
    seed: int
    details: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def oracle_polya_seq_pmf(params: UrnParams, seq: LabelSequence) -> float:
    """Sequence probability as the direct product of urn conditionals."""
    if len(seq) > 12:
        raise InvalidParameterError("oracle is guarded to n <= 12")
    counts = [0] * params.k
    prob = 1.0
    for label in seq.labels:
        probs = polya_next_probs(params, CountVector(tuple(counts)))
        prob *= probs[label - 1]
        counts[label - 1] += 1
    return prob


def oracle_crp_partition_pmf(params: CrpParams, pi: Partition) -> float:
    """Partition probability as the product of seating probabilities along the
    unique history in which customers 1..n arrive in order."""
    if pi.n > 10:
        raise InvalidParameterError("oracle is guarded to n <= 10")
    sizes: List[int] = []
    prob = 1.0
    for table in pi.seating_history():
        table_probs, new_prob = crp_next_probs(params, SeatingState(tuple(sizes)))
        if table == len(sizes):
            prob *= new_prob
            sizes.append(1)
        else:
            prob *= table_probs[table]
            sizes[table] += 1
    return prob


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

def chi_square_stat(observed: Sequence[int], expected_probs: Sequence[float], n: int) -> float:
    """Pearson chi-square statistic, with small expected bins merged into a tail.

    Bins whose expected count falls below 5 are pooled into a single tail bin
    before the statistic is formed; if the pooled bin still falls below 5, or
    any probability is zero, the input is rejected.
    """
    observed = [int(o) for o in observed]
    probs = [float(p) for p in expected_probs]
    if len(observed) != len(probs):
        raise InvalidParameterError("observed/expected length mismatch")
    if abs(sum(probs) - 1.0) > 1e-9:
        raise InvalidParameterError(f"expected probabilities must sum to 1: {sum(probs)}")
    if any(p <= 0.0 for p in probs):
        raise InvalidParameterError("expected probabilities must be positive")
    big = [(o, n * p) for o, p in zip(observed, probs) if n * p >= 5.0]
    small = [(o, n * p) for o, p in zip(observed, probs) if n * p < 5.0]
    bins = list(big)
    if small:
        bins.append((sum(o for o, _ in small), sum(e for _, e in small)))
    if any(e < 5.0 for _, e in bins):
        raise InvalidParameterError("expected count below 5 even after merging")
    return sum((o - e) ** 2 / e for o, e in bins)


def chi_square_critical(df: int, significance: float = SIGNIFICANCE) -> float:
    return float(chi2_dist.isf(significance, df))


def ks_stat(samples, cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov statistic against a reference CDF."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.shape[0]
    if n == 0:
        raise InvalidParameterError("need at least one sample")
    f = np.asarray(cdf(x), dtype=np.float64)
    grid = np.arange(1, n + 1) / n
    return float(max(np.max(grid - f), np.max(f - (grid - 1.0 / n))))


def ks_two_sample_stat(a, b) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise InvalidParameterError("need at least one sample on each side")
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / a.size
    fb = np.searchsorted(b, pooled, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def _ks_const(significance: float) -> float:
    if significance == SIGNIFICANCE:
        return _KS_CONST
    return math.sqrt(math.log(2.0 / significance) / 2.0)


def ks_critical(n: int, significance: float = SIGNIFICANCE) -> float:
    return _ks_const(significance) / math.sqrt(n)


def ks_two_sample_critical(n: int, m: int, significance: float = SIGNIFICANCE) -> float:
    return _ks_const(significance) * math.sqrt((n + m) / (n * m))


def beta_cdf(a: float, b: float) -> Callable:
    return lambda x: betainc(a, b, np.clip(x, 0.0, 1.0))


# ---------------------------------------------------------------------------
# exact exchangeability
# ---------------------------------------------------------------------------

def _all_sequences(k: int, n: int):
    return itertools.product(range(1, k + 1), repeat=n)


def check_exchangeability_exact(
    params: UrnParams,
    n: int,
    seed: int = 0,
    log_pmf: Callable = polya_seq_log_pmf,
) -> TestReport:
    """Exact permutation invariance of the sequence law at length n.

    Permuting a sequence preserves its label counts, and every sequence with
    the same counts is a permutation of it, so invariance over all
    permutations of all sequences is exactly equality of the law within each
    equal-counts class.  The statistic is the largest log-space spread seen
    in any class.
    """
    if n > 6:
        raise InvalidParameterError("exact check is guarded to n <= 6")
    groups: Dict[tuple, List[float]] = defaultdict(list)
    for seq in _all_sequences(params.k, n):
        value = log_pmf(params, LabelSequence(seq, params.k))
        groups[tuple(Counter(seq).get(i, 0) for i in range(1, params.k + 1))].append(
            value.logmag
        )
    spread = max((max(v) - min(v) for v in groups.values()), default=0.0)
    return TestReport(
        name=f"exchangeability-exact[k={params.k}, n={n}]",
        statistic=spread,
        threshold=1e-12,
        passed=spread <= 1e-12,
        seed=seed,
        details="max log-pmf spread within equal-count classes",
    )


def _corrupted_seq_log_pmf(params: UrnParams, seq: LabelSequence):
    """Negative-control law: the urn law plus a position-dependent term."""
    base = polya_seq_log_pmf(params, seq)
    bias = 0.01 * sum(t * label for t, label in enumerate(seq.labels, start=1))
    return type(base)(base.sign, base.logmag + bias)


# ---------------------------------------------------------------------------
# suite helpers
# ---------------------------------------------------------------------------

def _report(name, statistic, threshold, seed, details="", reject=False) -> TestReport:
    """reject=True marks a negative control: it passes when the (wrong)
    hypothesis is rejected, i.e. the statistic exceeds the threshold."""
    statistic = float(statistic)
    threshold = float(threshold)
    if reject:
        passed = statistic > threshold
        details = (details + "; " if details else "") + "negative control: must be rejected"
    else:
        passed = statistic <= threshold
    return TestReport(name, statistic, threshold, passed, seed, details)


def _random_urn_params(gen: np.random.Generator, max_k: int = 3) -> UrnParams:
    k = int(gen.integers(1, max_k + 1))
    return UrnParams(tuple(gen.uniform(0.1, 5.0, size=k)))


def _random_crp_params_case2(gen: np.random.Generator) -> CrpParams:
    alpha = float(gen.uniform(0.0, 0.95))
    theta = float(gen.uniform(-alpha + 0.05, 5.0))
    return crp_validate(alpha, theta)


def _random_crp_params_case1(gen: np.random.Generator) -> CrpParams:
    k = int(gen.integers(1, 5))
    a = float(gen.uniform(0.2, 3.0))
    return crp_validate(-a, k * a)


def _count_vectors(k: int, n: int):
    """All count vectors (n_1..n_k) with sum n."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _count_vectors(k - 1, n - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _suite_polya_exact(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []
    gen = rng.child(0).generator
    param_sets = [_random_urn_params(gen) for _ in range(20)]

    oracle_gap = 0.0
    mass_gap = 0.0
    exch_spread = 0.0
    count_gap = 0.0
    count_mass_gap = 0.0
    for params in param_sets:
        for n in range(0, 7):
            mass = 0.0
            for seq in _all_sequences(params.k, n):
                labels = LabelSequence(seq, params.k)
                closed = polya_seq_log_pmf(params, labels).to_real()
                oracle = oracle_polya_seq_pmf(params, labels)
                oracle_gap = max(oracle_gap, abs(closed - oracle))
                mass += closed
            mass_gap = max(mass_gap, abs(mass - 1.0))
            count_mass = 0.0
            for counts in _count_vectors(params.k, n):
                cv = CountVector(counts)
                count_p = polya_count_log_pmf(params, cv).to_real()
                count_mass += count_p
                coeff = math.exp(
                    math.lgamma(n + 1) - sum(math.lgamma(c + 1) for c in counts)
                )
                seq_p = polya_seq_log_pmf(
                    params,
                    LabelSequence(
                        tuple(
                            i + 1 for i, c in enumerate(counts) for _ in range(c)
                        ),
                        params.k,
                    ),
                ).to_real()
                count_gap = max(count_gap, abs(count_p - coeff * seq_p))
            count_mass_gap = max(count_mass_gap, abs(count_mass - 1.0))
        exch = check_exchangeability_exact(params, 6, seed=seed)
        exch_spread = max(exch_spread, exch.statistic)

    reports.append(_report(
        "polya/oracle-equivalence", oracle_gap, 1e-12, seed,
        "closed form vs sequential product, all sequences n<=6, 20 parameter sets"))
    reports.append(_report(
        "polya/normalization", mass_gap, 1e-10, seed,
        "total mass over all sequences of each length"))
    reports.append(_report(
        "polya/exchangeability", exch_spread, 1e-12, seed,
        "permutation invariance via equal-count classes at n=6"))
    reports.append(_report(
        "polya/count-law-consistency", count_gap, 1e-12, seed,
        "count law vs multinomial-weighted sequence law"))
    reports.append(_report(
        "polya/count-law-normalization", count_mass_gap, 1e-10, seed))

    # sampler agreement with the exact law: all 8 sequences at k=2, n=3
    params = UrnParams((1.0, 1.0))
    cells = list(_all_sequences(2, 3))
    probs = [polya_seq_log_pmf(params, LabelSequence(s, 2)).to_real() for s in cells]
    draws = 10**5
    sampler_rng = rng.child(1)
    observed = Counter(
        polya_sample(params, 3, sampler_rng.child(i)).labels for i in range(draws)
    )
    stat = chi_square_stat([observed.get(c, 0) for c in cells], probs, draws)
    reports.append(_report(
        "polya/sampler-chi-square", stat, chi_square_critical(len(cells) - 1), seed,
        f"chi-square over the 8 length-3 sequences, N={draws}"))

    control = check_exchangeability_exact(
        UrnParams((1.0, 2.0)), 4, seed=seed, log_pmf=_corrupted_seq_log_pmf)
    reports.append(_report(
        "polya/negcontrol-corrupted-pmf", control.statistic, control.threshold, seed,
        "position-dependent corruption breaks exchangeability", reject=True))
    return reports


def _suite_crp_exact(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []
    gen = rng.child(0).generator
    param_sets = [_random_crp_params_case2(gen) for _ in range(10)]
    param_sets += [_random_crp_params_case1(gen) for _ in range(10)]

    partitions8 = enumerate_partitions(8)
    partitions6 = enumerate_partitions(6)

    oracle_gap = 0.0
    mass_gap = 0.0
    overcap_leak = 0.0
    exch_spread = 0.0
    for params in param_sets:
        mass = 0.0
        for pi in partitions8:
            closed = ewens_pitman_log_pmf(params, pi).to_real()
            oracle = oracle_crp_partition_pmf(params, pi)
            oracle_gap = max(oracle_gap, abs(closed - oracle))
            mass += closed
            if params.case_tag == FINITE_BLOCKS and pi.num_blocks > params.k:
                overcap_leak = max(overcap_leak, abs(closed))
        mass_gap = max(mass_gap, abs(mass - 1.0))
        # permutation invariance: relabeling preserves the block-size multiset,
        # and every partition with the same multiset arises from a relabeling
        groups: Dict[tuple, List[float]] = defaultdict(list)
        for pi in partitions6:
            groups[tuple(sorted(pi.block_sizes()))].append(
                ewens_pitman_log_pmf(params, pi).to_real()
            )
        for values in groups.values():
            exch_spread = max(exch_spread, max(values) - min(values))

    reports.append(_report(
        "crp/oracle-equivalence", oracle_gap, 1e-12, seed,
        "Ewens-Pitman law vs seating-history product, Bell(8)=4140 partitions, 20 parameter sets"))
    reports.append(_report("crp/normalization", mass_gap, 1e-10, seed))
    reports.append(_report(
        "crp/finite-blocks-zero-beyond-cap", overcap_leak, 0.0, seed,
        "partitions with more than k blocks carry exactly zero mass"))
    reports.append(_report(
        "crp/exchangeability", exch_spread, 1e-12, seed,
        "law depends only on the block-size multiset, n=6"))

    # case-1 / urn equivalence: CRP(-1, 2) vs the two-label urn (1, 1)
    crp_params = crp_validate(-1.0, 2.0)
    urn = UrnParams((1.0, 1.0))
    equiv_gap = 0.0
    for n in range(1, 7):
        induced: Dict[tuple, float] = defaultdict(float)
        for seq in _all_sequences(2, n):
            prob = polya_seq_log_pmf(urn, LabelSequence(seq, 2)).to_real()
            blocks = defaultdict(list)
            for pos, label in enumerate(seq, start=1):
                blocks[label].append(pos)
            pi = Partition.from_blocks(list(blocks.values()))
            induced[pi.blocks] += prob
        for pi in enumerate_partitions(n):
            ep = ewens_pitman_log_pmf(crp_params, pi).to_real()
            equiv_gap = max(equiv_gap, abs(ep - induced.get(pi.blocks, 0.0)))
    reports.append(_report(
        "crp/case1-urn-equivalence", equiv_gap, 1e-10, seed,
        "partition law induced by urn (1,1) label sequences, n<=6"))

    # sampler never exceeds the case-1 block cap
    cap_params = crp_validate(-1.0, 2.0)
    sampler_rng = rng.child(1)
    worst_blocks = 0
    for i in range(10**5):
        sizes = crp_table_sizes(cap_params, 10, sampler_rng.child(i))
        worst_blocks = max(worst_blocks, len(sizes))
    reports.append(_report(
        "crp/finite-blocks-sampler-cap", worst_blocks, cap_params.k, seed,
        "max table count over 1e5 draws at n=10"))

    control_gap = 0.0
    wrong = crp_validate(0.5, 0.6)
    right = crp_validate(0.5, 0.5)
    for pi in partitions6:
        control_gap = max(control_gap, abs(
            ewens_pitman_log_pmf(right, pi).to_real()
            - oracle_crp_partition_pmf(wrong, pi)))
    reports.append(_report(
        "crp/negcontrol-wrong-theta", control_gap, 1e-12, seed,
        "law at theta=0.5 vs oracle at theta=0.6 must disagree", reject=True))
    return reports


def _suite_limits(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []
    partitions6 = enumerate_partitions(6)

    alpha_gap = 0.0
    near_ewens = crp_validate(1e-8, 1.0)
    for pi in partitions6:
        ep = ewens_pitman_log_pmf(near_ewens, pi).to_real()
        ew = ewens_log_pmf(1.0, pi).to_real()
        alpha_gap = max(alpha_gap, abs(ep - ew) / ew)
    reports.append(_report(
        "limits/alpha-to-zero", alpha_gap, 1e-6, seed,
        "Ewens-Pitman at alpha=1e-8 vs Ewens formula, partitions of [6]"))

    theta_gap = 0.0
    near_zero = crp_validate(0.5, 1e-8)
    for pi in partitions6:
        ep = ewens_pitman_log_pmf(near_zero, pi).to_real()
        tz = theta_zero_log_pmf(0.5, pi).to_real()
        theta_gap = max(theta_gap, abs(ep - tz) / tz)
    reports.append(_report(
        "limits/theta-to-zero", theta_gap, 1e-6, seed,
        "Ewens-Pitman at theta=1e-8 vs theta=0 formula, partitions of [6]"))

    control_gap = 0.0
    off_limit = crp_validate(0.3, 1.0)
    for pi in partitions6:
        ep = ewens_pitman_log_pmf(off_limit, pi).to_real()
        ew = ewens_log_pmf(1.0, pi).to_real()
        control_gap = max(control_gap, abs(ep - ew) / ew)
    reports.append(_report(
        "limits/negcontrol-alpha-not-small", control_gap, 1e-6, seed,
        "alpha=0.3 is far from the Ewens limit", reject=True))
    return reports


def _suite_dirichlet(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []

    # limiting proportion of label 1 in the urn vs its Dirichlet marginal
    urn = UrnParams((2.0, 3.0))
    n, reps = 2000, 10**4
    limit_rng = rng.child(0)
    fractions = np.array([
        polya_sample_counts(urn, n, limit_rng.child(i))[0] / n for i in range(reps)
    ])
    stat = ks_stat(fractions, beta_cdf(2.0, 3.0))
    reports.append(_report(
        "dirichlet/urn-proportion-limit", stat, ks_critical(reps), seed,
        f"KS of n_1/n at n={n} over {reps} replicas vs Beta(2,3)"))

    # the two Dirichlet constructions agree in law, coordinate by coordinate
    gen = rng.child(1).generator
    draws = 10**4
    worst = 0.0
    for v in range(5):
        k = int(gen.integers(2, 5))
        alphas = tuple(gen.uniform(0.3, 4.0, size=k))
        gamma_rng = rng.child(10 + v)
        stick_rng = rng.child(20 + v)
        gamma_draws = np.array(
            [sample_dirichlet_gamma(alphas, gamma_rng).weights for _ in range(draws)])
        stick_draws = np.array(
            [sample_dirichlet_stick(alphas, stick_rng).weights for _ in range(draws)])
        for coord in range(k):
            worst = max(worst, ks_two_sample_stat(
                gamma_draws[:, coord], stick_draws[:, coord]))
    reports.append(_report(
        "dirichlet/gamma-vs-stick", worst, ks_two_sample_critical(draws, draws), seed,
        "coordinate-wise two-sample KS, 5 random parameter vectors"))

    # aggregation: summing Dir(1,1,1) over {1,2} gives a Beta(2,1) coordinate
    agg_rng = rng.child(2)
    agg_first = np.array([
        aggregate_simplex(
            sample_dirichlet_gamma((1.0, 1.0, 1.0), agg_rng), [[1, 2], [3]]
        )[0]
        for _ in range(draws)
    ])
    stat = ks_stat(agg_first, beta_cdf(2.0, 1.0))
    reports.append(_report(
        "dirichlet/aggregation", stat, ks_critical(draws), seed,
        "aggregated Dir(1,1,1) first coordinate vs Beta(2,1)"))

    # neutrality: the renormalized head of Dir(1,2,3) is Dir(1,2) and is
    # uncorrelated with the discarded coordinate
    neut_rng = rng.child(3)
    big = 10**5
    renorm_first = np.empty(big)
    third = np.empty(big)
    for i in range(big):
        x = sample_dirichlet_gamma((1.0, 2.0, 3.0), neut_rng)
        renorm_first[i] = normalize_subvector(x, (1, 2))[0]
        third[i] = x[2]
    corr = abs(float(np.corrcoef(renorm_first, third)[0, 1]))
    reports.append(_report(
        "dirichlet/neutrality-independence", corr, 0.02, seed,
        f"|corr| between renormalized head and dropped coordinate, N={big}"))
    stat = ks_stat(renorm_first, beta_cdf(1.0, 2.0))
    reports.append(_report(
        "dirichlet/neutrality-marginal", stat, ks_critical(big), seed,
        "renormalized first coordinate vs Beta(1,2)"))

    # density integrates to one on the 2-simplex
    def density(x):
        return math.exp(dirichlet_log_density((2.0, 3.0), SimplexVector((x, 1.0 - x))))

    total, _ = integrate.quad(density, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
    reports.append(_report(
        "dirichlet/density-normalization", abs(total - 1.0), 1e-8, seed,
        "quadrature of the Dir(2,3) density over the simplex"))

    control_rng = rng.child(4)
    beta_draws = np.array([
        sample_beta(2.0, 3.0, control_rng) for _ in range(draws)])
    stat = ks_stat(beta_draws, beta_cdf(3.0, 2.0))
    reports.append(_report(
        "dirichlet/negcontrol-swapped-beta", stat, ks_critical(draws), seed,
        "Beta(2,3) samples against the Beta(3,2) CDF", reject=True))
    return reports


def _suite_gem(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []
    params01 = crp_validate(0.0, 1.0)

    # stick means: at (0,1) each stick is uniform, so E[V_k] = 2^-k
    big = 10**5
    depth = 5
    mean_rng = rng.child(0)
    v = np.array([gem_sample(params01, depth, mean_rng).v for _ in range(big)])
    residual = 1.0 - v.sum(axis=1)
    worst = 0.0
    for kk in range(1, depth + 1):
        se = float(np.std(v[:, kk - 1], ddof=1) / math.sqrt(big))
        worst = max(worst, abs(float(np.mean(v[:, kk - 1])) - 2.0 ** (-kk)) / (3.0 * se))
    reports.append(_report(
        "gem/stick-means", worst, 1.0, seed,
        f"max |mean(V_k) - 2^-k| over 3 SE, k<=5, N={big}"))
    res_se = float(np.std(residual, ddof=1) / math.sqrt(big))
    res_gap = abs(float(np.mean(residual)) - 2.0 ** (-depth)) / (3.0 * res_se)
    reports.append(_report(
        "gem/residual-mean", res_gap, 1.0, seed,
        f"mean truncation residual at depth {depth} vs 2^-{depth}"))

    # first-block weight of the restaurant partition vs its stick marginal
    params_half = crp_validate(0.5, 0.5)
    n, reps = 5000, 10**4
    v1_rng = rng.child(1)
    v1 = np.array([
        empirical_block_weights(_sizes_as_partition(params_half, n, v1_rng.child(i))).v[0]
        for i in range(reps)
    ])
    stat = ks_stat(v1, beta_cdf(1.0 - params_half.alpha, params_half.theta + params_half.alpha))
    reports.append(_report(
        "gem/first-block-weight", stat, ks_critical(reps), seed,
        f"empirical V_1 at n={n} vs Beta(1-alpha, theta+alpha) at (0.5, 0.5)"))

    # ranked leader: stick-breaking draws vs empirical restaurant weights
    gem_rng = rng.child(2)
    crp_rng = rng.child(3)
    s1_gem = np.array([
        rank_weights(gem_sample(params01, 50, gem_rng)).s[0] for _ in range(reps)])
    s1_crp = np.array([
        float(np.max(crp_table_sizes(params01, n, crp_rng.child(i)))) / n
        for i in range(reps)
    ])
    stat = ks_two_sample_stat(s1_gem, s1_crp)
    reports.append(_report(
        "gem/ranked-leader", stat, ks_two_sample_critical(reps, reps), seed,
        "largest weight: GEM depth 50 vs restaurant at n=5000, (0, 1)"))

    v1_se = float(np.std(v[:, 0], ddof=1) / math.sqrt(big))
    control = abs(float(np.mean(v[:, 0])) - 0.6) / (3.0 * v1_se)
    reports.append(_report(
        "gem/negcontrol-wrong-mean", control, 1.0, seed,
        "E[V_1] tested against the wrong value 0.6", reject=True))
    return reports


def _sizes_as_partition(params: CrpParams, n: int, rng: RandomSource) -> Partition:
    """Cheap stand-in partition carrying only block sizes, for weight checks."""
    sizes = crp_table_sizes(params, n, rng)
    blocks = []
    start = 1
    for size in sizes:
        blocks.append(tuple(range(start, start + int(size))))
        start += int(size)
    return Partition(n, tuple(blocks))


def _suite_correlation(rng: RandomSource, seed: int) -> List[TestReport]:
    reports = []
    params01 = crp_validate(0.0, 1.0)
    params_half = crp_validate(0.5, 0.5)
    n, reps = 5000, 10**4

    # quadrature identities for the 1-correlation at alpha = 0
    quad_gap = 0.0
    for theta in (1.0, 2.5):
        p = crp_validate(0.0, theta)
        first, _ = integrate.quad(
            lambda x: x * rho_k(p, (x,)), 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
        second, _ = integrate.quad(
            lambda x: x * x * rho_k(p, (x,)), 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
        quad_gap = max(quad_gap, abs(first - 1.0), abs(second - 1.0 / (1.0 + theta)))
    reports.append(_report(
        "correlation/quadrature-identities", quad_gap, 1e-8, seed,
        "integral of x*rho_1 = 1 and x^2*rho_1 = 1/(1+theta) for theta in {1, 2.5}"))

    # Monte Carlo distinct-index sums vs the correlation integrals
    mc_worst = 0.0

    def record(tag, estimate, stderr, target):
        nonlocal mc_worst
        gap = abs(estimate - target) / (3.0 * stderr)
        mc_worst = max(mc_worst, gap)
        return gap

    est, se = correlation_mc_estimate(
        params01, 1, lambda s: s**2, n, reps, rng.child(0))
    record("01-k1", est, se, 0.5)
    est, se = correlation_mc_estimate(
        params01, 2, lambda a, b: a * b, n, reps, rng.child(1))
    record("01-k2", est, se, 0.5)

    window = lambda s: np.where((s >= 0.2) & (s <= 0.4), s, 0.0)
    target_window, _ = integrate.quad(
        lambda x: x * rho_k(params_half, (x,)), 0.2, 0.4, epsabs=1e-12, epsrel=1e-12)
    est, se = correlation_mc_estimate(params_half, 1, window, n, reps, rng.child(2))
    record("half-k1", est, se, target_window)

    def pair_integrand(y, x):
        if x <= 0.0 or y <= 0.0 or x + y >= 1.0:
            return 0.0
        return x * y * rho_k(params_half, (x, y))

    target_pair, _ = integrate.dblquad(
        pair_integrand, 0.0, 1.0, 0.0, lambda x: max(1.0 - x, 0.0), epsabs=1e-10)
    est, se = correlation_mc_estimate(
        params_half, 2, lambda a, b: a * b, n, reps, rng.child(3))
    record("half-k2", est, se, target_pair)

    reports.append(_report(
        "correlation/mc-vs-quadrature", mc_worst, 1.0, seed,
        f"max |MC - integral| over 3 SE at n={n}, reps={reps}, (0,1) and (0.5,0.5)"))

    # finite-n block size counts vs enumeration over the exact partition law
    gen = rng.child(4).generator
    count_params = [_random_crp_params_case2(gen) for _ in range(5)] + [params01]
    count_gap = 0.0
    for p in count_params:
        for nn in range(1, 7):
            partitions = enumerate_partitions(nn)
            probs = [ewens_pitman_log_pmf(p, pi).to_real() for pi in partitions]
            for kk in range(1, 4):
                for sizes in itertools.combinations_with_replacement(range(1, nn + 1), kk):
                    if sum(sizes) > nn:
                        continue
                    # the closed form is 1/k! times the expected number of
                    # ordered tuples of distinct blocks with these sizes
                    expected = 0.0
                    mult = Counter(sizes)
                    for pi, prob in zip(partitions, probs):
                        have = Counter(pi.block_sizes())
                        ways = 1.0
                        for s, m in mult.items():
                            ways *= math.perm(have.get(s, 0), m)
                        expected += prob * ways
                    expected /= math.factorial(kk)
                    count_gap = max(
                        count_gap, abs(block_count_prob(p, nn, sizes) - expected))
    reports.append(_report(
        "correlation/block-count-vs-enumeration", count_gap, 1e-10, seed,
        "closed form vs expected matching-block tuple count, n<=6, k<=3"))

    # symmetry of the correlation function
    sym_gen = rng.child(5).generator
    sym_gap = 0.0
    for _ in range(50):
        kk = int(sym_gen.integers(1, 4))
        xs = sym_gen.uniform(0.01, 0.9 / kk, size=kk)
        base = rho_k(params_half, tuple(xs))
        for perm in itertools.permutations(xs):
            sym_gap = max(sym_gap, abs(rho_k(params_half, perm) - base) / base)
    reports.append(_report(
        "correlation/rho-symmetry", sym_gap, 1e-12, seed))

    wrong, _ = integrate.quad(
        lambda x: x * rho_k(params01, (x,)), 0.0, 1.0, epsabs=1e-12, epsrel=1e-12)
    reports.append(_report(
        "correlation/negcontrol-wrong-integral", abs(wrong - 1.1), 1e-8, seed,
        "integral of x*rho_1 tested against the wrong value 1.1", reject=True))
    return reports


_SUITES = {
    "polya-exact": _suite_polya_exact,
    "crp-exact": _suite_crp_exact,
    "limits": _suite_limits,
    "dirichlet": _suite_dirichlet,
    "gem": _suite_gem,
    "correlation": _suite_correlation,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, seed: int) -> List[TestReport]:
    """Run one named verification suite with the given master seed."""
    try:
        builder = _SUITES[name]
    except KeyError:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; known suites: {', '.join(SUITE_NAMES)}"
        ) from None
    return builder(RandomSource(seed), int(seed))
