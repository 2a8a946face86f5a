"""Block weights of the restaurant partition: empirical order-of-appearance
weights, the stick-breaking (GEM) sampler, ranked weights, finite-n block
size probabilities, and the Poisson-Dirichlet k-correlation function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.special import gammaln, gammasgn

from .crp import (
    FINITE_BLOCKS,
    INFINITE_BLOCKS,
    CrpParams,
    Partition,
    crp_table_sizes,
)
from .errors import DomainError, InvalidParameterError
from .numkern import gen_binom
from .rngdist import RandomSource, sample_beta

__all__ = [
    "WeightSequence",
    "RankedWeights",
    "empirical_block_weights",
    "gem_sample",
    "rank_weights",
    "block_count_prob",
    "rho_k",
    "correlation_mc_estimate",
]

WEIGHT_SUM_TOL = 1e-10
_MC_WEIGHT_FLOOR = 1e-12


@dataclass(frozen=True)
class WeightSequence:
    """Block weights in order of appearance, truncated with residual mass."""

    v: tuple
    residual: float = 0.0

    def __post_init__(self):
        v = tuple(float(x) for x in self.v)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "residual", float(self.residual))
        if any(x <= 0.0 for x in v):
            raise InvalidParameterError(f"weights must be positive: {v}")
        if self.residual < 0.0:
            raise InvalidParameterError(f"residual must be >= 0, got {self.residual}")
        if abs(sum(v) + self.residual - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidParameterError(
                f"weights + residual must sum to 1, got {sum(v) + self.residual!r}"
            )


@dataclass(frozen=True)
class RankedWeights:
    """Non-increasing block weights, truncated with residual mass."""

    s: tuple
    residual: float = 0.0

    def __post_init__(self):
        s = tuple(float(x) for x in self.s)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "residual", float(self.residual))
        if any(x <= 0.0 for x in s):
            raise InvalidParameterError(f"weights must be positive: {s}")
        if any(s[i] < s[i + 1] for i in range(len(s) - 1)):
            raise InvalidParameterError("ranked weights must be non-increasing")
        if self.residual < 0.0 or abs(sum(s) + self.residual - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidParameterError("weights + residual must sum to 1")


def empirical_block_weights(pi: Partition) -> WeightSequence:
    """Block proportions |B_i|/n in order-of-appearance block order."""
    if pi.n == 0:
        raise InvalidParameterError("partition must be nonempty")
    n = pi.n
    return WeightSequence(tuple(size / n for size in pi.block_sizes()), 0.0)


def gem_sample(params: CrpParams, depth: int, rng: RandomSource) -> WeightSequence:
    """Stick-breaking weights V_j = W_j * prod_{i<j}(1 - W_i), truncated at depth.

    W_j ~ Beta(1 - alpha, theta + j*alpha).  Requires the infinite-blocks case
    with alpha < 1 (alpha = 1 would make the stick law degenerate).
    """
    if params.case_tag != INFINITE_BLOCKS:
        raise InvalidParameterError("stick-breaking needs the infinite-blocks case")
    if params.alpha >= 1.0:
        raise InvalidParameterError("alpha = 1 makes the stick Beta(0, .) degenerate")
    if depth < 1:
        raise InvalidParameterError(f"depth must be >= 1, got {depth}")
    v = []
    remaining = 1.0
    for j in range(1, depth + 1):
        w = sample_beta(1.0 - params.alpha, params.theta + j * params.alpha, rng)
        v.append(w * remaining)
        remaining *= 1.0 - w
    return WeightSequence(tuple(v), remaining)


def rank_weights(w: WeightSequence) -> RankedWeights:
    """Non-increasing rearrangement; residual carried over unchanged."""
    return RankedWeights(tuple(sorted(w.v, reverse=True)), w.residual)


def block_count_prob(params: CrpParams, n: int, sizes) -> float:
    """Block-size count quantity for the partition of [n] at sizes (n_1..n_k).

    Evaluates C(-theta/alpha, k) * prod C(alpha, n_i) * C(-theta-k*alpha, n-sum)
    / C(-theta, n); alpha = 0 uses the analytic limit of the first two factors.
    The exact finite-n meaning is 1/k! times the expected number of ordered
    k-tuples of distinct blocks whose sizes are (n_1, ..., n_k).  In the
    small-cell limit behind the correlation function the tuples are almost
    surely unique and this is the probability that such blocks exist.
    """
    sizes = [int(s) for s in sizes]
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if len(sizes) < 1 or any(s < 1 for s in sizes):
        raise InvalidParameterError(f"sizes must be positive integers: {sizes}")
    total = sum(sizes)
    if total > n:
        raise InvalidParameterError(f"sizes sum to {total} > n = {n}")
    k = len(sizes)
    alpha, theta = params.alpha, params.theta
    if alpha == 0.0:
        # limit of C(-theta/alpha, k) * prod C(alpha, n_i) as alpha -> 0
        logmag = k * math.log(theta) - math.lgamma(k + 1)
        for s in sizes:
            logmag += math.lgamma(s) - math.lgamma(s + 1)
        rest = n - total
        logmag += math.lgamma(n + 1) - math.lgamma(rest + 1)
        logmag += math.lgamma(theta + rest) - math.lgamma(theta + n)
        return math.exp(logmag)
    value = gen_binom(-theta / alpha, k)
    for s in sizes:
        value = value * gen_binom(alpha, s)
    value = value * gen_binom(-theta - k * alpha, n - total)
    value = value / gen_binom(-theta, n)
    return value.to_real()


def _log_correlation_constant(alpha: float, theta: float, k: int) -> float:
    """log c_{k,alpha,theta}; signs of the Gamma factors cancel by construction."""
    if alpha == 0.0:
        return k * math.log(theta)
    args_num = [theta / alpha + k, theta]
    args_den = [theta + k * alpha, theta / alpha]
    sign = 1.0
    log_c = k * math.log(alpha) - k * gammaln(1.0 - alpha)
    for a in args_num:
        sign *= gammasgn(a)
        log_c += gammaln(a)
    for a in args_den:
        sign *= gammasgn(a)
        log_c -= gammaln(a)
    if sign <= 0:
        raise DomainError(f"correlation constant is not positive at ({alpha}, {theta}, {k})")
    return float(log_c)


def rho_k(params: CrpParams, xs) -> float:
    """k-correlation function of the ranked weights at (x_1, ..., x_k).

    Defined on the open region x_i > 0, sum x_i < 1.  Not a probability
    density: it integrates the expected number of distinct-index k-tuples.
    """
    if params.case_tag != INFINITE_BLOCKS or params.alpha >= 1.0:
        raise InvalidParameterError(
            "correlation function needs the infinite-blocks case with alpha < 1"
        )
    xs = [float(x) for x in xs]
    if len(xs) < 1:
        raise InvalidParameterError("need at least one coordinate")
    total = sum(xs)
    if any(x <= 0.0 for x in xs) or total >= 1.0:
        raise DomainError(f"xs must be positive with sum < 1: {xs}")
    k = len(xs)
    alpha, theta = params.alpha, params.theta
    log_rho = _log_correlation_constant(alpha, theta, k)
    for x in xs:
        log_rho += (-alpha - 1.0) * math.log(x)
    log_rho += (k * alpha + theta - 1.0) * math.log1p(-total)
    return math.exp(log_rho)


def correlation_mc_estimate(
    params: CrpParams,
    k: int,
    f: Callable,
    n: int,
    reps: int,
    rng: RandomSource,
) -> Tuple[float, float]:
    """Monte Carlo estimate of E[sum over distinct index tuples of f(S_...)].

    Each replica seats n customers, ranks the empirical block weights, and
    evaluates the distinct-index sum (k = 1 or 2).  ``f`` must accept numpy
    arrays and should vanish at least linearly near 0 so the tail of the
    weight sequence is negligible.  Returns (mean, standard error) over
    replicas; replica r draws from ``rng.child(r)``.
    """
    if k not in (1, 2):
        raise InvalidParameterError(f"k must be 1 or 2, got {k}")
    if reps < 100:
        raise InvalidParameterError(f"reps must be >= 100, got {reps}")
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    values = np.empty(reps, dtype=np.float64)
    for r in range(reps):
        sizes = crp_table_sizes(params, n, rng.child(r))
        s = np.sort(sizes)[::-1].astype(np.float64) / n
        s = s[s > _MC_WEIGHT_FLOOR]
        if k == 1:
            values[r] = float(np.sum(f(s)))
        else:
            grid = f(s[:, None], s[None, :])
            np.fill_diagonal(grid, 0.0)
            values[r] = float(np.sum(grid))
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(reps))
    return mean, stderr
