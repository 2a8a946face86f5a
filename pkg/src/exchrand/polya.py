"""Polya urn process: sampler, exact sequence/count laws, and the
Dirichlet-distribution operations tied to its limiting proportions.

Labels are 1-based in every public signature (labels live in 1..k); internal
arrays are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidParameterError
from .numkern import SignedLogValue, rising
from .rngdist import RandomSource, SimplexVector

__all__ = [
    "UrnParams",
    "LabelSequence",
    "CountVector",
    "polya_next_probs",
    "polya_sample",
    "polya_sample_counts",
    "polya_seq_log_pmf",
    "polya_count_log_pmf",
    "dirichlet_log_density",
    "aggregate_simplex",
    "normalize_subvector",
]


@dataclass(frozen=True)
class UrnParams:
    """Urn weights alpha_1..alpha_k, all positive."""

    alphas: tuple

    def __post_init__(self):
        a = tuple(float(x) for x in self.alphas)
        object.__setattr__(self, "alphas", a)
        if len(a) < 1:
            raise InvalidParameterError("need at least one label")
        if any(not math.isfinite(x) or x <= 0.0 for x in a):
            raise InvalidParameterError(f"all urn weights must be positive and finite: {a}")

    @property
    def k(self) -> int:
        return len(self.alphas)

    @property
    def total(self) -> float:
        return sum(self.alphas)


@dataclass(frozen=True)
class LabelSequence:
    """Recorded labels, each in 1..k."""

    labels: tuple
    k: int

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if self.k < 1:
            raise InvalidParameterError("label count k must be >= 1")
        if any(not 1 <= x <= self.k for x in labels):
            raise InvalidParameterError(f"labels must lie in 1..{self.k}: {labels}")

    def __len__(self) -> int:
        return len(self.labels)

    def counts(self) -> "CountVector":
        c = [0] * self.k
        for label in self.labels:
            c[label - 1] += 1
        return CountVector(tuple(c))


@dataclass(frozen=True)
class CountVector:
    """Occurrence counts n_1..n_k."""

    counts: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.counts)
        object.__setattr__(self, "counts", c)
        if any(x < 0 for x in c):
            raise InvalidParameterError(f"counts must be >= 0: {c}")

    @property
    def total(self) -> int:
        return sum(self.counts)


def polya_next_probs(params: UrnParams, counts: CountVector) -> SimplexVector:
    """Conditional law of the next label: (alpha_i + n_i) / (sum(alpha) + n)."""
    if len(counts.counts) != params.k:
        raise InvalidParameterError(
            f"counts has length {len(counts.counts)}, expected {params.k}"
        )
    denom = params.total + counts.total
    return SimplexVector(
        tuple((a + c) / denom for a, c in zip(params.alphas, counts.counts))
    )


def polya_sample(params: UrnParams, n: int, rng: RandomSource) -> LabelSequence:
    """Draw a length-n urn sequence."""
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    u = rng.generator.random(n)
    labels = _kernels.polya_labels(np.asarray(params.alphas), u)
    return LabelSequence(tuple(int(x) + 1 for x in labels), params.k)


def polya_sample_counts(params: UrnParams, n: int, rng: RandomSource) -> np.ndarray:
    """Counts-only fast path for large replications; same law as polya_sample."""
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    u = rng.generator.random(n)
    labels = _kernels.polya_labels(np.asarray(params.alphas), u)
    return np.bincount(labels, minlength=params.k)


def polya_seq_log_pmf(params: UrnParams, seq: LabelSequence) -> SignedLogValue:
    """Exact joint law of a label sequence.

    Evaluates the closed form prod_i alpha_i^(rising n_i) / total^(rising n)
    on the sequence's count vector, which makes exchangeability structural:
    the value depends on the sequence only through its counts.
    """
    if seq.k != params.k:
        raise InvalidParameterError(f"sequence has k={seq.k}, params have k={params.k}")
    return polya_counts_unordered_log_pmf(params, seq.counts())


def polya_counts_unordered_log_pmf(params: UrnParams, counts: CountVector) -> SignedLogValue:
    """Probability of any single sequence with the given counts."""
    if len(counts.counts) != params.k:
        raise InvalidParameterError("counts/params length mismatch")
    num = SignedLogValue(1, 0.0)
    for a, c in zip(params.alphas, counts.counts):
        num = num * rising(a, c)
    return num / rising(params.total, counts.total)


def polya_count_log_pmf(params: UrnParams, counts: CountVector) -> SignedLogValue:
    """Law of the count vector: multinomial coefficient times the sequence law."""
    n = counts.total
    log_multinomial = math.lgamma(n + 1) - sum(math.lgamma(c + 1) for c in counts.counts)
    seq = polya_counts_unordered_log_pmf(params, counts)
    return SignedLogValue(seq.sign, seq.logmag + log_multinomial)


def dirichlet_log_density(alphas, x: SimplexVector) -> float:
    """Log Dirichlet density at x, w.r.t. the (k-1)-dimensional simplex measure.

    Returns +inf when some x_i = 0 with alpha_i < 1 (density blows up) and
    -inf when some x_i = 0 with alpha_i > 1 (density vanishes).
    """
    alphas = tuple(float(a) for a in alphas)
    if any(a <= 0 or not math.isfinite(a) for a in alphas):
        raise InvalidParameterError(f"all alphas must be positive: {alphas}")
    if not isinstance(x, SimplexVector):
        raise DomainError("x must be a SimplexVector (point on the simplex)")
    if len(x) != len(alphas):
        raise DomainError(f"x has length {len(x)}, expected {len(alphas)}")
    log_norm = math.lgamma(sum(alphas)) - sum(math.lgamma(a) for a in alphas)
    out = log_norm
    for a, xi in zip(alphas, x.weights):
        if xi == 0.0:
            if a < 1.0:
                return math.inf
            if a > 1.0:
                return -math.inf
            continue  # alpha == 1: factor is x^0 = 1
        out += (a - 1.0) * math.log(xi)
    return out


def _check_blocks(blocks, k: int):
    seen = set()
    out = []
    for block in blocks:
        b = tuple(int(i) for i in block)
        if len(b) == 0:
            raise InvalidParameterError("blocks must be nonempty")
        for i in b:
            if not 1 <= i <= k or i in seen:
                raise InvalidParameterError(f"blocks do not partition 1..{k}")
            seen.add(i)
        out.append(b)
    if len(seen) != k:
        raise InvalidParameterError(f"blocks do not cover 1..{k}")
    return out


def aggregate_simplex(x: SimplexVector, blocks) -> SimplexVector:
    """Sum coordinates over each block of a partition of the index set."""
    blocks = _check_blocks(blocks, len(x))
    sums = [sum(x[i - 1] for i in block) for block in blocks]
    # guard rounding: re-anchor the total at exactly 1
    total = sum(sums)
    return SimplexVector(tuple(s / total for s in sums))


def normalize_subvector(x: SimplexVector, index_list) -> SimplexVector:
    """Renormalize the coordinates picked by index_list (1-based, ordered)."""
    idx = [int(i) for i in index_list]
    if len(idx) == 0:
        raise InvalidParameterError("index_list must be nonempty")
    if len(set(idx)) != len(idx) or any(not 1 <= i <= len(x) for i in idx):
        raise InvalidParameterError(f"index_list must be distinct indices in 1..{len(x)}")
    mass = sum(x[i - 1] for i in idx)
    if mass <= 0.0:
        raise DomainError("selected coordinates carry zero mass")
    return SimplexVector(tuple(x[i - 1] / mass for i in idx))
