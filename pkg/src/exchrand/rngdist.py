"""Seeded randomness and the base continuous distributions.

All sampling in the package flows through :class:`RandomSource`, a thin
wrapper around numpy's PCG64 generator.  Seeds are explicit everywhere; a
source can derive independent child streams so that replicated experiments
stay reproducible when parallelized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "RandomSource",
    "SimplexVector",
    "sample_gamma",
    "sample_beta",
    "sample_dirichlet_gamma",
    "sample_dirichlet_stick",
    "sample_categorical",
]

SIMPLEX_TOL = 1e-12


class RandomSource:
    """Deterministic random stream: same seed, same draw sequence.

    Backed by numpy PCG64 seeded through SeedSequence, so streams are
    bit-reproducible across platforms.  ``child(i)`` derives a statistically
    independent stream keyed by (seed, spawn path, i).
    """

    def __init__(self, seed: int, _spawn_key: tuple = ()):
        self.seed = int(seed)
        self._spawn_key = tuple(int(k) for k in _spawn_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self._spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(seq))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def child(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self._spawn_key + (index,))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, spawn_key={self._spawn_key})"


@dataclass(frozen=True)
class SimplexVector:
    """Nonnegative weights summing to one."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 1:
            raise InvalidParameterError("simplex vector needs at least one entry")
        if any(x < 0.0 or not math.isfinite(x) for x in w):
            raise InvalidParameterError(f"simplex entries must be finite and >= 0: {w}")
        if abs(sum(w) - 1.0) > SIMPLEX_TOL:
            raise InvalidParameterError(f"simplex entries must sum to 1, got {sum(w)!r}")

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> float:
        return self.weights[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64)


def _check_shape(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise InvalidParameterError(f"{name} must be a positive finite real, got {value}")
    return value


def sample_gamma(shape: float, rng: RandomSource) -> float:
    """One draw from Gamma(shape, 1).  shape < 1 is handled by the generator."""
    shape = _check_shape("shape", shape)
    return float(rng.generator.gamma(shape))


def sample_beta(a: float, b: float, rng: RandomSource) -> float:
    """One Beta(a, b) draw built from two Gamma draws."""
    a = _check_shape("a", a)
    b = _check_shape("b", b)
    za = sample_gamma(a, rng)
    zb = sample_gamma(b, rng)
    return za / (za + zb)


def sample_dirichlet_gamma(alphas, rng: RandomSource) -> SimplexVector:
    """Dirichlet draw as normalized independent Gamma(alpha_i, 1) draws."""
    alphas = [_check_shape("alpha", a) for a in alphas]
    z = [sample_gamma(a, rng) for a in alphas]
    total = sum(z)
    return SimplexVector(tuple(x / total for x in z))


def sample_dirichlet_stick(alphas, rng: RandomSource) -> SimplexVector:
    """Dirichlet draw by stick breaking with Beta(alpha_i, alpha_{i+1}+...+alpha_k) sticks."""
    alphas = [_check_shape("alpha", a) for a in alphas]
    k = len(alphas)
    if k == 1:
        return SimplexVector((1.0,))
    out = []
    remaining = 1.0
    tail = sum(alphas)
    for i in range(k - 1):
        tail -= alphas[i]
        w = sample_beta(alphas[i], tail, rng)
        out.append(w * remaining)
        remaining *= 1.0 - w
    # last coordinate takes the leftover stick so the vector sums to 1 exactly
    out.append(1.0 - sum(out))
    return SimplexVector(tuple(out))


def sample_categorical(weights: SimplexVector, rng: RandomSource) -> int:
    """Index i with probability weights[i], by inverse CDF over the cumulative sum.

    Floating residue at the top of the CDF is assigned to the final index.
    """
    if not isinstance(weights, SimplexVector):
        weights = SimplexVector(tuple(weights))
    u = float(rng.generator.random())
    acc = 0.0
    for i, w in enumerate(weights.weights):
        acc += w
        if u < acc:
            return i
    return len(weights) - 1
