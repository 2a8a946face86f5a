"""Chinese restaurant process: parameter cases, seating sampler, canonical
set partitions, and the exact Ewens-Pitman / Ewens / theta=0 partition laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .numkern import SLV_ONE, SLV_ZERO, SignedLogValue, rising
from .rngdist import RandomSource

__all__ = [
    "CrpParams",
    "Partition",
    "SeatingState",
    "crp_validate",
    "crp_next_probs",
    "crp_sample",
    "crp_table_sizes",
    "ewens_pitman_log_pmf",
    "ewens_log_pmf",
    "theta_zero_log_pmf",
    "enumerate_partitions",
]

FINITE_BLOCKS = "finite_blocks"
INFINITE_BLOCKS = "infinite_blocks"

_CASE1_INTEGER_TOL = 1e-9


@dataclass(frozen=True)
class CrpParams:
    """Validated (alpha, theta) pair; use :func:`crp_validate` to construct."""

    alpha: float
    theta: float
    case_tag: str
    k: Optional[int]  # block-count bound, finite_blocks only


def crp_validate(alpha: float, theta: float) -> CrpParams:
    """Classify (alpha, theta) into one of the two admissible cases.

    Case finite_blocks: alpha < 0 and theta = -k*alpha for a positive integer
    k (integrality tested to 1e-9, then k stored exactly).  Case
    infinite_blocks: 0 <= alpha <= 1 and theta > -alpha.
    """
    alpha = float(alpha)
    theta = float(theta)
    if not (math.isfinite(alpha) and math.isfinite(theta)):
        raise InvalidParameterError(f"parameters must be finite: ({alpha}, {theta})")
    if alpha < 0.0:
        ratio = theta / (-alpha)
        k = round(ratio)
        if k < 1 or abs(ratio - k) > _CASE1_INTEGER_TOL:
            raise InvalidParameterError(
                f"alpha < 0 requires theta = -k*alpha for integer k >= 1; "
                f"got theta/(-alpha) = {ratio}"
            )
        return CrpParams(alpha, theta, FINITE_BLOCKS, int(k))
    if alpha <= 1.0 and theta > -alpha:
        return CrpParams(alpha, theta, INFINITE_BLOCKS, None)
    raise InvalidParameterError(
        f"({alpha}, {theta}) is not admissible: need 0 <= alpha <= 1 and theta > -alpha"
    )


@dataclass(frozen=True)
class SeatingState:
    """Occupied-table sizes in order of table creation."""

    table_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(t) for t in self.table_sizes)
        object.__setattr__(self, "table_sizes", sizes)
        if any(t < 1 for t in sizes):
            raise InvalidParameterError(f"table sizes must be positive: {sizes}")

    @property
    def n(self) -> int:
        return sum(self.table_sizes)

    @property
    def m(self) -> int:
        return len(self.table_sizes)


@dataclass(frozen=True)
class Partition:
    """Set partition of 1..n in canonical form.

    Blocks are ordered by least element with each block's elements ascending,
    which is also the order in which the blocks appear when the elements
    arrive as customers 1..n.
    """

    n: int
    blocks: tuple

    @classmethod
    def from_blocks(cls, blocks) -> "Partition":
        cleaned = []
        seen = set()
        for block in blocks:
            b = tuple(sorted(int(i) for i in block))
            if len(b) == 0:
                raise InvalidParameterError("partition blocks must be nonempty")
            for i in b:
                if i < 1 or i in seen:
                    raise InvalidParameterError(f"blocks are not disjoint subsets of N+: {blocks}")
                seen.add(i)
            cleaned.append(b)
        n = len(seen)
        if seen and seen != set(range(1, n + 1)):
            raise InvalidParameterError(f"blocks must partition 1..{n}: {blocks}")
        cleaned.sort(key=lambda b: b[0])
        return cls(n, tuple(cleaned))

    @classmethod
    def from_assignments(cls, assign) -> "Partition":
        """Build from 0-based table indices of customers 1..n, in arrival order."""
        blocks: List[List[int]] = []
        for customer, table in enumerate(assign, start=1):
            table = int(table)
            if table == len(blocks):
                blocks.append([customer])
            else:
                blocks[table].append(customer)
        return cls(len(list(assign)), tuple(tuple(b) for b in blocks))

    def block_sizes(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def seating_history(self) -> tuple:
        """0-based table index chosen by each customer when arriving in order."""
        table_of = {}
        for j, block in enumerate(self.blocks):
            for i in block:
                table_of[i] = j
        return tuple(table_of[i] for i in range(1, self.n + 1))

    def relabel(self, perm) -> "Partition":
        """Apply a permutation of 1..n (perm[i-1] is the image of i) and re-canonicalize."""
        return Partition.from_blocks(
            [[perm[i - 1] for i in block] for block in self.blocks]
        )


def crp_next_probs(params: CrpParams, state: SeatingState):
    """Seating law for the next customer.

    Returns (per-table probabilities in creation order, new-table probability).
    """
    n, m = state.n, state.m
    if n == 0:
        return [], 1.0
    denom = n + params.theta
    table_probs = [(t - params.alpha) / denom for t in state.table_sizes]
    new_prob = (m * params.alpha + params.theta) / denom
    if new_prob < 0.0:
        # exact arithmetic gives 0 at the case-1 block cap; clamp rounding dust
        new_prob = 0.0
    return table_probs, new_prob


def crp_sample(params: CrpParams, n: int, rng: RandomSource) -> Partition:
    """Seat n customers sequentially and return the resulting partition."""
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    u = rng.generator.random(n)
    cap = params.k if params.case_tag == FINITE_BLOCKS else n
    assign = _kernels.crp_assignments(params.alpha, params.theta, cap, u)
    return Partition.from_assignments(assign)


def crp_table_sizes(params: CrpParams, n: int, rng: RandomSource) -> np.ndarray:
    """Table sizes in creation order; fast path for large replications."""
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    u = rng.generator.random(n)
    cap = params.k if params.case_tag == FINITE_BLOCKS else n
    assign = _kernels.crp_assignments(params.alpha, params.theta, cap, u)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    return np.bincount(assign)


def ewens_pitman_log_pmf(params: CrpParams, pi: Partition) -> SignedLogValue:
    """Exact Ewens-Pitman law of the partition of [n].

    The alpha = 0 and theta = 0 boundaries are 0/0 forms of the general
    expression; they are routed to their dedicated limit formulas.
    """
    if pi.n == 0:
        return SLV_ONE
    if params.alpha == 0.0:
        return ewens_log_pmf(params.theta, pi)
    if params.theta == 0.0:
        return theta_zero_log_pmf(params.alpha, pi)
    k = pi.num_blocks
    num = rising(params.theta / params.alpha, k)
    for size in pi.block_sizes():
        num = num * (-rising(-params.alpha, size))
    return num / rising(params.theta, pi.n)


def ewens_log_pmf(theta: float, pi: Partition) -> SignedLogValue:
    """Ewens sampling formula: theta^k * prod (n_i - 1)! / theta^(rising n)."""
    theta = float(theta)
    if theta <= 0.0:
        raise InvalidParameterError(f"theta must be positive, got {theta}")
    if pi.n == 0:
        return SLV_ONE
    logmag = pi.num_blocks * math.log(theta)
    for size in pi.block_sizes():
        logmag += math.lgamma(size)
    denom = rising(theta, pi.n)
    return SignedLogValue(1, logmag - denom.logmag)


def theta_zero_log_pmf(alpha: float, pi: Partition) -> SignedLogValue:
    """Partition law at theta = 0: (k-1)!/(alpha*(n-1)!) * prod -(-alpha)^(rising n_i)."""
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidParameterError(f"alpha must lie in (0, 1], got {alpha}")
    if pi.n == 0:
        return SLV_ONE
    k = pi.num_blocks
    out = SignedLogValue(1, math.lgamma(k) - math.log(alpha) - math.lgamma(pi.n))
    for size in pi.block_sizes():
        factor = -rising(-alpha, size)
        if factor.sign == 0:
            return SLV_ZERO
        out = out * factor
    return out


def enumerate_partitions(n: int) -> List[Partition]:
    """All Bell(n) partitions of 1..n in canonical form, for 1 <= n <= 10."""
    if not 1 <= n <= 10:
        raise InvalidParameterError(f"n must lie in 1..10, got {n}")
    partial: List[List[List[int]]] = [[[1]]]
    for element in range(2, n + 1):
        grown: List[List[List[int]]] = []
        for p in partial:
            for j in range(len(p)):
                q = [list(b) for b in p]
                q[j].append(element)
                grown.append(q)
            grown.append([list(b) for b in p] + [[element]])
        partial = grown
    return [Partition(n, tuple(tuple(b) for b in p)) for p in partial]
