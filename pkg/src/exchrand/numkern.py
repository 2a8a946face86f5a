"""Sign-tracked log-space kernels for factorial-family quantities.

Rising/falling factorials and generalized binomial coefficients show up with
negative real bases, so every result is carried as a sign together with the
log of its absolute value and only exponentiated when a final probability is
needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "SignedLogValue",
    "rising",
    "falling",
    "gen_binom",
    "gamma_ratio_asymptotic",
]


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as sign in {-1, 0, +1} plus log of magnitude.

    ``sign == 0`` represents exactly zero; ``logmag`` is meaningless then.
    """

    sign: int
    logmag: float

    @classmethod
    def from_real(cls, x: float) -> "SignedLogValue":
        if x == 0.0:
            return cls(0, 0.0)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    def to_real(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0, 0.0)
        return SignedLogValue(self.sign * other.sign, self.logmag + other.logmag)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by a signed-log zero")
        if self.sign == 0:
            return SignedLogValue(0, 0.0)
        return SignedLogValue(self.sign * other.sign, self.logmag - other.logmag)

    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.logmag)


SLV_ONE = SignedLogValue(1, 0.0)
SLV_ZERO = SignedLogValue(0, 0.0)


def rising(x: float, n: int) -> SignedLogValue:
    """Rising factorial x(x+1)...(x+n-1) in signed-log form.

    Positive x takes the log-gamma fast path (all factors positive); any other
    x multiplies the factors one by one with sign tracking.  A factor that is
    exactly zero yields the exact zero value.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return SLV_ONE
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x}")
    if x > 0:
        return SignedLogValue(1, math.lgamma(x + n) - math.lgamma(x))
    sign = 1
    logmag = 0.0
    for j in range(n):
        factor = x + j
        if factor == 0.0:
            return SLV_ZERO
        if factor < 0.0:
            sign = -sign
        logmag += math.log(abs(factor))
    return SignedLogValue(sign, logmag)


def falling(x: float, n: int) -> SignedLogValue:
    """Falling factorial x(x-1)...(x-n+1), computed as (-1)^n * rising(-x, n)."""
    r = rising(-x, n)
    if n % 2 == 0:
        return r
    return -r


def gen_binom(x: float, m: int) -> SignedLogValue:
    """Generalized binomial coefficient C(x, m) = falling(x, m) / m! for real x."""
    f = falling(x, m)
    if f.sign == 0:
        return SLV_ZERO
    return SignedLogValue(f.sign, f.logmag - math.lgamma(m + 1))


def gamma_ratio_asymptotic(m: float, r: float, s: float) -> float:
    """Leading-order approximation m**(r - s) of Gamma(m+r)/Gamma(m+s)."""
    if not (m > 0):
        raise DomainError(f"m must be positive, got {m}")
    if m + r <= 0 or m + s <= 0:
        raise DomainError(f"gamma arguments must be positive: m+r={m + r}, m+s={m + s}")
    return m ** (r - s)
