"""Large-N one-shot-distillation closed forms and the square-root growth family.

All logarithms are base 2 and values are in ebits. The O(log N) remainder of
the underlying asymptotics is dropped throughout, so every result here
describes the large-N regime; callers own that caveat.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DegenerateReference, DomainError, OutOfRange

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Mixing weight p between the two odd-parity Bell states, plus the
    distillation error tolerance."""

    p: float
    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise OutOfRange(f"p must be in [0, 1], got {self.p}")
        if not 0.0 < self.epsilon < 1.0:
            raise OutOfRange(f"epsilon must be in (0, 1), got {self.epsilon}")


@dataclass(frozen=True)
class SqrtNMeasure:
    """Total resource F_coef*N + G_coef*sqrt(N)."""

    F_coef: float
    G_coef: float

    def __post_init__(self):
        if not (math.isfinite(self.F_coef) and math.isfinite(self.G_coef)):
            raise OutOfRange("coefficients must be finite")

    def total(self, copies: float) -> float:
        return self.F_coef * copies + self.G_coef * math.sqrt(copies)


def binary_entropy(p: float) -> float:
    """Base-2 entropy of a bit; 0*log(0) reads as 0."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"probability must be in [0, 1], got {p}")
    acc = 0.0
    if p > 0.0:
        acc -= p * math.log2(p)
    if p < 1.0:
        acc -= (1.0 - p) * math.log2(1.0 - p)
    return acc


def normal_cdf(z: float) -> float:
    """Standard normal CDF through the complementary error function."""
    return 0.5 * math.erfc(-z / _SQRT2)


def inv_normal_cdf(q: float) -> float:
    """Inverse standard normal CDF.

    Rational tail approximation (|error| < 4.5e-4) polished by Newton steps
    against normal_cdf; the result satisfies |Phi(z) - q| at machine level,
    comfortably inside the 1e-9 target.
    """
    if not 0.0 < q < 1.0:
        raise OutOfRange(f"quantile must be strictly inside (0, 1), got {q}")
    if q == 0.5:
        return 0.0
    tail = min(q, 1.0 - q)
    t = math.sqrt(-2.0 * math.log(tail))
    num = (0.010328 * t + 0.802853) * t + 2.515517
    den = ((0.001308 * t + 0.189269) * t + 1.432788) * t + 1.0
    z = t - num / den
    if q < 0.5:
        z = -z
    for _ in range(3):
        pdf = math.exp(-0.5 * z * z) * _INV_SQRT_2PI
        if pdf == 0.0:
            break
        z -= (normal_cdf(z) - q) / pdf
    return z


def osd_bell(params: BellDiagonalParams, copies: int) -> float:
    """Two-term distillable-ebit count for the Bell-diagonal family.

    N*(1 - h(p)) plus the sqrt(N) Gaussian-fluctuation correction
    sqrt(N*p*(1-p)) * |log2((1-p)/p)| * Phi^{-1}(epsilon). At p in {0, 1}
    the fluctuation term vanishes identically.
    """
    if copies < 1:
        raise OutOfRange(f"copies must be >= 1, got {copies}")
    p = params.p
    lead = copies * (1.0 - binary_entropy(p))
    if p == 0.0 or p == 1.0:
        return lead
    fluct = (
        math.sqrt(copies * p * (1.0 - p))
        * abs(math.log2((1.0 - p) / p))
        * inv_normal_cdf(params.epsilon)
    )
    return lead + fluct


def sqrtn_2e_form(ref_lo: int, ref_hi: int) -> Callable[[float, float, float], float]:
    """Two-reference evaluator for measures growing as F*N + G*sqrt(N).

    Returns evaluate(e, f, N): the value at N of the unique F*N + G*sqrt(N)
    curve through (ref_lo, e) and (ref_hi, f). Reproduces e at N = ref_lo
    and f at N = ref_hi exactly. e and f are free inputs; no consistency
    with an underlying (F, G) is assumed.
    """
    if ref_lo == ref_hi:
        raise DegenerateReference(f"reference copies must differ, got {ref_lo} twice")
    if not 0 < ref_lo < ref_hi:
        raise DomainError(
            f"references must satisfy 0 < lo < hi, got ({ref_lo}, {ref_hi})"
        )
    s_lo = math.sqrt(ref_lo)
    s_hi = math.sqrt(ref_hi)

    def evaluate(e: float, f: float, copies: float) -> float:
        s_n = math.sqrt(copies)
        return (s_n / (s_hi - s_lo)) * (
            ((s_hi - s_n) / s_lo) * e + ((s_n - s_lo) / s_hi) * f
        )

    return evaluate


def _sqrtn_2e_alt(ref_lo: int, ref_hi: int, e: float, f: float, copies: float) -> float:
    """Algebraically equivalent arrangement with a 1/sqrt(N) denominator.

    Loses precision as N grows; kept only as a cross-check against
    sqrtn_2e_form.
    """
    s_n = math.sqrt(copies)
    num = (ref_hi - math.sqrt(ref_hi) * s_n) * e + (math.sqrt(ref_lo) * s_n - ref_lo) * f
    den = math.sqrt(ref_lo * ref_hi) * (
        math.sqrt(ref_hi / copies) - math.sqrt(ref_lo / copies)
    )
    return num / den


@dataclass(frozen=True)
class RegroupReport:
    violation: float
    passed: bool


def check_sqrtn_scalable(
    ref_lo: int,
    ref_hi: int,
    copies: int,
    regroup: int,
    e: float,
    f: float,
    rel_tol: float = 1e-10,
) -> RegroupReport:
    """Numeric check that the square-root growth form survives regrouping.

    Compares the direct value at N against the value at N/K computed from
    the inner evaluations at K*ref_lo and K*ref_hi, with the same outer
    references (ref_lo, ref_hi). K must divide N.
    """
    if regroup < 1:
        raise DomainError(f"K must be a positive integer, got {regroup}")
    if copies < 1 or copies % regroup:
        raise DomainError(f"K={regroup} does not divide N={copies}")
    form = sqrtn_2e_form(ref_lo, ref_hi)
    direct = form(e, f, copies)
    inner_lo = form(e, f, regroup * ref_lo)
    inner_hi = form(e, f, regroup * ref_hi)
    regrouped = form(inner_lo, inner_hi, copies // regroup)
    diff = abs(direct - regrouped)
    violation = 0.0 if diff == 0.0 else diff / max(abs(direct), abs(regrouped), 1e-12)
    return RegroupReport(violation=violation, passed=violation <= rel_tol)


def osd_positivity(ref_lo: int, ref_hi: int, copies: int, e: float, f: float) -> bool:
    """Sign test for the combination (M - sqrt(M*N))*e + (sqrt(L*N) - L)*f.

    Non-negativity of this combination is the physical-consistency condition
    for a non-negative distillable yield at N copies.
    """
    if not 0 < ref_lo < ref_hi <= copies:
        raise DomainError(
            f"need 0 < lo < hi <= N, got ({ref_lo}, {ref_hi}, {copies})"
        )
    term = (ref_hi - math.sqrt(ref_hi * copies)) * e + (
        math.sqrt(ref_lo * copies) - ref_lo
    ) * f
    return term >= 0.0
