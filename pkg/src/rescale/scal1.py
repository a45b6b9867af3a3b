"""Machinery for measures driven by a single small-copy value.

Three independent routes into the same self-similarity structure live here:
the numeric regrouping-consistency check (check_1s), the composition-chain
evaluator (compose_chain_1s), and the coefficient recursion that transports
truncated Maclaurin series up the copy lattice (maclaurin_coeffs) together
with its first- and second-order closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .comb import compositions
from .errors import (
    DegenerateDenominator,
    DomainError,
    DomainEscape,
    NonPositiveLeadingCoeff,
    NotOnLattice,
    OutOfRange,
    TruncationError,
)
from .types import CopyLattice, lattice_index

MAX_SERIES_ORDER = 16
DEFAULT_REL_TOL = 1e-9
ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class Measure1SFn:
    """An evaluatable map (N, e) -> total resource of N copies.

    Contract: fn(1, e) == e and fn(N, 0) == 0 on the declared domain
    [0, e_max). The lattice says which copy counts the self-similarity
    relations quantify over.
    """

    fn: Callable[[int, float], float]
    lattice: CopyLattice = CopyLattice(1, 2)
    e_max: float = math.inf

    def __call__(self, copies: int, e: float) -> float:
        return self.fn(copies, e)


def additive_family(lattice: CopyLattice = CopyLattice(1, 2)) -> Measure1SFn:
    """E(N, e) = N*e."""
    return Measure1SFn(lambda n, e: n * e, lattice)


def multiplicative_family(
    lam: float, lattice: CopyLattice = CopyLattice(1, 2)
) -> Measure1SFn:
    """E(N, e) = lam**(1-N) * e**N; passes the consistency check for any lam > 0."""
    if lam <= 0:
        raise OutOfRange(f"lam must be positive, got {lam}")
    return Measure1SFn(lambda n, e: lam ** (1 - n) * e**n, lattice)


def triangular_family(lattice: CopyLattice = CopyLattice(1, 2)) -> Measure1SFn:
    """E(N, e) = N(N+1)/2 * e; a plausible-looking family that fails the check."""
    return Measure1SFn(lambda n, e: n * (n + 1) / 2 * e, lattice)


def default_e_grid(e_max: float = math.inf, points: int = 33) -> list[float]:
    """Logarithmically spaced probe points in [1e-6, e_max*(1 - 1e-9)].

    An unbounded domain probes up to 1.0.
    """
    hi = 1.0 if math.isinf(e_max) else e_max * (1.0 - 1e-9)
    lo = min(1e-6, hi / 1e3)
    if points < 2:
        return [hi]
    llo, lhi = math.log10(lo), math.log10(hi)
    return [10 ** (llo + i * (lhi - llo) / (points - 1)) for i in range(points)]


@dataclass(frozen=True)
class Check1SReport:
    """Outcome of a regrouping-consistency probe at one (N, K) pair.

    max_violation is relative (drives `passed`, with an absolute floor of
    1e-12 near zero); max_abs_violation is the raw gap, useful when the two
    sides are O(1) apart.
    """

    passed: bool
    max_violation: float
    max_abs_violation: float
    worst_point: tuple[int, int, float] | None
    worst_values: tuple[float, float] | None
    n_evaluated: int
    skipped: tuple[tuple[float, str], ...] = ()


def check_1s(
    measure: Measure1SFn,
    n_copies: int,
    k_copies: int,
    e_grid: Sequence[float] | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> Check1SReport:
    """Probe |E(N, e) - E(N/K, E(K, e))| over a grid of e values.

    Grid points outside the declared domain, or whose inner value E(K, e)
    escapes it, are skipped and reported rather than guessed at.
    """
    lat = measure.lattice
    for copies in (n_copies, k_copies):
        try:
            lattice_index(lat, copies)
        except NotOnLattice as exc:
            raise DomainError(str(exc)) from exc
    if k_copies >= n_copies:
        raise DomainError(f"K={k_copies} must be smaller than N={n_copies}")
    if n_copies % k_copies:
        raise DomainError(f"K={k_copies} does not divide N={n_copies}")

    grid = default_e_grid(measure.e_max) if e_grid is None else list(e_grid)
    skipped: list[tuple[float, str]] = []
    max_rel = 0.0
    max_abs = 0.0
    worst_point = None
    worst_values = None
    n_evaluated = 0
    for e in grid:
        if not (0.0 <= e < measure.e_max):
            skipped.append((e, "outside declared e-domain"))
            continue
        inner = measure(k_copies, e)
        if not math.isfinite(inner) or not (0.0 <= inner < measure.e_max):
            skipped.append((e, f"inner value E({k_copies}, e)={inner} escapes e-domain"))
            continue
        direct = measure(n_copies, e)
        regrouped = measure(n_copies // k_copies, inner)
        diff = abs(direct - regrouped)
        scale = max(abs(direct), abs(regrouped))
        rel = 0.0 if diff <= ABS_FLOOR else (diff / scale if scale > 0 else math.inf)
        n_evaluated += 1
        max_abs = max(max_abs, diff)
        if rel >= max_rel:
            max_rel = rel
            worst_point = (n_copies, k_copies, e)
            worst_values = (direct, regrouped)
    passed = n_evaluated > 0 and max_rel <= rel_tol
    return Check1SReport(
        passed=passed,
        max_violation=max_rel,
        max_abs_violation=max_abs,
        worst_point=worst_point,
        worst_values=worst_values,
        n_evaluated=n_evaluated,
        skipped=tuple(skipped),
    )


def compose_chain_1s(
    step_fn: Callable[[float], float],
    n_steps: int,
    e: float,
    e_max: float = math.inf,
) -> float:
    """n-fold self-composition of the one-lattice-step map.

    For a consistent measure on a ratio-a lattice this equals the value at
    a**n copies given the single-copy value e.
    """
    if n_steps < 0:
        raise OutOfRange(f"n_steps must be >= 0, got {n_steps}")
    if not math.isfinite(e) or e < 0:
        raise DomainEscape(f"seed {e} is outside [0, {e_max})", stage=0)
    if n_steps > 0 and e >= e_max:
        raise DomainEscape(f"seed {e} is outside [0, {e_max})", stage=0)
    cur = e
    for stage in range(1, n_steps + 1):
        cur = step_fn(cur)
        if not math.isfinite(cur) or cur < 0 or cur >= e_max:
            raise DomainEscape(
                f"value {cur} left [0, {e_max}) at composition stage {stage}",
                stage=stage,
            )
    return cur


@dataclass(frozen=True)
class SeriesPoly1S:
    """Truncated series coefficients d_1..d_J of E(N, e) around e = 0.

    `radius` is an optional nominal convergence radius, carried as metadata
    only; nothing here estimates it.
    """

    copies: int
    coeffs: tuple[float, ...]
    radius: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if self.copies < 1:
            raise OutOfRange(f"copies must be a positive integer, got {self.copies}")
        if not self.coeffs:
            raise OutOfRange("need at least the first-order coefficient")
        if self.copies == 1:
            identity = (1.0,) + (0.0,) * (len(self.coeffs) - 1)
            if self.coeffs != identity:
                raise DomainError("series at one copy must be the identity map")

    def order(self) -> int:
        return len(self.coeffs)

    def evaluate(self, e: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = (acc + c) * e
        return acc


def _recursion_step(
    outer: Sequence[float], inner: Sequence[float], order: int
) -> list[float]:
    """One lattice step of the coefficient recursion.

    new_j = sum_l outer_l * sum over compositions (mu_1..mu_l) of j of
    prod_m inner_{mu_m}; this is the order-j coefficient of outer(inner(e)).
    Truncation at `order` is exact for the kept coefficients because there
    are no constant terms to feed higher orders back down.
    """
    new = []
    for j in range(1, order + 1):
        total = 0.0
        for parts in range(1, j + 1):
            c_outer = outer[parts - 1]
            if c_outer == 0.0:
                continue
            comp_sum = 0.0
            for mu in compositions(j, parts):
                prod = 1.0
                for m in mu:
                    prod *= inner[m - 1]
                comp_sum += prod
            total += c_outer * comp_sum
        new.append(total)
    return new


def maclaurin_coeffs(
    base: SeriesPoly1S, n_steps: int, order: int | None = None
) -> SeriesPoly1S:
    """Series coefficients at base.copies**n_steps copies.

    Starts from the identity at one copy and applies the composition
    recursion once per lattice step, each step consuming the coefficients of
    the one-step function `base`.
    """
    if order is None:
        order = base.order()
    if order < 1 or order > MAX_SERIES_ORDER:
        raise TruncationError(f"order must be in 1..{MAX_SERIES_ORDER}, got {order}")
    if n_steps < 0:
        raise OutOfRange(f"n_steps must be >= 0, got {n_steps}")
    inner = list(base.coeffs[:order]) + [0.0] * max(0, order - base.order())
    cur = [1.0] + [0.0] * (order - 1)
    for _ in range(n_steps):
        cur = _recursion_step(cur, inner, order)
    return SeriesPoly1S(base.copies**n_steps, tuple(cur), radius=base.radius)


def first_order_exponent(d1: float, ratio: int) -> float:
    """Growth exponent nu with d_1(N) = N**nu, from d_1 at the lattice ratio.

    Computed as a natural-log ratio to avoid base-conversion drift.
    """
    if d1 <= 0:
        raise NonPositiveLeadingCoeff(f"first coefficient must be > 0, got {d1}")
    if ratio < 2:
        raise OutOfRange(f"ratio must be >= 2, got {ratio}")
    return math.log(d1) / math.log(ratio)


def second_order_closed_form(
    d1: float, d2: float, ratio: int, copies: int
) -> tuple[float, float]:
    """(d_1(N), d_2(N)) at N = ratio**n from the two base coefficients.

    d_1(N) = d1**n and d_2(N) = (d1**n - 1)/(d1 - 1) * d1**(n-1) * d2.
    Uses the integer lattice index, so the powers stay exact where d1**n is.
    d1 = 1 makes the denominator degenerate; the recursion in
    maclaurin_coeffs still covers that case.
    """
    if d1 <= 0:
        raise NonPositiveLeadingCoeff(f"first coefficient must be > 0, got {d1}")
    if d1 == 1.0:
        raise DegenerateDenominator(
            "d1 at the ratio equals 1; use maclaurin_coeffs for this case"
        )
    n = lattice_index(CopyLattice(1, ratio), copies)
    d1_n = d1**n
    d2_n = (d1_n - 1.0) / (d1 - 1.0) * d1 ** (n - 1) * d2
    return d1_n, d2_n
