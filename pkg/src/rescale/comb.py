"""Enumerative primitives: integer compositions, exact binomials, and
Fibonacci polynomials.

Coefficients stay exact integers; floating point enters only when a
polynomial is evaluated.
"""

from __future__ import annotations

import math

from .errors import OutOfRange

MAX_COMPOSITION_TOTAL = 64
MAX_BINOMIAL_N = 64
MAX_FIB_INDEX = 90


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n. Guarded at n <= 64."""
    if n < 0 or k < 0:
        raise OutOfRange("binomial arguments must be non-negative")
    if n > MAX_BINOMIAL_N:
        raise OutOfRange(f"binomial overflow guard: n={n} exceeds {MAX_BINOMIAL_N}")
    return math.comb(n, k)


def compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    """All ordered sums of `total` into `parts` strictly positive parts.

    Returned in lexicographic order; the count is binomial(total-1, parts-1).
    """
    if total < 1 or total > MAX_COMPOSITION_TOTAL:
        raise OutOfRange(
            f"total must be in 1..{MAX_COMPOSITION_TOTAL}, got {total}"
        )
    if parts < 1 or parts > total:
        raise OutOfRange(f"parts must be in 1..{total}, got {parts}")

    out: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        # leave at least 1 for each later slot
        for first in range(1, remaining - slots + 2):
            extend(prefix + (first,), remaining - first, slots - 1)

    extend((), total, parts)
    return out


def fibonacci_poly(n: int, xi: float) -> float:
    """Value of the n-th Fibonacci polynomial at xi.

    Evaluates the closed binomial sum
        F_n(xi) = sum_j C(n-j-1, j) * xi**(n-2j-1),  j = 0..floor((n-1)/2),
    which satisfies F_n = xi*F_{n-1} + F_{n-2} with F_0 = 0, F_1 = 1.
    The coefficient route in fibonacci_poly_coeffs is an independent
    cross-check built from the recurrence instead.
    """
    if n < 0 or n > MAX_FIB_INDEX:
        raise OutOfRange(f"index must be in 0..{MAX_FIB_INDEX}, got {n}")
    if n == 0:
        return 0.0
    acc = 0.0
    for j in range((n - 1) // 2 + 1):
        acc += math.comb(n - j - 1, j) * xi ** (n - 2 * j - 1)
    return acc


def fibonacci_poly_coeffs(n: int) -> list[int]:
    """Integer coefficients of the n-th Fibonacci polynomial, ascending powers.

    Built by unrolling the recurrence on integer coefficient lists.
    """
    if n < 0 or n > MAX_FIB_INDEX:
        raise OutOfRange(f"index must be in 0..{MAX_FIB_INDEX}, got {n}")
    if n == 0:
        return [0]
    prev, cur = [0], [1]  # F_0, F_1
    for _ in range(n - 1):
        nxt = [0] + cur  # multiply by xi
        for i, c in enumerate(prev):
            nxt[i] += c
        prev, cur = cur, nxt
    return cur


def eval_poly(coeffs, x: float) -> float:
    """Horner evaluation of ascending-power coefficients."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
