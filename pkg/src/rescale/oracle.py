"""Dense density-matrix substrate: brute-force ground truth at small copy
number for the additivity and regrouping claims made elsewhere in the
package.

Bipartite matrices are stored with every A factor before every B factor;
tensor powers regroup into that ordering, and the partial transpose acts on
the collective B side (log-negativity is symmetric under the choice).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionGuard, DomainError, EigensolverFailure, OutOfRange

DIM_GUARD = 4096
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Bipartite density matrix on a dim_a x dim_b cut."""

    dim_a: int
    dim_b: int
    mat: np.ndarray

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)
        dim = self.dim_a * self.dim_b
        if mat.shape != (dim, dim):
            raise OutOfRange(
                f"matrix shape {mat.shape} does not match dimensions "
                f"{self.dim_a} x {self.dim_b}"
            )
        self.validate()

    def validate(self) -> None:
        """Hermiticity, unit trace, and positivity up to tolerance."""
        mat = self.mat
        herm = np.max(np.abs(mat - mat.conj().T))
        if herm > HERMITICITY_TOL:
            raise DomainError(f"not Hermitian: max |M - M^dag| = {herm:.3e}")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"trace is {tr}, not 1")
        smallest = float(_eigvalsh(mat).min())
        if smallest < PSD_TOL:
            raise DomainError(f"not positive semidefinite: min eigenvalue {smallest:.3e}")

    def __eq__(self, other):
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return (
            self.dim_a == other.dim_a
            and self.dim_b == other.dim_b
            and np.array_equal(self.mat, other.mat)
        )


def _eigvalsh(mat: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc


def bell_diagonal_state(p: float) -> DensityMatrix:
    """p |Psi+><Psi+| + (1-p) |Psi-><Psi-| with |Psi+-> = (|01> +- |10>)/sqrt(2).

    Computational basis order |00>, |01>, |10>, |11>.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must be in [0, 1], got {p}")
    s = 1.0 / np.sqrt(2.0)
    psi_plus = np.array([0.0, s, s, 0.0], dtype=complex)
    psi_minus = np.array([0.0, s, -s, 0.0], dtype=complex)
    mat = p * np.outer(psi_plus, psi_plus.conj()) + (1.0 - p) * np.outer(
        psi_minus, psi_minus.conj()
    )
    return DensityMatrix(2, 2, mat)


def isotropic_state(d: int, fidelity: float) -> DensityMatrix:
    """Mixture of the d-dimensional maximally entangled projector with its
    orthogonal complement, weighted by the fidelity."""
    if d < 2:
        raise OutOfRange(f"local dimension must be >= 2, got {d}")
    if not 0.0 <= fidelity <= 1.0:
        raise OutOfRange(f"fidelity must be in [0, 1], got {fidelity}")
    phi = np.zeros(d * d, dtype=complex)
    phi[:: d + 1] = 1.0 / np.sqrt(d)
    proj = np.outer(phi, phi.conj())
    rest = np.eye(d * d, dtype=complex) - proj
    mat = fidelity * proj + (1.0 - fidelity) / (d * d - 1) * rest
    return DensityMatrix(d, d, mat)


def random_state(dim_a: int, dim_b: int, rng: np.random.Generator) -> DensityMatrix:
    """Haar-ish random full-rank state: normalized A A^dag with Gaussian A."""
    dim = dim_a * dim_b
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    mat = a @ a.conj().T
    mat /= mat.trace()
    return DensityMatrix(dim_a, dim_b, mat)


def tensor_power(rho: DensityMatrix, n: int) -> DensityMatrix:
    """n-fold Kronecker power regrouped to the (A...A | B...B) cut."""
    if n < 1:
        raise OutOfRange(f"power must be >= 1, got {n}")
    dim_total = (rho.dim_a * rho.dim_b) ** n
    if dim_total > DIM_GUARD:
        raise DimensionGuard(
            f"tensor power dimension {dim_total} exceeds guard {DIM_GUARD}"
        )
    mat = rho.mat
    for _ in range(n - 1):
        mat = np.kron(mat, rho.mat)
    da, db = rho.dim_a, rho.dim_b
    # row index is (a1, b1, ..., an, bn); pull the a's in front of the b's
    axes = [da, db] * n
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    tensor = mat.reshape(axes + axes)
    tensor = tensor.transpose(perm + [p + 2 * n for p in perm])
    return DensityMatrix(da**n, db**n, tensor.reshape(dim_total, dim_total))


def partial_transpose(rho: DensityMatrix) -> np.ndarray:
    """Transpose on the B subsystem. Involutive; Hermitian but in general
    not positive, so the result is a bare array, not a DensityMatrix."""
    da, db = rho.dim_a, rho.dim_b
    tensor = rho.mat.reshape(da, db, da, db)
    return tensor.transpose(0, 3, 2, 1).reshape(da * db, da * db)


def log_negativity(rho: DensityMatrix) -> float:
    """log2 of the trace norm of the partial transpose, clamped at 0."""
    eigs = _eigvalsh(partial_transpose(rho))
    return max(0.0, float(np.log2(np.abs(eigs).sum())))


@dataclass(frozen=True)
class AdditivityReport:
    """Log-negativity of rho^(tensor n) against the linear extrapolation."""

    values: tuple[tuple[int, float], ...]
    max_deviation_from_linear: float


def additivity_probe(rho: DensityMatrix, n_max: int) -> AdditivityReport:
    """Direct log-negativity for n = 1..n_max versus n times the n=1 value."""
    if n_max < 1:
        raise OutOfRange(f"n_max must be >= 1, got {n_max}")
    if (rho.dim_a * rho.dim_b) ** n_max > DIM_GUARD:
        raise DimensionGuard(
            f"n_max={n_max} would need dimension "
            f"{(rho.dim_a * rho.dim_b) ** n_max} > {DIM_GUARD}"
        )
    values = []
    for n in range(1, n_max + 1):
        values.append((n, log_negativity(tensor_power(rho, n))))
    base = values[0][1]
    deviation = max(abs(v - n * base) for n, v in values)
    return AdditivityReport(tuple(values), deviation)
