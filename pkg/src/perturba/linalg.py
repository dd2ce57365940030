"""Dense symmetric eigensolver and matrix utilities.

The Jacobi diagonalizer here is deliberately self-contained: it serves as the
reference oracle the perturbation solvers are checked against, so it must not
share any code path with them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class SolveStatus(enum.Enum):
    """Outcome of a single-state perturbation solve."""

    CONVERGED = "converged"
    MAX_ITERATIONS_EXCEEDED = "max_iterations_exceeded"
    ALGORITHM_FAILURE = "algorithm_failure"


class DimensionMismatchError(ValueError):
    pass


class NonSymmetricError(ValueError):
    pass


class NoConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class EigenSolution:
    """Full spectrum of a symmetric matrix.

    eigenvalues are ascending; eigenvectors[:, i] belongs to eigenvalues[i]
    and the columns are orthonormal.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class PerturbationSolution:
    """Single-state result from either perturbation solver.

    coefficients is the mixing vector with coefficients[state] fixed at 1;
    normalized_coefficients is the same vector scaled to unit length.
    detail carries a short failure reason when status is not CONVERGED.
    """

    state: int
    energy: float
    coefficients: np.ndarray
    normalized_coefficients: np.ndarray
    iterations: int
    status: SolveStatus
    detail: str | None = None
    history: "object | None" = field(default=None, repr=False, compare=False)

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED


def as_square_matrix(h) -> np.ndarray:
    """Validate and return h as a square float64 array."""
    a = np.asarray(h, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite entries")
    return a


def symmetry_defect(h) -> float:
    """Largest absolute difference |h[i,j] - h[j,i]| over all entries."""
    a = as_square_matrix(h)
    if a.shape[0] == 0:
        return 0.0
    return float(np.max(np.abs(a - a.T)))


def residual_norm(h, energy: float, coefficients) -> float:
    """Relative eigenpair defect ||H c - E c|| / ||c||."""
    a = as_square_matrix(h)
    c = np.asarray(coefficients, dtype=float)
    if c.shape != (a.shape[0],):
        raise DimensionMismatchError(
            f"coefficient vector of length {c.shape} does not fit matrix of dim {a.shape[0]}"
        )
    nrm = float(np.linalg.norm(c))
    if nrm == 0.0:
        raise ValueError("coefficient vector is zero")
    # Coefficients from a diverged solve can overflow; the caller only needs
    # a finite-or-inf defect number, not per-entry arithmetic warnings.
    with np.errstate(over="ignore", invalid="ignore"):
        return float(np.linalg.norm(a @ c - energy * c) / nrm)


def jacobi_diagonalize(
    h,
    tol: float = 1.0e-12,
    max_sweeps: int = 50,
    symmetry_tol: float = 1.0e-12,
) -> EigenSolution:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run over all (p, q) pairs in row order; a rotation is skipped when
    the target entry is already negligible against the diagonal. Iteration
    stops once the Frobenius norm of the off-diagonal part drops below tol
    (scaled by the matrix norm).

    Raises NonSymmetricError for input with symmetry defect above
    symmetry_tol and NoConvergenceError if max_sweeps sweeps do not reach
    the target.
    """
    a = as_square_matrix(h).copy()
    n = a.shape[0]
    if symmetry_defect(a) > symmetry_tol:
        raise NonSymmetricError(
            f"symmetry defect {symmetry_defect(a):.3e} exceeds {symmetry_tol:.1e}"
        )
    v = np.eye(n)
    if n < 2:
        return EigenSolution(eigenvalues=np.diag(a).copy(), eigenvectors=v)

    scale = max(float(np.linalg.norm(a)), 1.0)

    def offnorm() -> float:
        off = a - np.diag(np.diag(a))
        return float(np.linalg.norm(off))

    for _ in range(max_sweeps):
        if offnorm() <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1.0e-300:
                    continue
                # skip entries that can no longer move the off-norm
                if abs(apq) <= 0.5 * tol * scale / n:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    if offnorm() > tol * scale:
        raise NoConvergenceError(
            f"off-diagonal norm {offnorm():.3e} after {max_sweeps} sweeps"
        )

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return EigenSolution(eigenvalues=eigenvalues[order], eigenvectors=v[:, order])


def write_matrix_text(h, stream) -> None:
    """Write a matrix in the plain text exchange format.

    First line is the dimension; each following line holds one row of
    space-separated values at 17 significant digits.
    """
    a = as_square_matrix(h)
    stream.write(f"{a.shape[0]}\n")
    for row in a:
        stream.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def read_matrix_text(stream) -> np.ndarray:
    """Inverse of write_matrix_text."""
    first = stream.readline()
    if not first:
        raise ValueError("empty matrix stream")
    n = int(first.strip())
    rows = []
    for i in range(n):
        line = stream.readline()
        if not line:
            raise ValueError(f"expected {n} rows, stream ended after {i}")
        row = [float(tok) for tok in line.split()]
        if len(row) != n:
            raise DimensionMismatchError(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(row)
    return np.array(rows, dtype=float)
