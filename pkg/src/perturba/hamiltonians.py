"""Benchmark Hamiltonians in the oscillator basis, true and transformed.

Three families are covered, each with a bare (true) matrix and a synthetic
variant obtained from a similarity transform exp(S) H exp(-S) that leaves
the spectrum untouched while reshaping the matrix for perturbative solvers:

* linear:  H = H0 + beta * xi, transform generator S = a * xi
* quartic: H = H0 + beta * xi^4, generator S = a2 * xi^2 + a3 * |xi|^3
           with a3 = sqrt(2 beta) / 3 chosen to cancel the quartic growth
* osc2d:   two coupled unit oscillators H = H0 + beta * xi1 * xi2,
           generator S = a * xi1 * xi2

The transformed matrix decomposes as H + F - G where F = S H0 - H0 S is
anti-symmetric and G = (dS/dxi)^2 / 2 is symmetric with positive diagonal;
verify_fg_structure checks the decomposition entry by entry.

All builders emit non-decreasing diagonals, which the iterative solver's
degenerate tie-break relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .oscillator import (
    ElementTable,
    cached_element_table,
    xi2_element,
    xi4_element,
    xi_element,
)


class TableTooSmallError(ValueError):
    pass


class StructureViolationError(ValueError):
    pass


@dataclass(frozen=True)
class SyntheticSpec:
    """Transform parameters for one synthetic Hamiltonian.

    a applies to the linear and osc2d generators; a2 to the quartic one,
    whose cubic coefficient a3 is fixed by beta.
    """

    problem: str
    beta: float
    a: float | None = None
    a2: float | None = None

    def __post_init__(self) -> None:
        if self.problem not in ("linear", "quartic", "osc2d"):
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.problem in ("linear", "osc2d"):
            if self.a is None or self.a2 is not None:
                raise ValueError(f"{self.problem} transform takes a only")
        else:
            if self.a2 is None or self.a is not None:
                raise ValueError("quartic transform takes a2 only")
        if self.beta < 0.0:
            raise ValueError("beta must be non-negative")

    @property
    def a3(self) -> float:
        if self.problem != "quartic":
            raise ValueError("a3 is defined for the quartic transform only")
        return math.sqrt(2.0 * self.beta) / 3.0


def build_linear_true(beta: float, dim: int) -> np.ndarray:
    """H0 + beta * xi on dim states: diagonal n + 1/2, single coupling band."""
    if dim < 1:
        raise ValueError("dim must be positive")
    h = np.diag(np.arange(dim) + 0.5)
    for n in range(dim - 1):
        h[n, n + 1] = h[n + 1, n] = beta * xi_element(n, n + 1)
    return h


def build_linear_synthetic(beta: float, a: float, dim: int) -> np.ndarray:
    """Transformed linear problem.

    Diagonal entries are n + 0.5 - a * a / 2 and the two bands carry
    (beta + a) above and (beta - a) below the diagonal, so a = beta empties
    the lower triangle and puts the exact energies on the diagonal.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    h = np.zeros((dim, dim))
    for n in range(dim):
        h[n, n] = (n + 0.5) - 0.5 * a * a
    for n in range(dim - 1):
        x = xi_element(n, n + 1)
        h[n, n + 1] = (beta + a) * x
        h[n + 1, n] = (beta - a) * x
    return h


def build_quartic_true(beta: float, dim: int) -> np.ndarray:
    """H0 + beta * xi^4 on dim states; bands at |n - m| in {0, 2, 4}."""
    if dim < 1:
        raise ValueError("dim must be positive")
    h = np.zeros((dim, dim))
    for n in range(dim):
        h[n, n] = (n + 0.5) + beta * xi4_element(n, n)
    for k in (2, 4):
        for n in range(dim - k):
            v = beta * xi4_element(n, n + k)
            h[n, n + k] = h[n + k, n] = v
    return h


def default_quartic_a2(beta: float) -> float:
    """Global quadratic transform coefficient used for the benchmark sweep."""
    return -0.35 if beta <= 0.5 else -0.375


def build_quartic_synthetic(
    beta: float, a2: float, dim: int, lxi3: ElementTable | None = None
) -> np.ndarray:
    """Transformed quartic problem.

    H[n, m] = (n + 1/2) delta - (2 a2 + n - m) a2 <n|xi^2|m>
                              - (6 a2 + n - m) a3 <n||xi|^3|m>

    with a3 = sqrt(2 beta) / 3.  The |xi|^3 elements come from lxi3, which
    must cover indices up to dim - 1 (built on demand when omitted).
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    if lxi3 is None:
        lxi3 = cached_element_table("lambda_xi3", dim - 1)
    if lxi3.tag != "lambda_xi3":
        raise ValueError(f"expected a lambda_xi3 table, got {lxi3.tag!r}")
    if lxi3.max_n < dim - 1:
        raise TableTooSmallError(
            f"table covers 0..{lxi3.max_n}, need 0..{dim - 1}"
        )
    a3 = math.sqrt(2.0 * beta) / 3.0
    idx = np.arange(dim)
    nm = idx[:, None] - idx[None, :]
    x2 = np.zeros((dim, dim))
    for k in (0, 2):
        for n in range(dim - k):
            v = xi2_element(n, n + k)
            x2[n, n + k] = v
            x2[n + k, n] = v
    l3 = lxi3.values[:dim, :dim]
    h = np.diag(idx + 0.5) - (2.0 * a2 + nm) * a2 * x2 - (6.0 * a2 + nm) * a3 * l3
    return h


def a2_from_quantum_number(n: int, lxi3: ElementTable) -> float:
    """Per-state quadratic transform coefficient.

    Balances the second moment of the state's |xi|^3 couplings:
    a2^2 = sum_m (m - n)^2 v(n, m)^2 / (36 sum_m v(n, m)^2), negative root.
    """
    if n < 0 or n > lxi3.max_n:
        raise ValueError(f"state {n} outside table range 0..{lxi3.max_n}")
    row = lxi3.values[n].copy()
    row[n] = 0.0
    m = np.arange(lxi3.max_n + 1)
    num = float(np.sum((m - n) ** 2 * row**2))
    den = 36.0 * float(np.sum(row**2))
    if den == 0.0:
        raise ValueError("state has no off-diagonal |xi|^3 couplings")
    return -math.sqrt(num / den)


@dataclass(frozen=True)
class BasisMap2D:
    """Ordered product basis for two oscillators under a triangular cut.

    Keeps every pair with n1 + n2 <= n_max, ordered by total quanta and then
    by n1, so the unperturbed energies n1 + n2 + 1 are non-decreasing.
    """

    n_max: int
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def triangular(cls, n_max: int) -> "BasisMap2D":
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        pairs = tuple(
            (n1, total - n1)
            for total in range(n_max + 1)
            for n1 in range(total + 1)
        )
        return cls(n_max=n_max, pairs=pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def index(self, n1: int, n2: int) -> int:
        total = n1 + n2
        if n1 < 0 or n2 < 0 or total > self.n_max:
            raise ValueError(f"({n1}, {n2}) outside the triangular cut {self.n_max}")
        return total * (total + 1) // 2 + n1


def _pair_arrays(basis: BasisMap2D) -> tuple[np.ndarray, np.ndarray]:
    arr = np.array(basis.pairs)
    return arr[:, 0], arr[:, 1]


def build_2d_true(beta: float, n_max: int, basis: BasisMap2D | None = None) -> np.ndarray:
    """Two coupled oscillators H0 + beta * xi1 * xi2 on the triangular basis."""
    basis = basis or BasisMap2D.triangular(n_max)
    n1, n2 = _pair_arrays(basis)
    xi = cached_element_table("xi", basis.n_max).values
    x1 = xi[n1[:, None], n1[None, :]]
    x2 = xi[n2[:, None], n2[None, :]]
    return np.diag(n1 + n2 + 1.0) + beta * x1 * x2


def build_2d_synthetic(
    beta: float, a: float, n_max: int, basis: BasisMap2D | None = None
) -> np.ndarray:
    """Transformed coupled-oscillator problem with generator a * xi1 * xi2.

    Couplings pick up the factor beta + (m1 + m2 - n1 - n2) * a and the
    transform contributes -a^2/2 times the single-mode xi^2 elements on the
    matching-index bands.
    """
    basis = basis or BasisMap2D.triangular(n_max)
    n1, n2 = _pair_arrays(basis)
    xi = cached_element_table("xi", basis.n_max).values
    x2tab = cached_element_table("xi2", basis.n_max).values
    x1 = xi[n1[:, None], n1[None, :]]
    x2 = xi[n2[:, None], n2[None, :]]
    total = n1 + n2
    factor = beta + (total[None, :] - total[:, None]) * a
    same1 = n1[:, None] == n1[None, :]
    same2 = n2[:, None] == n2[None, :]
    g = 0.5 * a * a * (
        x2tab[n1[:, None], n1[None, :]] * same2
        + x2tab[n2[:, None], n2[None, :]] * same1
    )
    return np.diag(total + 1.0) + factor * x1 * x2 - g


@dataclass(frozen=True)
class FgReport:
    """Defect magnitudes from one decomposition check."""

    f_antisymmetry_defect: float
    g_symmetry_defect: float
    min_g_diagonal: float
    reconstruction_defect: float
    central_dim: int


def _transform_f_g(spec: SyntheticSpec, dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """True H, F and G matrices for one transform on dim states."""
    if spec.problem == "linear":
        h = build_linear_true(spec.beta, dim)
        e0 = np.arange(dim) + 0.5
        s = spec.a * cached_element_table("xi", dim - 1).values[:dim, :dim]
        f = (e0[None, :] - e0[:, None]) * s
        g = 0.5 * spec.a**2 * np.eye(dim)
        return h, f, g
    if spec.problem == "quartic":
        h = build_quartic_true(spec.beta, dim)
        e0 = np.arange(dim) + 0.5
        x2 = cached_element_table("xi2", dim - 1).values[:dim, :dim]
        x4 = cached_element_table("xi4", dim - 1).values[:dim, :dim]
        l3 = cached_element_table("lambda_xi3", dim - 1).values[:dim, :dim]
        s = spec.a2 * x2 + spec.a3 * l3
        f = (e0[None, :] - e0[:, None]) * s
        g = 2.0 * spec.a2**2 * x2 + 6.0 * spec.a2 * spec.a3 * l3 + spec.beta * x4
        return h, f, g
    basis = BasisMap2D.triangular(dim)
    n1, n2 = _pair_arrays(basis)
    h = build_2d_true(spec.beta, dim, basis)
    xi = cached_element_table("xi", dim).values
    x2tab = cached_element_table("xi2", dim).values
    s = spec.a * xi[n1[:, None], n1[None, :]] * xi[n2[:, None], n2[None, :]]
    e0 = n1 + n2 + 1.0
    f = (e0[None, :] - e0[:, None]) * s
    same1 = n1[:, None] == n1[None, :]
    same2 = n2[:, None] == n2[None, :]
    g = 0.5 * spec.a**2 * (
        x2tab[n1[:, None], n1[None, :]] * same2
        + x2tab[n2[:, None], n2[None, :]] * same1
    )
    return h, f, g


def build_synthetic(spec: SyntheticSpec, dim: int) -> np.ndarray:
    """Dispatch to the matching synthetic builder.

    dim counts basis states for the 1-D problems and is the triangular cut
    n_max for osc2d.
    """
    if spec.problem == "linear":
        return build_linear_synthetic(spec.beta, spec.a, dim)
    if spec.problem == "quartic":
        return build_quartic_synthetic(spec.beta, spec.a2, dim)
    return build_2d_synthetic(spec.beta, spec.a, dim)


def verify_fg_structure(
    spec: SyntheticSpec,
    dim: int,
    antisymmetry_tol: float = 1.0e-12,
    reconstruction_tol: float = 1.0e-10,
) -> FgReport:
    """Check the H + F - G decomposition of one synthetic matrix.

    F must be anti-symmetric, G symmetric with strictly positive diagonal,
    and H + F - G must reproduce the directly-built synthetic matrix on the
    central block (indices below dim - 4, clear of truncation edges).
    Raises StructureViolationError naming the worst entry on failure.
    """
    h, f, g = _transform_f_g(spec, dim)
    direct = build_synthetic(spec, dim)

    f_defect = float(np.max(np.abs(f + f.T))) if f.size else 0.0
    g_defect = float(np.max(np.abs(g - g.T))) if g.size else 0.0
    min_g_diag = float(np.min(np.diag(g)))
    size = h.shape[0]
    central = max(size - 4, 0)
    delta = np.abs((h + f - g) - direct)[:central, :central]
    recon = float(np.max(delta)) if delta.size else 0.0
    report = FgReport(
        f_antisymmetry_defect=f_defect,
        g_symmetry_defect=g_defect,
        min_g_diagonal=min_g_diag,
        reconstruction_defect=recon,
        central_dim=central,
    )
    if f_defect > antisymmetry_tol:
        ij = np.unravel_index(np.argmax(np.abs(f + f.T)), f.shape)
        raise StructureViolationError(
            f"F fails anti-symmetry at {ij}: defect {f_defect:.3e}"
        )
    if g_defect > antisymmetry_tol:
        ij = np.unravel_index(np.argmax(np.abs(g - g.T)), g.shape)
        raise StructureViolationError(
            f"G fails symmetry at {ij}: defect {g_defect:.3e}"
        )
    if min_g_diag <= 0.0:
        i = int(np.argmin(np.diag(g)))
        raise StructureViolationError(
            f"G diagonal not positive at ({i}, {i}): {min_g_diag:.3e}"
        )
    if recon > reconstruction_tol:
        ij = np.unravel_index(np.argmax(delta), delta.shape)
        raise StructureViolationError(
            f"H + F - G mismatches the direct build at {ij}: defect {recon:.3e}"
        )
    return report
