"""Quadratically-converging single-state eigensolver.

Each iteration rebuilds, for one target state k, the effective couplings

    y[l] = H[l, k] + sum_{j != k, l} (H[l, j] - c[l] H[k, j]) c[j]

from the previous coefficient column, then updates every coefficient through
the closed-form root of its local quadratic:

    q = d^2 + 4 H[k, l] y[l],        d = H[k, k] - H[l, l]
    c[l] = s * y[l] / ((sqrt(q) + |d|) / 2)        if q >= 0
    c[l] = s                                       if q >= 0, denominator 0
    c[l] = -d / (2 H[k, l])                        if q < 0, H[k, l] != 0

where s is the sign of d, falling back to the sign of k - l when the
diagonal entries are effectively equal.  A negative q with vanishing
H[k, l] cannot be assigned a root and aborts the state.  The whole column
is recomputed from the committed values of the previous iteration and only
committed at the end of the pass, so the update order within a pass does
not matter.  The energy estimate is E = H[k, k] + sum_l H[k, l] c[l].

The method is exact for 2 x 2 blocks, including degenerate diagonals, and
callers are expected to present matrices with non-decreasing diagonals so
that the degenerate tie-break sign(k - l) matches the non-degenerate limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PerturbationSolution, SolveStatus, as_square_matrix


@dataclass(frozen=True)
class IterConfig:
    """Stopping controls for the iterative solver.

    The relative tests compare successive iterates against their half-sum:
    |E - E_prev| <= energy_tol * |E + E_prev| / 2 and the analogous test per
    coefficient with coeff_tol.  zero_gap_threshold decides when a diagonal
    gap counts as degenerate for the sign convention.
    """

    energy_tol: float = 1.0e-10
    coeff_tol: float = 1.0e-10
    max_iterations: int = 10000
    zero_gap_threshold: float = 1.0e-20

    def __post_init__(self) -> None:
        if self.energy_tol <= 0.0 or self.coeff_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


def iterate_solve(
    h, state: int, config: IterConfig | None = None
) -> PerturbationSolution:
    """Solve one eigenpair of h by the quadratic coefficient iteration."""
    a = as_square_matrix(h)
    n = a.shape[0]
    if not 0 <= state < n:
        raise IndexError(f"state {state} outside 0..{n - 1}")
    cfg = config or IterConfig()
    k = state

    diag = np.diag(a).copy()
    gap = diag[k] - diag
    degenerate = np.abs(gap) <= cfg.zero_gap_threshold
    sign = np.where(degenerate, np.sign(k - np.arange(n)), np.sign(gap))
    hk = a[k, :].copy()  # couplings H[k, l]
    hck = a[:, k].copy()  # couplings H[l, k]
    others = np.arange(n) != k

    c = np.zeros(n)  # committed column; entry k implicitly 1, kept 0 here
    energy = diag[k]
    status = SolveStatus.MAX_ITERATIONS_EXCEEDED
    detail: str | None = None
    iterations = 0

    # Divergent states can push intermediates past the floating-point range;
    # the stopping tests below handle inf/nan values correctly, so arithmetic
    # warnings are suppressed rather than surfaced per iteration.
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for iterations in range(1, cfg.max_iterations + 1):
            t1 = a @ c
            t2 = float(hk @ c)
            y = hck + (t1 - diag * c) - c * (t2 - hk * c)

            q = gap * gap + 4.0 * hk * y
            bad = others & (q < 0.0) & (hk == 0.0)
            if np.any(bad):
                status = SolveStatus.ALGORITHM_FAILURE
                detail = "negative discriminant with zero coupling"
                break
            den = 0.5 * (np.sqrt(np.maximum(q, 0.0)) + np.abs(gap))
            root = np.where(den != 0.0, sign * y / np.where(den != 0.0, den, 1.0), sign)
            vertex = -gap / np.where(hk != 0.0, 2.0 * hk, 1.0)
            c_new = np.where(q >= 0.0, root, vertex)
            c_new[k] = 0.0

            coeff_moved = (
                np.abs(c - c_new) - cfg.coeff_tol * 0.5 * np.abs(c + c_new)
            ) > 0.0
            coeff_ok = not bool(np.any(coeff_moved[others]))
            c = c_new
            prev_energy = energy
            energy = diag[k] + float(hk @ c)
            energy_ok = (
                abs(energy - prev_energy)
                <= cfg.energy_tol * 0.5 * abs(energy + prev_energy)
            )
            if coeff_ok and energy_ok:
                status = SolveStatus.CONVERGED
                break

    coefficients = c.copy()
    coefficients[k] = 1.0
    normalized = coefficients / np.linalg.norm(coefficients)
    return PerturbationSolution(
        state=k,
        energy=float(energy),
        coefficients=coefficients,
        normalized_coefficients=normalized,
        iterations=iterations,
        status=status,
        detail=detail,
    )


def iterate_solve_all(h, config: IterConfig | None = None) -> list[PerturbationSolution]:
    """Run iterate_solve for every state of h; failures stay per-state."""
    a = as_square_matrix(h)
    return [iterate_solve(a, k, config) for k in range(a.shape[0])]
