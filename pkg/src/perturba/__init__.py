"""Perturbation-theory eigensolvers for truncated oscillator Hamiltonians.

Two single-state solvers (an order-by-order expansion and a quadratically
converging coefficient iteration) plus the benchmark matrices, oscillator
matrix elements and run harness used to exercise them.
"""

from .linalg import (
    DimensionMismatchError,
    EigenSolution,
    NoConvergenceError,
    NonSymmetricError,
    PerturbationSolution,
    SolveStatus,
    jacobi_diagonalize,
    read_matrix_text,
    residual_norm,
    symmetry_defect,
    write_matrix_text,
)
from .oscillator import (
    ElementTable,
    IndexOutOfRangeError,
    QuadratureScheme,
    build_element_table,
    cached_element_table,
    lambda_xi3_element,
    lambda_xi_element,
    wavefunction_value,
    write_table_csv,
    xi2_element,
    xi3_element,
    xi4_element,
    xi_element,
)
from .rspt import OrderHistory, RsptConfig, rspt_solve, rspt_solve_all
from .iterative import IterConfig, iterate_solve, iterate_solve_all
from .hamiltonians import (
    BasisMap2D,
    FgReport,
    StructureViolationError,
    SyntheticSpec,
    TableTooSmallError,
    a2_from_quantum_number,
    build_2d_synthetic,
    build_2d_true,
    build_linear_synthetic,
    build_linear_true,
    build_quartic_synthetic,
    build_quartic_true,
    build_synthetic,
    default_quartic_a2,
    verify_fg_structure,
)
from .experiments import (
    BetaOutOfRangeError,
    NotTabulatedError,
    ProblemInstance,
    QUARTIC_BENCHMARK,
    RunResult,
    StateRow,
    UnsupportedProblemError,
    backtransform_wavefunction,
    convergence_frontier,
    exact_2d_energy,
    exact_linear_energy,
    quartic_reference_energy,
    run_instance,
    write_results_csv,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
