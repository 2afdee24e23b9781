"""Finite-dimensional PT-symmetric matrix Hamiltonians."""

from ._ptmat import (
    BrokenPhaseError,
    Error,
    ExceptionalPointError,
    InconclusiveError,
    InvalidArgument,
    NumericalError,
    PTSystem,
    SingularMatrixError,
    analytic,
    build_c_operator,
    classify_matrix,
    classify_phase,
    count_parity_params,
    cpt_inner,
    evolve,
    make_parity,
    nonunitarity_demo,
    parameter_table,
    random_pt_system,
    unitarity_trace,
)

__version__ = "0.1.0"

__all__ = [
    "BrokenPhaseError",
    "Error",
    "ExceptionalPointError",
    "InconclusiveError",
    "InvalidArgument",
    "NumericalError",
    "PTSystem",
    "SingularMatrixError",
    "analytic",
    "build_c_operator",
    "classify_matrix",
    "classify_phase",
    "count_parity_params",
    "cpt_inner",
    "evolve",
    "make_parity",
    "nonunitarity_demo",
    "parameter_table",
    "random_pt_system",
    "unitarity_trace",
]
