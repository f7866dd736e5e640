"""Patch-reconstruction discontinuous Galerkin solver."""

from ._core import (
    Error,
    GeometryError,
    InvalidInput,
    Mesh,
    Solution,
    SolverError,
    UnisolvenceError,
    default_patch_size,
    fitted_rate,
    make_mesh,
    observed_rate,
    rates,
    read_mesh,
    run_convergence,
    solve,
)

__all__ = [
    "Error",
    "GeometryError",
    "InvalidInput",
    "Mesh",
    "Solution",
    "SolverError",
    "UnisolvenceError",
    "default_patch_size",
    "fitted_rate",
    "make_mesh",
    "observed_rate",
    "rates",
    "read_mesh",
    "run_convergence",
    "solve",
]
