"""Convex-roof extended negativity."""

from ._core import (
    CrenError,
    cren_isotropic,
    cren_pure,
    cren_werner,
    f_function,
    g_function,
    isotropic_state,
    negativity,
    optimize_cren,
    partial_transpose,
    pure_negativity,
    random_density,
    random_pure,
    read_state,
    schmidt_coefficients,
    sweep_csv,
    validate_density,
    werner_state,
    wootters_concurrence,
    write_family,
)

__all__ = [
    "CrenError",
    "cren_isotropic",
    "cren_pure",
    "cren_werner",
    "f_function",
    "g_function",
    "isotropic_state",
    "negativity",
    "optimize_cren",
    "partial_transpose",
    "pure_negativity",
    "random_density",
    "random_pure",
    "read_state",
    "schmidt_coefficients",
    "sweep_csv",
    "validate_density",
    "werner_state",
    "wootters_concurrence",
    "write_family",
]
