"""Nonlinear repair schemes for prime-field Reed-Solomon codes."""

from ._core import (
    BudgetExceeded,
    RepairError,
    Scheme,
    bounds,
    calibrate,
    encode,
    halved,
    improved_bound_consistency,
    messages,
    repair,
    run,
    search,
    toy,
    validate,
)

__all__ = [
    "BudgetExceeded",
    "RepairError",
    "Scheme",
    "bounds",
    "calibrate",
    "encode",
    "halved",
    "improved_bound_consistency",
    "messages",
    "repair",
    "run",
    "search",
    "toy",
    "validate",
]
