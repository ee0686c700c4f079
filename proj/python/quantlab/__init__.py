"""Quantization of the torus: modular data, theta sections, Toeplitz operators
and the Hitchin connection."""

import json

from ._core import (
    ConsistencyError,
    DomainError,
    criteria,
    curve_spectrum,
    expansion_residual,
    loop_defect,
    run,
    s_matrix,
    star_order1,
    theta_gram,
    toeplitz,
    verlinde_dim,
)
from ._core import run_criterion as _run_criterion

__version__ = "0.1.0"


def run_criterion(criterion_id, seed=7):
    """Checks of one acceptance criterion as a dict."""
    return json.loads(_run_criterion(criterion_id, seed))


__all__ = [
    "ConsistencyError",
    "DomainError",
    "criteria",
    "curve_spectrum",
    "expansion_residual",
    "loop_defect",
    "run",
    "run_criterion",
    "s_matrix",
    "star_order1",
    "theta_gram",
    "toeplitz",
    "verlinde_dim",
]
