"""Finite-difference WENO shock-capturing toolkit.

Third-order WENO reconstructions (JS, Z, F3, ES3, ES4 variants) with
1D scalar, 1D Euler, and 2D Euler solvers plus a verification harness
for grid-convergence and critical-point accuracy checks.
"""

from wenokit.indicators import (
    OrderProbe,
    beta_es3,
    beta_es4,
    beta_js,
    measure_order,
    tau_es,
    tau_f3,
    tau_z3,
)
from wenokit.reconstruction import (
    candidates,
    reconstruct_minus,
    reconstruct_plus,
    weno5_reference,
)
from wenokit.weights import SCHEMES, SchemeParams, make_scheme, weights_for

__all__ = [
    "OrderProbe",
    "SCHEMES",
    "SchemeParams",
    "beta_es3",
    "beta_es4",
    "beta_js",
    "candidates",
    "make_scheme",
    "measure_order",
    "reconstruct_minus",
    "reconstruct_plus",
    "tau_es",
    "tau_f3",
    "tau_z3",
    "weights_for",
    "weno5_reference",
]

__version__ = "0.1.0"
