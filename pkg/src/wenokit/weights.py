"""Nonlinear weights for the five reconstruction schemes.

Each scheme pairs a local-indicator kernel with a global one and an
amplification rule:

  js   d_k / (eps + beta_k)^2
  z    d_k * (1 + c_alpha * (tau_z3 / (beta_js + eps))^2)
  f3   d_k * (1 + tau_f3^(3/2) / (beta_js + eps))
  es3  d_k * (1 + 0.5 * (tau_es / (beta_es3 + eps))^2)
  es4  d_k * (1 + c_alpha * (tau_es / (beta_es4 + eps))^1)

All functions are vectorized over leading axes; a plain five-value
window yields scalars.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from wenokit.indicators import (
    OrderMeasurement,
    OrderProbe,
    beta_es3,
    beta_es4,
    beta_js,
    tau_es,
    tau_f3,
    tau_z3,
)

SCHEME_NAMES = ("js", "z", "f3", "es3", "es4")

# Weight deviations below this (relative to d_k) are roundoff noise and
# excluded from order fits.
_ROUNDOFF_REL = 1e-13


@dataclass(frozen=True)
class SchemeParams:
    """Scheme identifier plus all free constants.

    d are the linear weights of the upwind/downwind candidates; eps is
    the division guard (1e-40 for the Z-type schemes, 1e-6 for js).
    F3's exponents (3/2, 1) are structural and not configurable.
    """

    scheme: str
    d: tuple[float, float] = (1.0 / 3.0, 2.0 / 3.0)
    p: float = 1.0
    c_alpha: float = 1.0
    c_beta: float = 2.0
    eps: float = 1e-40

    def __post_init__(self):
        if self.scheme not in SCHEME_NAMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.p <= 0.0:
            raise ValueError("p must be positive")
        if self.c_alpha <= 0.0:
            raise ValueError("C_alpha must be positive")
        if self.c_beta <= 0.0:
            raise ValueError("C_beta must be positive")
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")
        d0, d1 = self.d
        if not (0.0 < d0 < 1.0 and 0.0 < d1 < 1.0):
            raise ValueError("linear weights must lie in (0, 1)")
        if abs(d0 + d1 - 1.0) > 1e-14:
            raise ValueError("linear weights must sum to 1")


SCHEMES = {
    "js": SchemeParams("js", eps=1e-6),
    "z": SchemeParams("z", p=2.0, c_alpha=1.0),
    "f3": SchemeParams("f3"),
    "es3": SchemeParams("es3", p=2.0, c_alpha=0.5),
    "es4": SchemeParams("es4", p=1.0, c_alpha=1.3, c_beta=2.0),
}


def make_scheme(name: str, **overrides) -> SchemeParams:
    """Look up a scheme by name, optionally overriding its constants."""
    try:
        base = SCHEMES[name]
    except KeyError:
        raise ValueError(f"unknown scheme {name!r}") from None
    return dataclasses.replace(base, **overrides) if overrides else base


def alpha_js(d, beta, eps):
    return d / (eps + beta) ** 2


def alpha_z(d, beta, tau, c_alpha, p, eps):
    """Z-type amplification d*(1 + C_alpha*(tau/(beta+eps))^p); >= d."""
    return d * (1.0 + c_alpha * (tau / (beta + eps)) ** p)


def alpha_f3(d, beta, tau, eps):
    """F3 amplification d*(1 + tau^(3/2)/(beta+eps)); scale-dependent."""
    return d * (1.0 + tau ** 1.5 / (beta + eps))


def normalize(a0, a1):
    """Normalize a pair of non-normalized weights to sum to one."""
    total = a0 + a1
    if np.any(total == 0.0):
        raise ValueError("degenerate weights: both alphas vanish")
    return a0 / total, a1 / total


def weights_for(w, params: SchemeParams):
    """Normalized nonlinear weights of a scheme on a stencil window."""
    w = np.asarray(w, dtype=float)
    d0, d1 = params.d
    if params.scheme == "js":
        b0, b1 = beta_js(w)
        a0 = alpha_js(d0, b0, params.eps)
        a1 = alpha_js(d1, b1, params.eps)
    elif params.scheme == "z":
        b0, b1 = beta_js(w)
        t = tau_z3(w)
        a0 = alpha_z(d0, b0, t, params.c_alpha, params.p, params.eps)
        a1 = alpha_z(d1, b1, t, params.c_alpha, params.p, params.eps)
    elif params.scheme == "f3":
        b0, b1 = beta_js(w)
        t = tau_f3(w)
        a0 = alpha_f3(d0, b0, t, params.eps)
        a1 = alpha_f3(d1, b1, t, params.eps)
    elif params.scheme == "es3":
        b0, b1 = beta_es3(w)
        t = tau_es(w)
        a0 = alpha_z(d0, b0, t, params.c_alpha, params.p, params.eps)
        a1 = alpha_z(d1, b1, t, params.c_alpha, params.p, params.eps)
    else:  # es4
        b0, b1 = beta_es4(w, params.c_beta)
        t = tau_es(w)
        a0 = alpha_z(d0, b0, t, params.c_alpha, params.p, params.eps)
        a1 = alpha_z(d1, b1, t, params.c_alpha, params.p, params.eps)
    return normalize(a0, a1)


def deviation_order(probe: OrderProbe, params: SchemeParams) -> OrderMeasurement:
    """Empirical convergence order of max_k |omega_k - d_k| on a probe.

    Values that have converged to roundoff (below 1e-13 * d_k) are
    excluded from the slope fit; if fewer than two usable levels remain
    the measurement is reported as "roundoff".
    """
    floor = _ROUNDOFF_REL * max(params.d)
    usable_dx, usable_vals, values = [], [], []
    for dx in probe.dx_seq:
        w0, w1 = weights_for(probe.window(dx), params)
        dev = max(abs(float(w0) - params.d[0]), abs(float(w1) - params.d[1]))
        values.append(dev)
        if dev > floor:
            usable_dx.append(dx)
            usable_vals.append(dev)
    if len(usable_vals) < 2:
        return OrderMeasurement(tuple(values), (), None, None, "roundoff")
    if any(v == 0.0 for v in usable_vals):
        return OrderMeasurement(tuple(values), (), None, None, "undefined")
    orders = tuple(np.log2(a / b) for a, b in zip(usable_vals, usable_vals[1:]))
    order = orders[-1]
    coeff = usable_vals[-1] / usable_dx[-1] ** order
    return OrderMeasurement(tuple(values), orders, order, coeff)
