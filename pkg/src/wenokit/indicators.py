"""Local and global smoothness indicators on five-point stencil windows.

Every kernel is purely algebraic in the window values: the grid spacing
never enters, so indicator(s*w) = s^2 * indicator(w) holds exactly and
adding a constant to the window leaves the value unchanged (up to
floating-point cancellation).  Windows carry the five values at offsets
-2..+2 from the center cell in their last axis; the three-point kernels
only read the inner slots.

The order-measurement probe samples an indicator on a refinement ladder
with the critical point held at a fixed fractional offset from the
center cell, and reports the empirical order from successive log2
slopes together with the leading-coefficient estimate at the finest
level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

# Window slot offsets relative to the center cell.
OFFSETS = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])

# Probe values at or below this are treated as exactly zero (avoids
# taking logs of denormals).
ZERO_FLOOR = 1e-300


def beta_js(w):
    """Classic two-stencil local indicators: squared one-sided differences."""
    w = np.asarray(w, dtype=float)
    b0 = (w[..., 2] - w[..., 1]) ** 2
    b1 = (w[..., 3] - w[..., 2]) ** 2
    return b0, b1


def beta_es4(w, c_beta: float = 2.0):
    """Extended-stencil local indicators whose leading coefficients agree at
    a first-order critical point.

    Each candidate combines the squared second-order one-sided first
    derivative with c_beta times the squared second difference, taken on
    the upwind/downwind halves of the five-point window.
    """
    if c_beta <= 0.0:
        raise ValueError("c_beta must be positive")
    w = np.asarray(w, dtype=float)
    b0 = (0.25 * (3.0 * w[..., 2] - 4.0 * w[..., 1] + w[..., 0]) ** 2
          + c_beta * (w[..., 0] - 2.0 * w[..., 1] + w[..., 2]) ** 2)
    b1 = (0.25 * (3.0 * w[..., 2] - 4.0 * w[..., 3] + w[..., 4]) ** 2
          + c_beta * (w[..., 2] - 2.0 * w[..., 3] + w[..., 4]) ** 2)
    return b0, b1


def beta_es3(w):
    """ES3 local indicators: one-sided differences plus fixed-coefficient
    second-difference penalties (0.5 upwind, 0.15 downwind)."""
    w = np.asarray(w, dtype=float)
    b0 = ((w[..., 2] - w[..., 1]) ** 2
          + 0.5 * (w[..., 2] - 2.0 * w[..., 1] + w[..., 0]) ** 2)
    b1 = ((w[..., 3] - w[..., 2]) ** 2
          + 0.15 * (w[..., 4] - 2.0 * w[..., 3] + w[..., 2]) ** 2)
    return b0, b1


def tau_z3(w):
    """Three-point global indicator: |centered difference * second difference|."""
    w = np.asarray(w, dtype=float)
    return np.abs((w[..., 3] - w[..., 1])
                  * (w[..., 3] - 2.0 * w[..., 2] + w[..., 1]))


def tau_f3(w):
    """F3 global indicator: (2/12) times the squared second difference."""
    w = np.asarray(w, dtype=float)
    return (w[..., 3] - 2.0 * w[..., 2] + w[..., 1]) ** 2 / 6.0


def tau_es(w):
    """Four-point global indicator shared by the ES3 and ES4 schemes.

    Product of a third-difference and a one-sided second-derivative
    difference over slots -1..+2; fifth order at a first-order critical
    point, fourth order elsewhere.
    """
    w = np.asarray(w, dtype=float)
    return np.abs((w[..., 4] - 3.0 * w[..., 3] + 3.0 * w[..., 2] - w[..., 1])
                  * (2.0 * w[..., 3] - 3.0 * w[..., 2] + w[..., 1]))


@dataclass(frozen=True)
class OrderProbe:
    """A critical-point offset, test function, and refinement ladder.

    The center cell of each sampled window sits at x_c - lam*dx so the
    designated point of ``func`` lies at offset lam (in cells) from the
    center, for every spacing in ``dx_seq``.
    """

    func: Callable[[np.ndarray], np.ndarray]
    x_c: float
    lam: float
    dx_seq: tuple[float, ...]

    def __post_init__(self):
        if not -1.0 < self.lam < 1.0:
            raise ValueError("lam must lie in (-1, 1)")
        seq = tuple(float(d) for d in self.dx_seq)
        if len(seq) < 4:
            raise ValueError("dx_seq needs at least 4 entries")
        for a, b in zip(seq, seq[1:]):
            if not a > b:
                raise ValueError("dx_seq must be strictly decreasing")
            if abs(a / b - 2.0) > 1e-9:
                raise ValueError("successive dx ratio must be 2")
        object.__setattr__(self, "dx_seq", seq)

    def window(self, dx: float) -> np.ndarray:
        xj = self.x_c - self.lam * dx
        return np.asarray(self.func(xj + OFFSETS * dx), dtype=float)


@dataclass(frozen=True)
class OrderMeasurement:
    """Empirical orders from a probe: per-pair log2 slopes, the finest-pair
    order, and the leading coefficient value/dx^order at the finest level.

    status is "ok", "undefined" (indicator identically zero somewhere on
    the ladder), or "roundoff" (values converged below the noise floor).
    """

    values: tuple[float, ...]
    orders: tuple[float, ...]
    order: float | None
    coefficient: float | None
    status: str = "ok"

    @property
    def defined(self) -> bool:
        return self.status == "ok"


def measure_order(probe: OrderProbe,
                  indicator: Callable[[np.ndarray], float]) -> OrderMeasurement:
    """Measure the empirical convergence order of an indicator on a probe.

    ``indicator`` maps a five-value window to a nonnegative scalar (for
    paired local indicators, pass a selector for the wanted component).
    """
    values = []
    for dx in probe.dx_seq:
        v = float(indicator(probe.window(dx)))
        values.append(0.0 if v <= ZERO_FLOOR else v)
    if any(v == 0.0 for v in values):
        return OrderMeasurement(tuple(values), (), None, None, "undefined")
    orders = tuple(np.log2(a / b) for a, b in zip(values, values[1:]))
    order = orders[-1]
    coeff = values[-1] / probe.dx_seq[-1] ** order
    return OrderMeasurement(tuple(values), orders, order, coeff)
