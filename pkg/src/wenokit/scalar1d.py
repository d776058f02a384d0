"""1D linear advection on [-1, 1] with the critical-point initial
condition, RK4 time stepping, and the grid-convergence harness.

The wind is positive (f(u) = u), so only the plus reconstruction is
needed.  The domain is periodic with length 2 and unit speed, so the
exact solution at t = 2 equals the initial condition; errors are nodal
L-infinity values against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from wenokit.errors import SolverBlowUp
from wenokit.reconstruction import reconstruct_plus
from wenokit.weights import SchemeParams

# Phase shift placing the two first-order critical points of the initial
# profile at x = 0 and x = -2 + 2*x_c.
X_SHIFT = 0.5966831869112089637212

NGHOST = 3
CFL = 0.25
T_END = 2.0


def initial_condition(x):
    """u(x, 0) = sin(pi*(x - x_c) - sin(pi*(x - x_c))/pi)."""
    s = np.pi * (np.asarray(x, dtype=float) - X_SHIFT)
    return np.sin(s - np.sin(s) / np.pi)


def grid(n: int):
    """Nodes x_j = -1 + j*dx, j = 0..n-1; x = 0 is a node for even n."""
    dx = 2.0 / n
    return -1.0 + dx * np.arange(n), dx


def advect_rhs(u, params: SchemeParams, dx: float):
    """-(fhat_{j+1/2} - fhat_{j-1/2})/dx with periodic ghost fill."""
    up = np.pad(np.asarray(u, dtype=float), NGHOST, mode="wrap")
    # Window row m is centered on padded cell m+2, i.e. physical cell m-1;
    # rows 1..n give the faces j+1/2 for j = 0..n-1.
    wins = np.lib.stride_tricks.sliding_window_view(up, 5)
    fh = reconstruct_plus(wins[1:len(u) + 1], params)
    return -(fh - np.roll(fh, 1)) / dx


def rk4_step(u, dt: float, params: SchemeParams, dx: float):
    """Classical four-stage RK4 step of the advection right-hand side."""
    k1 = advect_rhs(u, params, dx)
    k2 = advect_rhs(u + 0.5 * dt * k1, params, dx)
    k3 = advect_rhs(u + 0.5 * dt * k2, params, dx)
    k4 = advect_rhs(u + dt * k3, params, dx)
    out = u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise SolverBlowUp("solution blow-up in RK4 stage")
    return out


def run_advection(params: SchemeParams, n: int, cfl: float = CFL,
                  t_end: float = T_END):
    """Advance the critical-point profile to t_end; returns (x, u, error)."""
    x, dx = grid(n)
    dt = cfl * dx
    nsteps = round(t_end / dt)
    if abs(nsteps * dt - t_end) > 1e-12:
        raise ValueError("t_end must be an integer number of steps")
    u = initial_condition(x)
    for step in range(nsteps):
        try:
            u = rk4_step(u, dt, params, dx)
        except SolverBlowUp as exc:
            raise SolverBlowUp(f"solution blow-up at step {step}",
                               step=step) from exc
    err = float(np.max(np.abs(u - initial_condition(x))))
    return x, u, err


@dataclass(frozen=True)
class OrderTable:
    """Rows of (N, dt, L-infinity error, order); order is None in row 0."""

    rows: tuple[tuple[int, float, float, float | None], ...]

    def formatted(self) -> str:
        lines = ["N dt error order"]
        for n, dt, err, order in self.rows:
            tail = "-" if order is None else f"{order:.17g}"
            lines.append(f"{n} {dt:.17g} {err:.17g} {tail}")
        return "\n".join(lines) + "\n"


def run_convergence(params: SchemeParams, n_list=(10, 20, 40, 80, 160, 320, 640),
                    cfl: float = CFL, t_end: float = T_END) -> OrderTable:
    """Refinement ladder of nodal L-infinity errors and log2 orders."""
    rows = []
    prev_err = None
    for n in n_list:
        _, _, err = run_advection(params, n, cfl=cfl, t_end=t_end)
        dt = cfl * 2.0 / n
        order = None if prev_err is None else float(np.log2(prev_err / err))
        rows.append((int(n), dt, err, order))
        prev_err = err
    return OrderTable(tuple(rows))
