"""1D compressible Euler solver: Steger-Warming flux splitting,
characteristic-wise WENO reconstruction, TVD-RK3 time stepping, and the
three shock benchmarks (Shu-Osher, blast wave, strong shock).

States are conserved variables (rho, rho*u, E) on a uniform grid of cell
centers with three ghost cells per side.  The eigenvalue split is
smoothed with eps_sw = 1e-6*c so F+ + F- still equals the exact flux
while sonic-point kinks are avoided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from wenokit.errors import SolverBlowUp, UnphysicalState
from wenokit.reconstruction import reconstruct_plus, weno5_reference
from wenokit.weights import SchemeParams

GAMMA = 1.4
NGHOST = 3

Recon = Union[SchemeParams, str]


def conserved(rho, u, p):
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    return np.stack([rho, rho * u, p / (GAMMA - 1.0) + 0.5 * rho * u * u])


def primitives(U, step=None):
    rho = U[0]
    if np.any(rho <= 0.0) or not np.all(np.isfinite(rho)):
        cell = int(np.flatnonzero(~(rho > 0.0) | ~np.isfinite(rho))[0])
        raise UnphysicalState(
            f"unphysical state: rho={rho[cell]!r} at cell {cell - NGHOST}",
            step=step, cell=cell - NGHOST, state=tuple(U[:, cell]))
    u = U[1] / rho
    p = (GAMMA - 1.0) * (U[2] - 0.5 * rho * u * u)
    if np.any(p <= 0.0) or not np.all(np.isfinite(p)):
        cell = int(np.flatnonzero(~(p > 0.0) | ~np.isfinite(p))[0])
        raise UnphysicalState(
            f"unphysical state: p={p[cell]!r} at cell {cell - NGHOST}",
            step=step, cell=cell - NGHOST, state=tuple(U[:, cell]))
    return rho, u, p


def steger_warming_split(rho, u, p):
    """Split Euler flux F = F+ + F- by smoothed eigenvalue signs."""
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    p = np.asarray(p, dtype=float)
    if np.any(rho <= 0.0) or np.any(p <= 0.0):
        raise UnphysicalState("unphysical state passed to flux split")
    c = np.sqrt(GAMMA * p / rho)
    eps2 = (1e-6 * c) ** 2
    lams = (u, u - c, u + c)
    halves = [0.5 * np.sqrt(lam * lam + eps2) for lam in lams]

    def assemble(sign):
        l1, l2, l3 = (0.5 * lam + sign * h for lam, h in zip(lams, halves))
        g1 = GAMMA - 1.0
        f1 = 2.0 * g1 * l1 + l2 + l3
        f2 = 2.0 * g1 * l1 * u + l2 * (u - c) + l3 * (u + c)
        f3 = (g1 * l1 * u * u + 0.5 * l2 * (u - c) ** 2
              + 0.5 * l3 * (u + c) ** 2
              + (3.0 - GAMMA) * (l2 + l3) * c * c / (2.0 * g1))
        return rho / (2.0 * GAMMA) * np.stack([f1, f2, f3])

    return assemble(+1.0), assemble(-1.0)


def roe_eigensystem(Ul, Ur):
    """Left/right eigenvector matrices at the Roe average of two states.

    Returns (L, R), each shaped (nface, 3, 3), with L @ R = I.
    """
    rl, ul, pl = primitives(np.asarray(Ul, dtype=float).reshape(3, -1))
    rr, ur, pr = primitives(np.asarray(Ur, dtype=float).reshape(3, -1))
    wl, wr = np.sqrt(rl), np.sqrt(rr)
    inv = 1.0 / (wl + wr)
    u = (wl * ul + wr * ur) * inv
    hl = (GAMMA / (GAMMA - 1.0)) * pl / rl + 0.5 * ul * ul
    hr = (GAMMA / (GAMMA - 1.0)) * pr / rr + 0.5 * ur * ur
    h = (wl * hl + wr * hr) * inv
    c2 = (GAMMA - 1.0) * (h - 0.5 * u * u)
    if np.any(c2 <= 0.0):
        raise UnphysicalState("unphysical Roe average: c^2 <= 0")
    c = np.sqrt(c2)

    nf = u.shape[0]
    R = np.empty((nf, 3, 3))
    R[:, 0, 0] = 1.0
    R[:, 1, 0] = u - c
    R[:, 2, 0] = h - u * c
    R[:, 0, 1] = 1.0
    R[:, 1, 1] = u
    R[:, 2, 1] = 0.5 * u * u
    R[:, 0, 2] = 1.0
    R[:, 1, 2] = u + c
    R[:, 2, 2] = h + u * c

    b1 = (GAMMA - 1.0) / c2
    b2 = 0.5 * b1 * u * u
    L = np.empty((nf, 3, 3))
    L[:, 0, 0] = 0.5 * (b2 + u / c)
    L[:, 0, 1] = -0.5 * (b1 * u + 1.0 / c)
    L[:, 0, 2] = 0.5 * b1
    L[:, 1, 0] = 1.0 - b2
    L[:, 1, 1] = b1 * u
    L[:, 1, 2] = -b1
    L[:, 2, 0] = 0.5 * (b2 - u / c)
    L[:, 2, 1] = -0.5 * (b1 * u - 1.0 / c)
    L[:, 2, 2] = 0.5 * b1
    return L, R


def _face_kernel(recon: Recon) -> Callable:
    if isinstance(recon, SchemeParams):
        return lambda w: reconstruct_plus(w, recon)
    if recon == "weno5js":
        return weno5_reference
    raise ValueError(f"unknown reconstruction {recon!r}")


def euler_rhs(U, recon: Recon, dx: float, step=None):
    """dU/dt on the interior cells; ghost cells must be pre-filled.

    Characteristic-wise: at every face the five upwind F+ values and
    five downwind F- values are projected through the Roe left
    eigenvectors, reconstructed per wave family, summed, and projected
    back.
    """
    n = U.shape[1] - 2 * NGHOST
    rho, u, p = primitives(U, step=step)
    Fp, Fm = steger_warming_split(rho, u, p)

    # Faces f = 0..n between cells gl = f+2 and gl+1.
    gl = np.arange(2, n + 3)
    wins_p = np.lib.stride_tricks.sliding_window_view(Fp, 5, axis=1)
    wins_m = np.lib.stride_tricks.sliding_window_view(Fm, 5, axis=1)
    Wp = wins_p[:, 0:n + 1].transpose(1, 0, 2)          # centered on gl
    Wm = wins_m[:, 1:n + 2, ::-1].transpose(1, 0, 2)    # centered on gl+1, reversed

    L, R = roe_eigensystem(U[:, gl], U[:, gl + 1])
    cp = L @ Wp
    cm = L @ Wm
    kernel = _face_kernel(recon)
    fchar = kernel(cp) + kernel(cm)
    fh = (R @ fchar[:, :, None])[:, :, 0].T
    return -(fh[:, 1:] - fh[:, :-1]) / dx


def tvd_rk3_step(U, dt: float, recon: Recon, dx: float,
                 fill_ghosts: Callable, step=None):
    """Three-stage TVD-RK3 update; fill_ghosts mutates the full array."""
    inner = slice(NGHOST, -NGHOST)

    def advance(V):
        fill_ghosts(V)
        return euler_rhs(V, recon, dx, step=step)

    U1 = U.copy()
    U1[:, inner] = U[:, inner] + dt * advance(U)
    U2 = U.copy()
    U2[:, inner] = 0.75 * U[:, inner] + 0.25 * (U1[:, inner]
                                                + dt * advance(U1))
    out = U.copy()
    out[:, inner] = (U[:, inner] / 3.0
                     + (2.0 / 3.0) * (U2[:, inner] + dt * advance(U2)))
    if not np.all(np.isfinite(out[:, inner])):
        raise SolverBlowUp(f"solution blow-up at step {step}", step=step)
    return out


def make_ghost_filler(bc: str, frozen=None):
    """Ghost-fill closure for 'frozen', 'reflect', or 'periodic' BCs."""
    if bc == "frozen":
        left = frozen[0].copy()
        right = frozen[1].copy()

        def fill(U):
            U[:, :NGHOST] = left
            U[:, -NGHOST:] = right
    elif bc == "reflect":
        parity = np.array([1.0, -1.0, 1.0])[:, None]

        def fill(U):
            U[:, NGHOST - 1::-1] = U[:, NGHOST:2 * NGHOST] * parity
            U[:, :-NGHOST - 1:-1] = U[:, -2 * NGHOST:-NGHOST] * parity
    elif bc == "periodic":
        def fill(U):
            U[:, :NGHOST] = U[:, -2 * NGHOST:-NGHOST]
            U[:, -NGHOST:] = U[:, NGHOST:2 * NGHOST]
    else:
        raise ValueError(f"unknown boundary kind {bc!r}")
    return fill


@dataclass(frozen=True)
class EulerCase:
    """One benchmark: domain, grid, time step, end time, BC kind, IC."""

    name: str
    x_lo: float
    x_hi: float
    n: int
    dt: float
    t_end: float
    bc: str
    ic: Callable


def _ic_shu_osher(x):
    left = x < -4.0
    rho = np.where(left, 3.857143, 1.0 + 0.2 * np.sin(5.0 * x))
    u = np.where(left, 2.62936, 0.0)
    p = np.where(left, 10.3333, 1.0)
    return rho, u, p


def _ic_blast(x):
    rho = np.ones_like(x)
    u = np.zeros_like(x)
    p = np.where(x < 0.1, 1000.0, np.where(x > 0.9, 100.0, 0.01))
    return rho, u, p


def _ic_strong_shock(x, pressure_ratio=1e6):
    rho = np.ones_like(x)
    u = np.zeros_like(x)
    p = np.where(x < 0.0, 0.1 * pressure_ratio, 0.1)
    return rho, u, p


CASES = {
    "shu_osher": EulerCase("shu_osher", -5.0, 5.0, 240, 0.003, 1.8,
                           "frozen", _ic_shu_osher),
    "blast": EulerCase("blast", 0.0, 1.0, 600, 1e-5, 0.038,
                       "reflect", _ic_blast),
    "strong_shock": EulerCase("strong_shock", -5.0, 5.0, 200, 1e-5, 0.01,
                              "frozen", _ic_strong_shock),
}


@dataclass
class CaseResult:
    """Final snapshot plus completion status of one benchmark run."""

    case: str
    x: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    p: np.ndarray
    steps_run: int
    completed: bool
    failure: str | None = None


def cell_centers(x_lo: float, x_hi: float, n: int):
    dx = (x_hi - x_lo) / n
    return x_lo + dx * (np.arange(n) + 0.5), dx


def init_state(case: EulerCase, n: int):
    """Full state array with ghosts, filled from the IC everywhere."""
    dx = (case.x_hi - case.x_lo) / n
    xg = case.x_lo + dx * (np.arange(-NGHOST, n + NGHOST) + 0.5)
    return conserved(*case.ic(xg)), dx


def run_case(case: EulerCase, recon: Recon, n=None, dt=None,
             t_end=None) -> CaseResult:
    """Advance a benchmark to its end time; failures are captured in the
    result rather than raised."""
    n = case.n if n is None else int(n)
    dt = case.dt if dt is None else float(dt)
    t_end = case.t_end if t_end is None else float(t_end)
    nsteps = round(t_end / dt)

    U, dx = init_state(case, n)
    if case.bc == "frozen":
        frozen = (U[:, :NGHOST], U[:, -NGHOST:])
    else:
        frozen = None
    fill = make_ghost_filler(case.bc, frozen)

    x, _ = cell_centers(case.x_lo, case.x_hi, n)
    steps_done = 0
    failure = None
    try:
        for step in range(nsteps):
            U = tvd_rk3_step(U, dt, recon, dx, fill, step=step)
            steps_done = step + 1
        rho, u, p = primitives(U)
    except (SolverBlowUp, UnphysicalState) as exc:
        failure = _failure_report(exc, steps_done)
        rho, u, p = U[0], np.zeros_like(U[0]), np.zeros_like(U[0])
    inner = slice(NGHOST, -NGHOST)
    return CaseResult(case.name, x, rho[inner].copy(), u[inner].copy(),
                      p[inner].copy(), steps_done, failure is None, failure)


def _failure_report(exc, steps_done: int) -> str:
    lines = [f"failure: {exc}"]
    step = getattr(exc, "step", None)
    lines.append(f"step: {steps_done if step is None else step}")
    if getattr(exc, "cell", None) is not None:
        lines.append(f"cell: {exc.cell}")
    if getattr(exc, "state", None) is not None:
        lines.append("state: " + " ".join(f"{v:.17g}" for v in exc.state))
    return "\n".join(lines)
