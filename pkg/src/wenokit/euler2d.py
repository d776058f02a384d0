"""2D Euler solver by dimension-by-dimension characteristic WENO sweeps.

The y sweep reuses the x-direction machinery by swapping the momentum
components and transposing the grid axes, so transposition equivariance
(u <-> v) holds by construction.  Cases: a four-quadrant Riemann problem
and double Mach reflection, both at configurable resolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from wenokit.errors import SolverBlowUp, UnphysicalState
from wenokit.euler1d import GAMMA, NGHOST, Recon, _face_kernel

# Component permutation that swaps the two momentum slots (self-inverse).
_SWAP = np.array([0, 2, 1, 3])


def conserved2d(rho, u, v, p):
    rho = np.asarray(rho, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    p = np.asarray(p, dtype=float)
    E = p / (GAMMA - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack([rho, rho * u, rho * v, E])


def primitives2d(U):
    rho = U[0]
    u = U[1] / rho
    v = U[2] / rho
    p = (GAMMA - 1.0) * (U[3] - 0.5 * rho * (u * u + v * v))
    return rho, u, v, p


def check_positive(U, step=None):
    """Interior positivity monitor; raises with the (i, j) location."""
    inner = U[:, NGHOST:-NGHOST, NGHOST:-NGHOST]
    rho, _, _, p = primitives2d(inner)
    bad = ~((rho > 0.0) & (p > 0.0) & np.isfinite(rho) & np.isfinite(p))
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise UnphysicalState(
            f"unphysical state at cell ({i}, {j})", step=step, cell=(i, j),
            state=tuple(inner[:, i, j]))


def _split_normal(rho, un, ut, p):
    """Steger-Warming split of the directional flux, components ordered
    (mass, normal momentum, tangential momentum, energy)."""
    c = np.sqrt(GAMMA * p / rho)
    eps2 = (1e-6 * c) ** 2
    lams = (un, un - c, un + c)
    halves = [0.5 * np.sqrt(lam * lam + eps2) for lam in lams]
    g1 = GAMMA - 1.0

    def assemble(sign):
        l1, l3, l4 = (0.5 * lam + sign * h for lam, h in zip(lams, halves))
        f1 = 2.0 * g1 * l1 + l3 + l4
        f2 = 2.0 * g1 * l1 * un + l3 * (un - c) + l4 * (un + c)
        f3 = f1 * ut
        f4 = (g1 * l1 * (un * un + ut * ut)
              + 0.5 * l3 * ((un - c) ** 2 + ut * ut)
              + 0.5 * l4 * ((un + c) ** 2 + ut * ut)
              + (3.0 - GAMMA) * (l3 + l4) * c * c / (2.0 * g1))
        return rho / (2.0 * GAMMA) * np.stack([f1, f2, f3, f4])

    return assemble(+1.0), assemble(-1.0)


def _roe_eigensystem_normal(Ul, Ur):
    """Four-wave eigensystem at the Roe average, normal-direction form."""
    rl, ul, tl, pl = primitives2d(Ul)
    rr, ur, tr, pr = primitives2d(Ur)
    if np.any(pl <= 0.0) or np.any(pr <= 0.0):
        raise UnphysicalState("unphysical state at a face")
    wl, wr = np.sqrt(rl), np.sqrt(rr)
    inv = 1.0 / (wl + wr)
    un = (wl * ul + wr * ur) * inv
    ut = (wl * tl + wr * tr) * inv
    hl = (GAMMA / (GAMMA - 1.0)) * pl / rl + 0.5 * (ul * ul + tl * tl)
    hr = (GAMMA / (GAMMA - 1.0)) * pr / rr + 0.5 * (ur * ur + tr * tr)
    h = (wl * hl + wr * hr) * inv
    q2 = 0.5 * (un * un + ut * ut)
    c2 = (GAMMA - 1.0) * (h - q2)
    if np.any(c2 <= 0.0):
        raise UnphysicalState("unphysical Roe average: c^2 <= 0")
    c = np.sqrt(c2)

    nf = un.shape[0]
    R = np.zeros((nf, 4, 4))
    R[:, 0, 0] = 1.0
    R[:, 1, 0] = un - c
    R[:, 2, 0] = ut
    R[:, 3, 0] = h - un * c
    R[:, 0, 1] = 1.0
    R[:, 1, 1] = un
    R[:, 2, 1] = ut
    R[:, 3, 1] = q2
    R[:, 2, 2] = 1.0
    R[:, 3, 2] = ut
    R[:, 0, 3] = 1.0
    R[:, 1, 3] = un + c
    R[:, 2, 3] = ut
    R[:, 3, 3] = h + un * c

    b1 = (GAMMA - 1.0) / c2
    b2 = b1 * q2
    L = np.zeros((nf, 4, 4))
    L[:, 0, 0] = 0.5 * (b2 + un / c)
    L[:, 0, 1] = -0.5 * (b1 * un + 1.0 / c)
    L[:, 0, 2] = -0.5 * b1 * ut
    L[:, 0, 3] = 0.5 * b1
    L[:, 1, 0] = 1.0 - b2
    L[:, 1, 1] = b1 * un
    L[:, 1, 2] = b1 * ut
    L[:, 1, 3] = -b1
    L[:, 2, 0] = -ut
    L[:, 2, 2] = 1.0
    L[:, 3, 0] = 0.5 * (b2 - un / c)
    L[:, 3, 1] = -0.5 * (b1 * un - 1.0 / c)
    L[:, 3, 2] = -0.5 * b1 * ut
    L[:, 3, 3] = 0.5 * b1
    return L, R


def _sweep(U, recon: Recon, dn: float):
    """Directional divergence along axis 1 of a (4, n+6, nrows) block in
    normal-component order; returns the (4, n, nrows) contribution."""
    n = U.shape[1] - 2 * NGHOST
    nr = U.shape[2]
    rho, un, ut, p = primitives2d(U)
    if np.any(rho <= 0.0) or np.any(p <= 0.0):
        raise UnphysicalState("unphysical state in sweep block")
    Fp, Fm = _split_normal(rho, un, ut, p)

    wins_p = np.lib.stride_tricks.sliding_window_view(Fp, 5, axis=1)
    wins_m = np.lib.stride_tricks.sliding_window_view(Fm, 5, axis=1)
    # Faces f = 0..n between normal cells gl = f+2 and gl+1, every row.
    # Force contiguous operands: BLAS rounding depends on memory layout,
    # and the x and y sweeps must be bit-identical on symmetric data.
    Wp = np.ascontiguousarray(
        wins_p[:, 0:n + 1].transpose(1, 2, 0, 3).reshape(-1, 4, 5))
    Wm = np.ascontiguousarray(
        wins_m[:, 1:n + 2, :, ::-1].transpose(1, 2, 0, 3).reshape(-1, 4, 5))

    gl = np.arange(2, n + 3)
    Ul = U[:, gl, :].reshape(4, -1)
    Ur = U[:, gl + 1, :].reshape(4, -1)
    L, R = _roe_eigensystem_normal(Ul, Ur)
    cp = L @ Wp
    cm = L @ Wm
    kernel = _face_kernel(recon)
    fchar = kernel(cp) + kernel(cm)
    fh = (R @ fchar[:, :, None])[:, :, 0]
    fh = fh.reshape(n + 1, nr, 4).transpose(2, 0, 1)
    return -(fh[:, 1:] - fh[:, :-1]) / dn


def euler2d_rhs(U, recon: Recon, dx: float, dy: float):
    """dU/dt on the interior; ghost cells must be pre-filled (corner
    ghosts are never read)."""
    g = NGHOST
    rhs = _sweep(U[:, :, g:-g], recon, dx)
    Uy = U[_SWAP][:, g:-g, :].transpose(0, 2, 1)
    ry = _sweep(Uy, recon, dy)
    return rhs + ry[_SWAP].transpose(0, 2, 1)


def tvd_rk3_step_2d(U, t: float, dt: float, recon: Recon, dx: float,
                    dy: float, fill_ghosts: Callable, step=None):
    """TVD-RK3 update with stage-time ghost fills (t, t+dt, t+dt/2)."""
    g = NGHOST
    inner = (slice(None), slice(g, -g), slice(g, -g))

    def advance(V, ts):
        fill_ghosts(V, ts)
        return euler2d_rhs(V, recon, dx, dy)

    U1 = U.copy()
    U1[inner] = U[inner] + dt * advance(U, t)
    U2 = U.copy()
    U2[inner] = 0.75 * U[inner] + 0.25 * (U1[inner] + dt * advance(U1, t + dt))
    out = U.copy()
    out[inner] = (U[inner] / 3.0
                  + (2.0 / 3.0) * (U2[inner] + dt * advance(U2, t + 0.5 * dt)))
    if not np.all(np.isfinite(out[inner])):
        raise SolverBlowUp(f"solution blow-up at step {step}", step=step)
    return out


@dataclass
class Result2D:
    """Final field snapshot plus completion status of one 2D run."""

    case: str
    x: np.ndarray
    y: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    v: np.ndarray
    p: np.ndarray
    steps_run: int
    completed: bool
    failure: str | None = None


def _zero_gradient_fill(U, t):
    g = NGHOST
    U[:, :g, g:-g] = U[:, g:g + 1, g:-g]
    U[:, -g:, g:-g] = U[:, -g - 1:-g, g:-g]
    U[:, g:-g, :g] = U[:, g:-g, g:g + 1]
    U[:, g:-g, -g:] = U[:, g:-g, -g - 1:-g]


def centers(lo: float, hi: float, n: int):
    d = (hi - lo) / n
    return lo + d * (np.arange(n) + 0.5), d


RIEMANN2D_STATES = {
    "top_right": (1.5, 0.0, 0.0, 1.5),
    "top_left": (0.5323, 1.206, 0.0, 0.3),
    "bottom_left": (0.138, 1.206, 1.206, 0.029),
    "bottom_right": (0.5323, 0.0, 1.206, 0.3),
}


def _riemann2d_ic(x, y):
    X, Y = np.meshgrid(x, y, indexing="ij")
    rho = np.empty_like(X)
    u = np.empty_like(X)
    v = np.empty_like(X)
    p = np.empty_like(X)
    quads = (
        ((X >= 0.8) & (Y >= 0.8), RIEMANN2D_STATES["top_right"]),
        ((X < 0.8) & (Y >= 0.8), RIEMANN2D_STATES["top_left"]),
        ((X < 0.8) & (Y < 0.8), RIEMANN2D_STATES["bottom_left"]),
        ((X >= 0.8) & (Y < 0.8), RIEMANN2D_STATES["bottom_right"]),
    )
    for mask, (r_, u_, v_, p_) in quads:
        rho[mask] = r_
        u[mask] = u_
        v[mask] = v_
        p[mask] = p_
    return rho, u, v, p


def _run2d(name, U, x, y, dx, dy, recon, dt, t_end, fill, start_step=0):
    nsteps = round(t_end / dt)
    g = NGHOST
    steps_done = 0
    failure = None
    try:
        for step in range(nsteps):
            U = tvd_rk3_step_2d(U, step * dt, dt, recon, dx, dy, fill,
                                step=step)
            check_positive(U, step=step)
            steps_done = step + 1
    except (SolverBlowUp, UnphysicalState) as exc:
        failure = _failure_report2d(exc, steps_done)
    inner = U[:, g:-g, g:-g]
    rho, u, v, p = primitives2d(inner)
    return Result2D(name, x, y, rho.copy(), u.copy(), v.copy(), p.copy(),
                    steps_done, failure is None, failure)


def _failure_report2d(exc, steps_done: int) -> str:
    lines = [f"failure: {exc}"]
    step = getattr(exc, "step", None)
    lines.append(f"step: {steps_done if step is None else step}")
    if getattr(exc, "cell", None) is not None:
        lines.append(f"cell: {exc.cell}")
    if getattr(exc, "state", None) is not None:
        lines.append("state: " + " ".join(f"{v:.17g}" for v in exc.state))
    return "\n".join(lines)


def run_riemann2d(recon: Recon, nx: int = 240, ny: int = 240,
                  dt: float = 0.0004, t_end: float = 0.8) -> Result2D:
    """Four-quadrant Riemann problem on [0,1]^2 with zero-gradient BCs."""
    if nx != ny:
        raise ValueError("run_riemann2d requires nx == ny")
    g = NGHOST
    x, dx = centers(0.0, 1.0, nx)
    y, dy = centers(0.0, 1.0, ny)
    xg = 0.0 + dx * (np.arange(-g, nx + g) + 0.5)
    yg = 0.0 + dy * (np.arange(-g, ny + g) + 0.5)
    U = conserved2d(*_riemann2d_ic(xg, yg))
    return _run2d("riemann2d", U, x, y, dx, dy, recon, dt, t_end,
                  _zero_gradient_fill)


DMR_POST = (8.0, 7.154, -4.125, 116.5)
DMR_PRE = (1.4, 0.0, 0.0, 1.0)


def _dmr_ic(x, y):
    X, Y = np.meshgrid(x, y, indexing="ij")
    post = X <= 1.0 / 6.0 + Y / np.sqrt(3.0)
    fields = []
    for a, b in zip(DMR_POST, DMR_PRE):
        fields.append(np.where(post, a, b))
    return tuple(fields)


def dmr_shock_x(t: float) -> float:
    """Shock intersection with the top boundary: a Mach-10 shock along
    the 60-degree geometry gives x_s(y=1, t) = 1/6 + (1 + 20 t)/sqrt(3)."""
    return 1.0 / 6.0 + (1.0 + 20.0 * t) / np.sqrt(3.0)


def _make_dmr_fill(xg):
    g = NGHOST
    post = conserved2d(*(np.array([v]) for v in DMR_POST))[:, 0]
    pre = conserved2d(*(np.array([v]) for v in DMR_PRE))[:, 0]
    x_in = xg[g:-g]
    wall = x_in >= 1.0 / 6.0
    parity = np.array([1.0, 1.0, -1.0, 1.0])[:, None, None]

    def fill(U, t):
        # Left inflow: fixed post-shock state.
        U[:, :g, g:-g] = post[:, None, None]
        # Right: zero-gradient outflow.
        U[:, -g:, g:-g] = U[:, -g - 1:-g, g:-g]
        # Bottom: post-shock ahead of the wall start, reflecting wall after.
        for i in range(g):
            U[:, g:-g, g - 1 - i] = np.where(
                wall[None, :],
                (U[:, g:-g, g + i] * parity[:, :, 0]),
                post[:, None])
        # Top: exact shock position for the moving Mach-10 shock.
        xs = dmr_shock_x(t)
        top_post = x_in[None, :] < xs
        for i in range(g):
            U[:, g:-g, -g + i] = np.where(top_post, post[:, None],
                                          pre[:, None])

    return fill


def run_dmr(recon: Recon, nx: int = 480, ny: int = 120,
            dt: float = 0.0004, t_end: float = 0.2) -> Result2D:
    """Double Mach reflection on [0,4] x [0,1]."""
    if nx != 4 * ny:
        raise ValueError("run_dmr requires a 4:1 grid (nx = 4*ny)")
    g = NGHOST
    x, dx = centers(0.0, 4.0, nx)
    y, dy = centers(0.0, 1.0, ny)
    xg = 0.0 + dx * (np.arange(-g, nx + g) + 0.5)
    yg = 0.0 + dy * (np.arange(-g, ny + g) + 0.5)
    U = conserved2d(*_dmr_ic(xg, yg))
    fill = _make_dmr_fill(xg)
    return _run2d("dmr", U, x, y, dx, dy, recon, dt, t_end, fill)
