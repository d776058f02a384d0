"""Case registry, run configuration, artifact output, and reference
comparison.

Configs are line-oriented key=value text with '#' comments.  Every run
writes a manifest listing all resolved parameters so it can be
reproduced from the manifest alone; floats are printed with 17
significant digits to keep artifact comparisons bit-faithful.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from wenokit import euler1d, euler2d, scalar1d
from wenokit.errors import ConfigError
from wenokit.weights import SCHEMES, SchemeParams, make_scheme

CASE_NAMES = ("advection", "shu_osher", "blast", "strong_shock",
              "riemann2d", "dmr")

# Paper-resolution reference grids (WENO5-JS "EXACT" curves); dt scales
# with the grid so the CFL ratio of the base case is kept.
REFERENCE_DEFAULTS = {"shu_osher": 10000, "blast": 15000,
                      "strong_shock": 2000}

_SCHEME_KEYS = {"C_alpha": "c_alpha", "C_beta": "c_beta", "p": "p",
                "eps": "eps"}
_INT_KEYS = ("N", "nx", "ny")
_FLOAT_KEYS = ("dt", "t_end")


@dataclass
class RunConfig:
    """A fully resolved run request: case, scheme, and overrides."""

    case: str
    scheme: str
    params: SchemeParams
    n: int | None = None
    nx: int | None = None
    ny: int | None = None
    dt: float | None = None
    t_end: float | None = None
    out: str | None = None
    snapshots: bool = True
    overrides: dict = field(default_factory=dict)


def parse_config(text: str) -> RunConfig:
    """Parse and validate config text; raises ConfigError with the line
    number on any problem."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (part.strip() for part in body.split("=", 1))
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[(key)] = (lineno, value)

    known = {"case", "scheme", "out", "snapshots", *_SCHEME_KEYS,
             *_INT_KEYS, *_FLOAT_KEYS}
    for key, (lineno, _) in raw.items():
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

    def take(key):
        return raw.pop(key, (None, None))[1]

    case = take("case")
    if case is None:
        raise ConfigError("missing required key 'case'")
    if case not in CASE_NAMES:
        raise ConfigError(f"unknown case {case!r}")
    scheme = take("scheme")
    if scheme is None:
        raise ConfigError("missing required key 'scheme'")
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}")

    cfg = RunConfig(case=case, scheme=scheme, params=SCHEMES[scheme])
    overrides = {}
    for key, (lineno, value) in list(raw.items()):
        if key in _SCHEME_KEYS or key in _FLOAT_KEYS:
            try:
                num = float(value)
            except ValueError:
                raise ConfigError(
                    f"line {lineno}: non-numeric value for {key!r}") from None
            if key in _SCHEME_KEYS:
                overrides[_SCHEME_KEYS[key]] = num
            else:
                setattr(cfg, key, num)
        elif key in _INT_KEYS:
            try:
                setattr(cfg, key.lower(), int(value))
            except ValueError:
                raise ConfigError(
                    f"line {lineno}: non-numeric value for {key!r}") from None
        elif key == "out":
            cfg.out = value
        elif key == "snapshots":
            if value.lower() not in ("true", "false", "0", "1"):
                raise ConfigError(f"line {lineno}: snapshots must be boolean")
            cfg.snapshots = value.lower() in ("true", "1")
    if overrides:
        try:
            cfg.params = make_scheme(scheme, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        cfg.overrides = overrides
    return cfg


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_field_1d(path, x, cols: dict):
    header = "x," + ",".join(cols)
    rows = np.column_stack([x, *cols.values()])
    _write_rows(path, header, rows)


def write_field_2d(path, x, y, cols: dict, stride: int = 1):
    X, Y = np.meshgrid(x[::stride], y[::stride], indexing="ij")
    header = "x,y," + ",".join(cols)
    rows = np.column_stack(
        [X.ravel(), Y.ravel()]
        + [c[::stride, ::stride].ravel() for c in cols.values()])
    _write_rows(path, header, rows)


def _write_rows(path, header, rows):
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_field(path):
    """Read a delimited field file; returns (header names, column dict)."""
    with open(path) as fh:
        names = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",")
    if data.ndim == 1:
        data = data[None, :]
    return names, {name: data[:, i] for i, name in enumerate(names)}


def _write_manifest(path, entries: dict):
    with open(path, "w") as fh:
        for key, value in entries.items():
            fh.write(f"{key}={_fmt(value)}\n")


def run(config: RunConfig, out_dir=None):
    """Dispatch a config to its solver and write artifacts.

    Returns (exit_code, manifest dict); exit code 1 means the solver
    failed, with the structured report saved next to the manifest.
    """
    out = Path(out_dir or config.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    params = config.params
    manifest = {
        "case": config.case,
        "scheme": config.scheme,
        "d0": params.d[0], "d1": params.d[1],
        "p": params.p, "C_alpha": params.c_alpha,
        "C_beta": params.c_beta, "eps": params.eps,
    }
    tag = f"{config.case}_{config.scheme}"
    t0 = time.perf_counter()
    code = 0

    if config.case == "advection":
        n = config.n or 320
        t_end = config.t_end if config.t_end is not None else scalar1d.T_END
        manifest.update(N=n, CFL=scalar1d.CFL, t_end=t_end)
        x, u, err = scalar1d.run_advection(params, n, t_end=t_end)
        manifest["linf_error"] = err
        if config.snapshots:
            write_field_1d(out / f"{tag}.csv", x, {"u": u})
        manifest["completed"] = True
    elif config.case in euler1d.CASES:
        case = euler1d.CASES[config.case]
        n = config.n or case.n
        dt = config.dt if config.dt is not None else case.dt
        t_end = config.t_end if config.t_end is not None else case.t_end
        manifest.update(N=n, dt=dt, t_end=t_end, bc=case.bc)
        res = euler1d.run_case(case, params, n=n, dt=dt, t_end=t_end)
        manifest["steps"] = res.steps_run
        manifest["completed"] = res.completed
        if res.completed and config.snapshots:
            write_field_1d(out / f"{tag}.csv", res.x,
                           {"rho": res.rho, "u": res.u, "p": res.p})
        if not res.completed:
            (out / f"{tag}.failure.txt").write_text(res.failure + "\n")
            code = 1
    else:
        if config.case == "riemann2d":
            nx = config.nx or 240
            ny = config.ny or nx
            dt = config.dt if config.dt is not None else 0.0004
            t_end = config.t_end if config.t_end is not None else 0.8
            res = euler2d.run_riemann2d(params, nx=nx, ny=ny, dt=dt,
                                        t_end=t_end)
        else:
            nx = config.nx or 480
            ny = config.ny or nx // 4
            dt = config.dt if config.dt is not None else 0.0004
            t_end = config.t_end if config.t_end is not None else 0.2
            res = euler2d.run_dmr(params, nx=nx, ny=ny, dt=dt, t_end=t_end)
        manifest.update(nx=nx, ny=ny, dt=dt, t_end=t_end)
        manifest["steps"] = res.steps_run
        manifest["completed"] = res.completed
        if res.completed and config.snapshots:
            write_field_2d(out / f"{tag}.csv", res.x, res.y,
                           {"rho": res.rho, "u": res.u, "v": res.v,
                            "p": res.p})
        if not res.completed:
            (out / f"{tag}.failure.txt").write_text(res.failure + "\n")
            code = 1

    manifest["wall_time_s"] = time.perf_counter() - t0
    _write_manifest(out / f"{tag}.manifest.txt", manifest)
    return code, manifest


def make_reference(case_name: str, n=None, dt=None):
    """Fine-grid WENO5-JS run of a 1D Euler case for "EXACT" curves."""
    if case_name not in euler1d.CASES:
        raise ConfigError(f"no reference recipe for case {case_name!r}")
    case = euler1d.CASES[case_name]
    n = int(n) if n else REFERENCE_DEFAULTS[case_name]
    if dt is None:
        dt = case.dt * case.n / n
    return euler1d.run_case(case, "weno5js", n=n, dt=dt)


def compare_to_reference(field_path, ref_path, windows=(),
                         interpolate: bool = False):
    """L2 density distance between a field file and a reference, plus
    per-window (max, min) density metrics for both files.

    The files must share an x grid unless interpolate is set, in which
    case the reference density is linearly interpolated onto the field
    grid."""
    _, a = read_field(field_path)
    _, b = read_field(ref_path)
    if "rho" not in a or "rho" not in b:
        raise ConfigError("compare requires 1D fields with a rho column")
    xa, ra = a["x"], a["rho"]
    xb, rb = b["x"], b["rho"]
    if xa.shape != xb.shape or not np.allclose(xa, xb, atol=1e-12, rtol=0.0):
        if not interpolate:
            raise ConfigError("grid mismatch; pass interpolate to resample")
        rb = np.interp(xa, xb, rb)
        xb = xa
    l2 = float(np.sqrt(np.mean((ra - rb) ** 2)))
    metrics = {}
    for lo, hi in windows:
        sel_a = (xa >= lo) & (xa <= hi)
        sel_b = (xb >= lo) & (xb <= hi)
        metrics[(lo, hi)] = {
            "field": (float(ra[sel_a].max()), float(ra[sel_a].min())),
            "reference": (float(rb[sel_b].max()), float(rb[sel_b].min())),
        }
    return l2, metrics
