"""Command-line driver: single runs, convergence tables, timing tables.

Configuration comes from an optional flat key=value file overridden by
CLI flags.  Outputs are full-precision CSV (and legacy ASCII VTK for
2-D fields) plus a plain-text manifest with counters and checksums.
Identical configurations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, PositivityFailure, SolverFailure
from .grid import Field
from .limiter import W_HAT
from .problems import PRIM_NAMES, convergence_study, get_problem
from .source import BUILTIN_POTENTIALS
from .state import cons_to_prim
from .stepper import CflPolicy, compute_dt, integrate
from .weno import WenoVariant

_FLOAT_FMT = "%.17g"


@dataclass
class RunConfig:
    """Everything one solver invocation needs; seed-free and deterministic."""

    problem: str = "sod"
    nx: int = 0
    ny: int = 0
    weno: str = "ao"
    limiter: str = "adaptive"  # on | off | adaptive
    cfl_main: float = 0.95
    cfl_safe: float = W_HAT
    t_final: float | None = None
    out_dir: str = "out"
    fmt: str = "csv"  # csv | vtk
    cuts: tuple = ()
    convergence: tuple = ()
    timing: tuple = ()
    eps_tilde: float | None = None
    v_t: float | None = None
    potential: str = ""
    potential_params: dict = dc_field(default_factory=dict)
    snapshots: int = 0  # intermediate field outputs, evenly spaced in time

    def problem_params(self):
        p = {}
        if self.eps_tilde is not None:
            p["eps_tilde"] = self.eps_tilde
        if self.v_t is not None:
            p["v_t"] = self.v_t
        return p

    def validate(self):
        if self.weno not in ("js", "z", "ao"):
            raise ConfigError("weno must be one of js, z, ao")
        if self.limiter not in ("on", "off", "adaptive"):
            raise ConfigError("limiter must be one of on, off, adaptive")
        if self.fmt not in ("csv", "vtk"):
            raise ConfigError("format must be csv or vtk")
        if self.limiter != "off" and self.cfl_safe > W_HAT + 1e-15:
            raise ConfigError("cfl_safe must not exceed 1/12 with the limiter")
        spec = get_problem(self.problem, **self.problem_params())
        if self.ny and spec.dim == 1:
            raise ConfigError("problem %r is one-dimensional" % self.problem)
        if self.potential:
            if self.potential not in BUILTIN_POTENTIALS:
                raise ConfigError(
                    "unknown potential %r (built-ins: %s)"
                    % (self.potential, ", ".join(sorted(BUILTIN_POTENTIALS))))
            try:
                spec.potential = BUILTIN_POTENTIALS[self.potential](
                    **self.potential_params)
            except TypeError as exc:
                raise ConfigError("bad potential parameters: %s" % exc) from exc
        return spec


@dataclass
class RunManifest:
    """Run record: config echo, counters and output checksums."""

    config: dict
    wall_clock: float = 0.0
    steps: int = 0
    retries: int = 0
    limiter_activations: int = 0
    files: dict = dc_field(default_factory=dict)

    def write(self, path):
        lines = []
        for k in sorted(self.config):
            lines.append("config.%s = %s" % (k, self.config[k]))
        lines.append("wall_clock_s = %.6f" % self.wall_clock)
        lines.append("steps = %d" % self.steps)
        lines.append("retries = %d" % self.retries)
        lines.append("limiter_activations = %d" % self.limiter_activations)
        for name in sorted(self.files):
            lines.append("sha256.%s = %s" % (name, self.files[name]))
        Path(path).write_text("\n".join(lines) + "\n")


def _checksum(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_csv(path, header, columns):
    """Full-precision, newline-terminated CSV with a single header row."""
    rows = np.column_stack(columns)
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_FLOAT_FMT % v for v in row) + "\n")


def _field_columns(fld: Field):
    """Coordinates plus primitive columns (2-D adds trace and det p)."""
    mesh = fld.mesh
    V = cons_to_prim(fld.interior)
    if mesh.dim == 1:
        x = mesh.x_centers()
        header = ["x"] + list(PRIM_NAMES)
        cols = [x] + [V[:, k] for k in range(6)]
        return header, cols
    X, Y = mesh.interior_meshgrid()
    trace = V[..., 3] + V[..., 5]
    det = V[..., 3] * V[..., 5] - V[..., 4] ** 2
    header = ["x", "y"] + list(PRIM_NAMES) + ["p_trace", "p_det"]
    cols = [X.ravel(), Y.ravel()] + [V[..., k].ravel() for k in range(6)]
    cols += [trace.ravel(), det.ravel()]
    return header, cols


def write_field_csv(fld: Field, path):
    header, cols = _field_columns(fld)
    _write_csv(path, header, cols)


def write_field_vtk(fld: Field, path):
    """Legacy structured-points ASCII VTK of the 2-D primitive fields."""
    mesh = fld.mesh
    if mesh.dim != 2:
        raise ConfigError("VTK output is for 2-D fields")
    V = cons_to_prim(fld.interior)
    extra = {
        "p_trace": V[..., 3] + V[..., 5],
        "p_det": V[..., 3] * V[..., 5] - V[..., 4] ** 2,
    }
    with open(path, "w", newline="\n") as f:
        f.write("# vtk DataFile Version 2.0\n")
        f.write("tenmom field\nASCII\nDATASET STRUCTURED_POINTS\n")
        f.write("DIMENSIONS %d %d 1\n" % (mesh.nx, mesh.ny))
        f.write("ORIGIN %.17g %.17g 0\n"
                % (mesh.x0 + 0.5 * mesh.dx, mesh.y0 + 0.5 * mesh.dy))
        f.write("SPACING %.17g %.17g 1\n" % (mesh.dx, mesh.dy))
        f.write("POINT_DATA %d\n" % (mesh.nx * mesh.ny))
        names = list(PRIM_NAMES) + list(extra)
        for name in names:
            data = extra[name] if name in extra else V[..., PRIM_NAMES.index(name)]
            f.write("SCALARS %s double 1\nLOOKUP_TABLE default\n" % name)
            # VTK orders x fastest; our arrays are (x, y).
            for j in range(mesh.ny):
                f.write("\n".join(_FLOAT_FMT % v for v in data[:, j]))
                f.write("\n")
    return path


def write_cut_csv(fld: Field, cut, path):
    """1-D cross-section of a 2-D field: "y=VAL", "x=VAL" or "diag"."""
    mesh = fld.mesh
    V = cons_to_prim(fld.interior)
    x = mesh.x_centers()
    y = mesh.y_centers()
    if cut == "diag":
        # Anti-diagonal x + y = const on a square mesh, indexed by x.
        n = min(mesh.nx, mesh.ny)
        idx = np.arange(n)
        rows = V[idx, n - 1 - idx, :]
        coord = x[idx]
        label = "x"
    elif cut.startswith("y="):
        j = int(np.argmin(np.abs(y - float(cut[2:]))))
        rows = V[:, j, :]
        coord = x
        label = "x"
    elif cut.startswith("x="):
        i = int(np.argmin(np.abs(x - float(cut[2:]))))
        rows = V[i, :, :]
        coord = y
        label = "y"
    else:
        raise ConfigError("unknown cut %r (use y=VAL, x=VAL or diag)" % cut)
    _write_csv(path, [label] + list(PRIM_NAMES),
               [coord] + [rows[:, k] for k in range(6)])


def write_convergence_csv(reports_by_variant, path, variable="rho"):
    """Wide table: N then error/order per variant and norm."""
    variants = sorted(reports_by_variant)
    meshes = [r.n for r in reports_by_variant[variants[0]]]
    header = ["N"]
    cols = [np.asarray(meshes, dtype=np.float64)]
    for v in variants:
        reps = reports_by_variant[v]
        for kind in ("linf", "l1", "l2"):
            header.append("%s_%s" % (v, kind))
            cols.append(np.asarray([r.norm(variable, kind) for r in reps]))
            header.append("%s_%s_order" % (v, kind))
            cols.append(np.asarray([
                r.order(variable, kind) if r.order(variable, kind) is not None
                else np.nan
                for r in reps
            ]))
    _write_csv(path, header, cols)


def run(config: RunConfig):
    """Execute one configuration; returns the RunManifest."""
    spec = config.validate()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    variant = WenoVariant(tag=config.weno)
    manifest = RunManifest(config=dict(vars(config)))
    t_start = time.perf_counter()

    if config.convergence:
        # one table over all three reconstructions, like the reference
        # tables (N, error, order per variant)
        reports = {
            tag: convergence_study(
                config.problem, list(config.convergence), WenoVariant(tag),
                limiter="adaptive" if config.limiter == "adaptive" else config.limiter,
                problem_params=config.problem_params(),
            )
            for tag in ("js", "z", "ao")
        }
        path = out_dir / ("%s_convergence.csv" % config.problem)
        write_convergence_csv(reports, path)
        manifest.files[path.name] = _checksum(path)
    elif config.timing:
        rows = timing_comparison(config.problem, list(config.timing),
                                 variant, config.problem_params())
        path = out_dir / ("%s_timing.csv" % config.problem)
        _write_csv(
            path,
            ["N", "adaptive_s", "uniform_s", "speedup"],
            [np.asarray([r[k] for r in rows], dtype=np.float64)
             for k in ("n", "adaptive", "uniform", "speedup")],
        )
        manifest.files[path.name] = _checksum(path)
    else:
        fld = spec.make_field(config.nx or None, config.ny or None)
        t_final = config.t_final if config.t_final is not None else spec.t_final
        policy = CflPolicy(
            mode="adaptive" if config.limiter == "adaptive" else "uniform",
            cfl_main=config.cfl_main, cfl_safe=config.cfl_safe,
        )
        base = "%s_n%d" % (config.problem, fld.mesh.nx)
        snap_times = []
        if config.snapshots > 0:
            snap_times = list(np.linspace(0.0, t_final,
                                          config.snapshots + 1)[1:-1])

        def on_step(f, t, _stats):
            while snap_times and t >= snap_times[0] - 1e-12:
                path = out_dir / ("%s_t%.6f.csv" % (base, snap_times.pop(0)))
                write_field_csv(f, path)
                manifest.files[path.name] = _checksum(path)

        try:
            fld, stats = integrate(
                fld, spec.boundary(), t_final, variant,
                source=spec.potential, limiter=config.limiter, policy=policy,
                on_step=on_step if config.snapshots else None,
            )
        except (PositivityFailure, SolverFailure) as exc:
            raise SolverFailure(
                "run %r failed: %s" % (config.problem, exc)) from exc
        manifest.steps = stats.steps
        manifest.retries = stats.retries
        manifest.limiter_activations = stats.activations
        if config.fmt == "vtk" and spec.dim == 2:
            path = out_dir / (base + ".vtk")
            write_field_vtk(fld, path)
        else:
            path = out_dir / (base + ".csv")
            write_field_csv(fld, path)
        manifest.files[path.name] = _checksum(path)
        for cut in config.cuts:
            cpath = out_dir / ("%s_cut_%s.csv" % (base, cut.replace("=", "")))
            write_cut_csv(fld, cut, cpath)
            manifest.files[cpath.name] = _checksum(cpath)

    manifest.wall_clock = time.perf_counter() - t_start
    manifest.write(out_dir / "run_manifest.txt")
    return manifest


def timing_comparison(pid, mesh_list, variant=WenoVariant(), params=None):
    """Adaptive vs uniform-CFL wall clock per mesh, with speed-up factor."""
    # Warm both code paths on a tiny mesh so one-time JIT/cache loading
    # does not pollute the measured ratios.
    warm = get_problem(pid, **(params or {}))
    for mode in ("adaptive", "on"):
        wf = warm.make_field(12, 12 if warm.dim == 2 else None)
        integrate(wf, warm.boundary(), 3.0 * compute_dt(wf, W_HAT), variant,
                  source=warm.potential, limiter=mode)
    rows = []
    for n in mesh_list:
        spec = get_problem(pid, **(params or {}))
        timings = {}
        for mode in ("adaptive", "on"):
            fld = spec.make_field(n, n if spec.dim == 2 else None)
            t0 = time.perf_counter()
            integrate(fld, spec.boundary(), spec.t_final, variant,
                      source=spec.potential, limiter=mode)
            timings[mode] = time.perf_counter() - t0
        rows.append({
            "n": n,
            "adaptive": timings["adaptive"],
            "uniform": timings["on"],
            "speedup": timings["on"] / timings["adaptive"],
        })
    return rows


def _parse_config_file(path):
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("bad config line %r" % raw)
        key, val = (s.strip() for s in line.split("=", 1))
        out[key] = val
    return out


def _int_list(text):
    return tuple(int(s) for s in text.split(",") if s.strip())


def build_config(argv=None):
    ap = argparse.ArgumentParser(
        prog="tenmom",
        description="Ten-Moment positivity-preserving WENO simulator",
    )
    ap.add_argument("config", nargs="?", help="flat key=value config file")
    ap.add_argument("--problem")
    ap.add_argument("--nx", type=int)
    ap.add_argument("--ny", type=int)
    ap.add_argument("--weno", choices=["js", "z", "ao"])
    ap.add_argument("--limiter", choices=["on", "off", "adaptive"])
    ap.add_argument("--cfl", type=float, help="main CFL number")
    ap.add_argument("--cfl-safe", type=float)
    ap.add_argument("--tfinal", type=float)
    ap.add_argument("--out")
    ap.add_argument("--format", choices=["csv", "vtk"])
    ap.add_argument("--convergence", help="comma-separated mesh sizes")
    ap.add_argument("--timing", help="comma-separated mesh sizes")
    ap.add_argument("--cut", action="append", default=[],
                    help="cross-section of a 2-D field: y=VAL, x=VAL, diag")
    ap.add_argument("--eps-tilde", type=float, help="lowdensity parameter")
    ap.add_argument("--vt", type=float, help="absorption coefficient")
    ap.add_argument("--potential",
                    help="override the problem's potential with a built-in")
    ap.add_argument("--potential-params",
                    help="parameters 'name=value,...' for --potential")
    ap.add_argument("--snapshots", type=int,
                    help="also write this many intermediate field CSVs")
    args = ap.parse_args(argv)

    cfg = RunConfig()
    if args.config:
        file_vals = _parse_config_file(args.config)
        casts = {
            "nx": int, "ny": int, "snapshots": int,
            "cfl_main": float, "cfl_safe": float,
            "t_final": float, "eps_tilde": float, "v_t": float,
            "convergence": _int_list, "timing": _int_list,
            "potential_params": lambda s: {
                k.strip(): float(v)
                for k, v in (kv.split("=", 1) for kv in s.split(","))},
            "cuts": lambda s: tuple(t.strip() for t in s.split(";") if t.strip()),
        }
        for key, val in file_vals.items():
            if not hasattr(cfg, key):
                raise ConfigError("unknown config key %r" % key)
            setattr(cfg, key, casts.get(key, str)(val))
    overrides = {
        "problem": args.problem, "weno": args.weno, "limiter": args.limiter,
        "cfl_main": args.cfl, "cfl_safe": args.cfl_safe,
        "t_final": args.tfinal, "out_dir": args.out, "fmt": args.format,
        "eps_tilde": args.eps_tilde, "v_t": args.vt,
    }
    for key, val in overrides.items():
        if val is not None:
            setattr(cfg, key, val)
    if args.nx is not None:
        cfg.nx = args.nx
    if args.ny is not None:
        cfg.ny = args.ny
    if args.convergence:
        cfg.convergence = _int_list(args.convergence)
    if args.timing:
        cfg.timing = _int_list(args.timing)
    if args.cut:
        cfg.cuts = tuple(args.cut)
    if args.snapshots is not None:
        cfg.snapshots = args.snapshots
    if args.potential:
        cfg.potential = args.potential
    if args.potential_params:
        cfg.potential_params = {
            k.strip(): float(v)
            for k, v in (kv.split("=", 1)
                         for kv in args.potential_params.split(","))
        }
    return cfg


def main(argv=None):
    config = build_config(argv)
    manifest = run(config)
    print("wrote %s (steps=%d, retries=%d, activations=%d, %.2fs)" % (
        ", ".join(sorted(manifest.files)), manifest.steps,
        manifest.retries, manifest.limiter_activations, manifest.wall_clock,
    ))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
