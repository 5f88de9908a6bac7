"""Sweep scheduling, config ingestion, and figure-data emission.

Configs are INI files (configparser) with every physical input in units
of kappa.  Sweeps evaluate each grid point independently, so a process
pool can fan them out; records are always emitted in grid order with a
fixed floating-point format, making the CSV output bit-identical for a
given config regardless of worker count.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fockspace import normal_config, number, vacuum_state
from .model import (
    SystemParams,
    cooling_channel,
    hamiltonian_probe_frame,
    merit_and_stability,
    probe_frame_channels,
    rates_updown,
)
from .normalmodes import diagonalize
from .dynamics import EvolutionSpec, evolve, quasi_steady_state, steady_state
from .observables import (
    UndefinedCorrelation,
    g2_of_operator,
    g2_zero,
    output_field_operator,
    populations,
)
from . import model as _model

SCAN_AXES = ("P", "omega_m", "delta_b", "delta_bbar", "zeta", "alpha_e",
             "probe_strength")
PIPELINES = ("master_equation", "effective_hamiltonian")
DEFAULT_TRUNCATION = 4


class ConfigError(Exception):
    """A malformed or inconsistent run configuration."""


# ---------------------------------------------------------------------------
# Point specification and parameter resolution


@dataclass
class PointSpec:
    """Fully resolved inputs of one grid evaluation (kappa units)."""

    g0: float = 1.0
    P: float | None = None
    omega_m: float | None = None
    delta_b: float | None = None
    delta_bbar: float | None = None
    zeta: float | None = None
    r: float | None = None
    alpha_e: float = 0.0
    probe_strength: float = 0.02
    gamma_m: float = 0.0
    n_th: float = 0.0
    delta_a: float | None = None
    probe_freq: float | None = None
    J: float = 0.0
    zeta_mode: str = "fixed"            # fixed | inv_sqrt_P
    alpha_e_mode: str = "fixed"         # fixed | sqrt_zeta
    d_rates_mode: str = "derived"       # derived | imposed | kappa_inv_sqrt_P
    gamma_down: float = 0.0
    gamma_up: float = 0.0
    cooling: str = "effective"          # effective | off
    pipeline: str = "master_equation"
    truncation: int = DEFAULT_TRUNCATION
    paper_fidelity: bool = False

    def resolve(self) -> SystemParams:
        g0 = self.g0
        omega_m = self.omega_m
        if omega_m is None:
            if self.P is None:
                raise ConfigError("need omega_m or P")
            omega_m = self.P / g0 ** 2 if g0 > 0 else None
            if omega_m is None:
                raise ConfigError("P given with g0 = 0; set omega_m directly")
        zeta = self.zeta
        if self.zeta_mode == "inv_sqrt_P":
            P = self.P if self.P is not None else g0 ** 2 * omega_m
            zeta = 1.0 / math.sqrt(P)
        elif self.zeta_mode != "fixed":
            raise ConfigError(f"unknown zeta_mode {self.zeta_mode!r}")
        if zeta is not None:
            r = math.sqrt(max(1.0 - zeta * zeta, 0.0))
        elif self.r is not None:
            r = self.r
        else:
            raise ConfigError("need zeta or r")
        alpha_e = self.alpha_e
        if self.alpha_e_mode == "sqrt_zeta":
            if zeta is None:
                zeta = math.sqrt(max(1.0 - r * r, 0.0))
            alpha_e = self.alpha_e * math.sqrt(zeta)
        elif self.alpha_e_mode != "fixed":
            raise ConfigError(f"unknown alpha_e_mode {self.alpha_e_mode!r}")
        delta_b = self.delta_b
        if self.delta_bbar is not None:
            delta_b = _delta_b_from_bbar(self.delta_bbar, omega_m, r,
                                         self.paper_fidelity)
        if delta_b is None:
            raise ConfigError("need delta_b or delta_bbar")
        return SystemParams(
            delta_b=delta_b, omega_m=omega_m, g0=g0, kappa=1.0, r=r,
            delta_a=self.delta_a, gamma_m=self.gamma_m, n_th=self.n_th,
            alpha_e=alpha_e, probe_strength=self.probe_strength,
            probe_freq=self.probe_freq, J=self.J,
        )

    def d_rates(self, p: SystemParams) -> tuple[float, float] | None:
        if self.d_rates_mode == "derived":
            return None
        if self.d_rates_mode == "imposed":
            return (self.gamma_down, self.gamma_up)
        if self.d_rates_mode == "kappa_inv_sqrt_P":
            g = 1.0 / math.sqrt(p.merit)
            return (g, g)
        raise ConfigError(f"unknown d_rates_mode {self.d_rates_mode!r}")


def _delta_b_from_bbar(delta_bbar: float, omega_m: float, r: float,
                       paper_fidelity: bool) -> float:
    # invert delta_bbar(delta_b); xi_plus is within O(eta^2) of 1 so a
    # few fixed-point rounds converge to machine precision
    delta_b = delta_bbar
    for _ in range(6):
        from .normalmodes import BilinearParams

        nm = diagonalize(BilinearParams.from_r(delta_b, omega_m, r))
        target = (delta_b + nm.delta_shift) if paper_fidelity else nm.omega_plus
        delta_b += delta_bbar - target
    return delta_b


# ---------------------------------------------------------------------------
# Single-point evaluation


# wall_ms stays on the record object as a runtime diagnostic but is not
# written out: identical configs must yield bit-identical CSV bytes
RECORD_COLUMNS = (
    "index", "pipeline", "truncation", "paper_fidelity",
    "P", "g0", "omega_m", "delta_b", "delta_bbar", "zeta", "r", "eta",
    "g_nl", "alpha_e", "probe_strength", "gamma_m", "n_th",
    "gamma_down", "gamma_up", "cooling_rate",
    "g2_bbar", "g2_output", "n_a", "n_bbar", "n_d",
    "stable", "merit_ok", "conv_g2_plus1", "conv_rel_change",
    "error",
)


@dataclass
class ResultRecord:
    """One flat, self-describing row of sweep output."""

    index: int
    pipeline: str
    truncation: int
    paper_fidelity: bool
    P: float = math.nan
    g0: float = math.nan
    omega_m: float = math.nan
    delta_b: float = math.nan
    delta_bbar: float = math.nan
    zeta: float = math.nan
    r: float = math.nan
    eta: float = math.nan
    g_nl: float = math.nan
    alpha_e: float = math.nan
    probe_strength: float = math.nan
    gamma_m: float = math.nan
    n_th: float = math.nan
    gamma_down: float = math.nan
    gamma_up: float = math.nan
    cooling_rate: float = math.nan
    g2_bbar: float = math.nan
    g2_output: float = math.nan
    n_a: float = math.nan
    n_bbar: float = math.nan
    n_d: float = math.nan
    stable: bool = True
    merit_ok: bool = False
    conv_g2_plus1: float = math.nan
    conv_rel_change: float = math.nan
    wall_ms: float = math.nan
    error: str = ""

    def row(self) -> list[str]:
        return [_format(getattr(self, name)) for name in RECORD_COLUMNS]


def _format(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def evaluate_point(index: int, spec: PointSpec) -> ResultRecord:
    """Evaluate one grid point; failures land in the record, not raised."""
    rec = ResultRecord(index=index, pipeline=spec.pipeline,
                       truncation=spec.truncation,
                       paper_fidelity=spec.paper_fidelity)
    start = time.perf_counter()
    try:
        p = spec.resolve()
        nm = p.normal_modes()
        op = _model.operating_point(p, nm, spec.paper_fidelity) if nm.stable else None
        rec.P = p.merit
        rec.g0, rec.omega_m, rec.delta_b = p.g0, p.omega_m, p.delta_b
        rec.zeta, rec.r, rec.eta = p.zeta, p.r, p.eta
        rec.g_nl = p.g_nl if p.stable else math.nan
        rec.alpha_e, rec.probe_strength = p.alpha_e, p.probe_strength
        rec.gamma_m, rec.n_th = p.gamma_m, p.n_th
        rec.stable = p.stable
        if op is not None:
            rec.delta_bbar = op.delta_bbar
        report = merit_and_stability(p)
        rec.merit_ok = report.passed
        if not p.stable:
            rec.error = "unstable (r >= 1)"
            return rec
        rates = spec.d_rates(p)
        down, up = rates if rates is not None else rates_updown(p)
        rec.gamma_down, rec.gamma_up = down, up
        if spec.cooling == "effective" and p.alpha_e > 0:
            rec.cooling_rate = 4.0 * (p.g_nl * p.alpha_e) ** 2 / p.kappa
        else:
            rec.cooling_rate = 0.0
        state = _solve_point(p, nm, spec, (down, up))
        rec.g2_bbar = _safe_g2(lambda: g2_zero(state))
        rec.g2_output = _safe_g2(
            lambda: g2_of_operator(state, output_field_operator(nm, state.config)))
        pops = populations(state)
        rec.n_a, rec.n_bbar, rec.n_d = pops["a"], pops["bbar"], pops["d"]
    except Exception as exc:  # per-point failures never abort the sweep
        rec.error = f"{type(exc).__name__}: {exc}"
    finally:
        rec.wall_ms = 1e3 * (time.perf_counter() - start)
    return rec


def _safe_g2(fn) -> float:
    try:
        return fn()
    except UndefinedCorrelation:
        return math.nan


def _solve_point(p: SystemParams, nm, spec: PointSpec,
                 d_rates: tuple[float, float]):
    cfg = normal_config(spec.truncation)
    include_cooling = spec.cooling == "effective" and p.alpha_e > 0
    if spec.pipeline == "master_equation":
        h = hamiltonian_probe_frame(p, nm, cfg, paper_fidelity=spec.paper_fidelity)
        channels = probe_frame_channels(p, nm, cfg, d_rates=d_rates,
                                        include_cooling=include_cooling)
        return steady_state(h, channels, check_unique=False)
    if spec.pipeline == "effective_hamiltonian":
        h = _model.effective_hamiltonian(p, nm, cfg,
                                         paper_fidelity=spec.paper_fidelity)
        # no-jump counterparts of the incoherent d channels: cooling decay
        # plus the heating/emission broadening, vacuum-relative
        extra = 0.0
        if include_cooling:
            extra += 4.0 * (p.g_nl * p.alpha_e) ** 2 / p.kappa
        extra += d_rates[0] + d_rates[1]
        if extra > 0:
            h = h + (-0.5j * extra) * number(cfg, "d")
        return quasi_steady_state(h)
    raise ConfigError(f"unknown pipeline {spec.pipeline!r}")


# ---------------------------------------------------------------------------
# Sweeps


@dataclass
class SweepSpec:
    """Grid definition: a base point and up to two scan axes."""

    base: PointSpec
    axes: tuple[tuple[str, np.ndarray], ...] = ()
    convergence_recheck: bool = True

    def __post_init__(self):
        if len(self.axes) > 2:
            raise ConfigError("at most two scan axes")
        for name, values in self.axes:
            if name not in SCAN_AXES:
                raise ConfigError(f"cannot scan {name!r}; choose from {SCAN_AXES}")
            if len(values) < 1:
                raise ConfigError(f"axis {name!r} has an empty grid")

    def points(self) -> list[PointSpec]:
        from dataclasses import replace
        from itertools import product

        if not self.axes:
            return [replace(self.base)]
        names = [name for name, _ in self.axes]
        grids = [values for _, values in self.axes]
        pts = []
        for combo in product(*grids):
            override = dict(zip(names, (float(v) for v in combo)))
            # a scanned quantity displaces whatever it is derived from
            if "P" in override:
                override["omega_m"] = None
            if "omega_m" in override:
                override.setdefault("P", None)
            if "delta_b" in override:
                override["delta_bbar"] = None
            if "delta_bbar" in override:
                override.setdefault("delta_b", None)
            if "zeta" in override:
                override["r"] = None
            pts.append(replace(self.base, **override))
        return pts


def _eval_task(task):
    index, spec = task
    return evaluate_point(index, spec)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[ResultRecord]:
    """Evaluate the grid, deterministically ordered, never aborting on a
    per-point failure; the minimal-g2 point gets a truncation +1 re-run
    recorded in its convergence columns."""
    tasks = list(enumerate(spec.points()))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_eval_task, tasks, chunksize=1))
    else:
        records = [_eval_task(t) for t in tasks]
    records.sort(key=lambda r: r.index)

    if spec.convergence_recheck:
        finite = [r for r in records if math.isfinite(r.g2_bbar) and not r.error]
        if finite:
            from dataclasses import replace

            best = min(finite, key=lambda r: r.g2_bbar)
            bumped = replace(tasks[best.index][1],
                             truncation=tasks[best.index][1].truncation + 1)
            check = evaluate_point(best.index, bumped)
            if math.isfinite(check.g2_bbar):
                best.conv_g2_plus1 = check.g2_bbar
                best.conv_rel_change = abs(check.g2_bbar - best.g2_bbar) / best.g2_bbar
    return records


def write_records(records: list[ResultRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())


# ---------------------------------------------------------------------------
# Time traces (probe turn-on)


TRACE_COLUMNS = ("cooling_on", "tau", "g2_bbar", "n_a", "n_bbar", "n_d",
                 "trace_drift")


def run_time_trace(spec: PointSpec, t_final: float, samples: int = 81,
                   cooling_compare: bool = True) -> list[dict]:
    """g2(0) and populations versus kappa*t from the probe turn-on.

    Runs the configured cooling setting and, when cooling_compare is on,
    the alpha_e = 0 reference as well.  Integrator failures terminate
    the affected trace but keep the partial record.
    """
    from dataclasses import replace

    settings = [spec]
    if cooling_compare and spec.alpha_e > 0:
        settings.append(replace(spec, alpha_e=0.0))
    rows: list[dict] = []
    times = np.linspace(0.0, t_final, samples)[1:]
    for setting in settings:
        p = setting.resolve()
        nm = p.normal_modes()
        cfg = normal_config(setting.truncation)
        h = hamiltonian_probe_frame(p, nm, cfg, paper_fidelity=setting.paper_fidelity)
        rates = setting.d_rates(p)
        down, up = rates if rates is not None else rates_updown(p)
        channels = probe_frame_channels(
            p, nm, cfg, d_rates=(down, up),
            include_cooling=setting.cooling == "effective" and p.alpha_e > 0)
        evo = EvolutionSpec(t_final=t_final, record_times=times)
        cooling_on = 1 if p.alpha_e > 0 else 0
        try:
            traj = evolve(vacuum_state(cfg), h, channels, evo)
        except RuntimeError as exc:
            rows.append({"cooling_on": cooling_on, "tau": math.nan,
                         "g2_bbar": math.nan, "n_a": math.nan, "n_bbar": math.nan,
                         "n_d": math.nan, "trace_drift": math.nan,
                         "error": str(exc)})
            continue
        for t, state, drift in zip(traj.times, traj.states,
                                   traj.diagnostics["trace_drift"]):
            pops = populations(state)
            rows.append({
                "cooling_on": cooling_on,
                "tau": t,
                "g2_bbar": _safe_g2(lambda: g2_zero(state)),
                "n_a": pops["a"],
                "n_bbar": pops["bbar"],
                "n_d": pops["d"],
                "trace_drift": drift,
            })
    return rows


def write_trace(rows: list[dict], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for row in rows:
            writer.writerow([_format(float(row[c])) if c != "cooling_on"
                             else _format(row[c]) for c in TRACE_COLUMNS])


# ---------------------------------------------------------------------------
# Reports


def feasibility_text(spec: PointSpec, threshold: float = 10.0) -> str:
    p = spec.resolve()
    report = merit_and_stability(p, threshold)
    lines = [
        f"P = g0^2 omega_m / kappa^3 = {report.P:.6g}",
        f"r = {report.r:.6g}   (instability margin 1 - r = {report.instability_margin:.6g})",
        f"stable: {'yes' if report.stable else 'NO'}",
    ]
    if report.stable and p.zeta > 0:
        lines.append(f"gamma_down = {report.gamma_down:.6g}, "
                     f"gamma_up = {report.gamma_up:.6g}  (units of kappa)")
    for link in report.links:
        status = "ok " if link.ok else "FAIL"
        lines.append(f"  [{status}] {link.name:22s} ratio = {link.ratio:.4g} "
                     f"(threshold {report.threshold:g})")
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def diag_text(spec: PointSpec) -> str:
    p = spec.resolve()
    nm = p.normal_modes()
    lines = [
        f"eta = omega_m/delta_b = {nm.eta:.8g}",
        f"r = {nm.r:.8g}, zeta = {nm.zeta_exact:.8g}",
        f"mixing angle theta = {nm.theta:.8g} (alpha={nm.alpha:.8g}, beta={nm.beta:.8g})",
        f"xi_plus = {nm.xi_plus:.12g}, xi_minus = {nm.xi_minus:.12g}",
        f"omega_plus = {nm.omega_plus:.10g}, omega_minus = {nm.omega_minus:.10g}",
        f"first-order shift delta = {nm.delta_shift:.8g}, "
        f"exact shift = {nm.omega_plus - p.delta_b:.8g}",
        f"stable: {'yes' if nm.stable else 'NO (imaginary soft frequency)'}",
        f"d_plus coefficients  (b, b+, c, c+): {np.array2string(nm.coeffs_dplus, precision=8)}",
        f"d_minus coefficients (b, b+, c, c+): {np.array2string(nm.coeffs_dminus, precision=8)}",
        f"g_nl = g0/sqrt(zeta) = {p.g_nl:.8g}",
    ]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Config parsing


def _read_config(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keys like P and J are case-sensitive
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    return parser


_POINT_FLOAT_KEYS = ("g0", "P", "omega_m", "delta_b", "delta_bbar", "zeta", "r",
                     "alpha_e", "probe_strength", "gamma_m", "n_th", "delta_a",
                     "probe_freq", "J", "gamma_down", "gamma_up")
_POINT_STR_KEYS = ("zeta_mode", "alpha_e_mode", "d_rates_mode", "cooling")


def _point_from_config(parser: configparser.ConfigParser,
                       truncation: int | None,
                       paper_fidelity: bool) -> PointSpec:
    if "params" not in parser:
        raise ConfigError("config needs a [params] section")
    params = parser["params"]
    known = set(_POINT_FLOAT_KEYS) | set(_POINT_STR_KEYS)
    unknown = set(params) - known
    if unknown:
        raise ConfigError(f"unknown [params] keys: {sorted(unknown)}")
    kwargs = {}
    for key in _POINT_FLOAT_KEYS:
        if key in params:
            try:
                kwargs[key] = params.getfloat(key)
            except ValueError:
                raise ConfigError(f"[params] {key} is not a number: {params[key]!r}")
    for key in _POINT_STR_KEYS:
        if key in params:
            kwargs[key] = params[key].strip()
    run = parser["run"] if "run" in parser else {}
    pipeline = run.get("pipeline", "master_equation").strip()
    if pipeline not in PIPELINES:
        raise ConfigError(f"unknown pipeline {pipeline!r}; choose from {PIPELINES}")
    trunc = truncation if truncation is not None else int(run.get("truncation", DEFAULT_TRUNCATION))
    if trunc < 2:
        raise ConfigError("truncation must be at least 2")
    fidelity = paper_fidelity or _as_bool(run.get("paper_fidelity", "false"))
    return PointSpec(pipeline=pipeline, truncation=trunc,
                     paper_fidelity=fidelity, **kwargs)


def _as_bool(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_grid(text: str) -> np.ndarray:
    """Grid syntax: 'lin: start, stop, num', 'log: start, stop, num', or
    'list: v1 v2 v3'."""
    text = text.strip()
    if ":" not in text:
        raise ConfigError(f"grid needs a 'lin:', 'log:' or 'list:' prefix: {text!r}")
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "list":
        values = np.array([float(v) for v in rest.replace(",", " ").split()])
        if values.size == 0:
            raise ConfigError("empty grid list")
        return values
    try:
        start_s, stop_s, num_s = [v.strip() for v in rest.split(",")]
        start, stop, num = float(start_s), float(stop_s), int(num_s)
    except ValueError:
        raise ConfigError(f"bad grid spec {text!r}")
    if num < 1:
        raise ConfigError("grid size must be >= 1")
    if kind == "lin":
        return np.linspace(start, stop, num)
    if kind == "log":
        if start <= 0 or stop <= 0:
            raise ConfigError("log grid endpoints must be positive")
        return np.geomspace(start, stop, num)
    raise ConfigError(f"unknown grid kind {kind!r}")


def sweep_from_config(path: str, truncation: int | None = None,
                      paper_fidelity: bool = False) -> SweepSpec:
    parser = _read_config(path)
    base = _point_from_config(parser, truncation, paper_fidelity)
    axes = []
    if "sweep" in parser:
        section = parser["sweep"]
        for slot in ("axis1", "axis2"):
            if slot in section:
                name = section[slot].strip()
                grid_key = f"{slot}_grid"
                if grid_key not in section:
                    raise ConfigError(f"missing {grid_key} for {slot}")
                axes.append((name, _parse_grid(section[grid_key])))
    return SweepSpec(base=base, axes=tuple(axes))


# ---------------------------------------------------------------------------
# Entry point


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="softmode",
        description="Photon-blockade simulations near the optomechanical instability",
    )
    parser.add_argument("--workers", type=int, default=1,
                        help="process pool size for sweeps")
    parser.add_argument("--out", default=None, help="output CSV path")
    parser.add_argument("--truncation", type=int, default=None,
                        help="per-mode Fock dimension (default 4)")
    parser.add_argument("--paper-fidelity", action="store_true",
                        help="use first-order couplings and frequencies throughout")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("sweep", "trace", "feasibility", "diag"):
        cmd = sub.add_parser(name)
        cmd.add_argument("config")
    args = parser.parse_args(argv)

    try:
        if args.command == "sweep":
            spec = sweep_from_config(args.config, args.truncation, args.paper_fidelity)
            records = run_sweep(spec, workers=max(1, args.workers))
            out = args.out or "sweep.csv"
            write_records(records, out)
            failures = sum(1 for r in records if r.error)
            print(f"wrote {len(records)} records to {out}"
                  + (f" ({failures} failed points)" if failures else ""))
            return 0
        if args.command == "trace":
            cp = _read_config(args.config)
            spec = _point_from_config(cp, args.truncation, args.paper_fidelity)
            trace_cfg = cp["trace"] if "trace" in cp else {}
            t_final = float(trace_cfg.get("t_final", 40.0))
            samples = int(trace_cfg.get("samples", 81))
            compare = _as_bool(trace_cfg.get("cooling_compare", "true"))
            rows = run_time_trace(spec, t_final, samples, compare)
            out = args.out or "trace.csv"
            write_trace(rows, out)
            print(f"wrote {len(rows)} samples to {out}")
            return 0
        if args.command == "feasibility":
            cp = _read_config(args.config)
            spec = _point_from_config(cp, args.truncation, args.paper_fidelity)
            threshold = float(cp["run"].get("threshold", 10.0)) if "run" in cp else 10.0
            print(feasibility_text(spec, threshold))
            return 0
        if args.command == "diag":
            cp = _read_config(args.config)
            spec = _point_from_config(cp, args.truncation, args.paper_fidelity)
            print(diag_text(spec))
            return 0
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
