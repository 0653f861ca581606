"""Command-line front end: spectra, wavefunction samples, checks, propagators, Fock operators.

Exit codes: 0 success (all checks passed), 1 failed check or runtime error
such as a pole hit, 2 configuration error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import checks, fock, osc1d, osc3d, propagator
from .osc1d import OscParams
from .specfun import default_order

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    m: float = 1.0
    omega: float = 1.0
    dim: int = 1
    n_max: int = 20
    kappa_max: int = 6
    fock_modes: int = 8
    quad_order: int | None = None
    fmt: str | None = None
    out: str | None = None
    tolerances: dict = field(default_factory=dict)

    def validate(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise ConfigError("mass must be positive")
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ConfigError("omega must be positive")
        if self.dim not in (1, 3):
            raise ConfigError("dim must be 1 or 3")
        if self.n_max < 0 or self.kappa_max < 0:
            raise ConfigError("cutoffs must be non-negative")
        if not 1 <= self.fock_modes <= fock.MAX_MODES:
            raise ConfigError(f"fock-modes must be between 1 and {fock.MAX_MODES}")
        if self.quad_order is not None and self.quad_order < 2:
            raise ConfigError("quad-order must be at least 2")
        if self.fmt not in (None, "csv", "json"):
            raise ConfigError("format must be csv or json")
        for name, tol in self.tolerances.items():
            if name != "all" and name not in checks.DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {name!r}")
            if not tol >= 0:
                raise ConfigError(f"tolerance {name!r} must be non-negative")
        return self

    @property
    def params(self) -> OscParams:
        return OscParams(self.m, self.omega)

    def check_settings(self) -> checks.CheckSettings:
        tols = dict(self.tolerances)
        if "all" in tols:
            base = tols.pop("all")
            tols = {**{k: base for k in checks.DEFAULT_TOLERANCES}, **tols}
        return checks.CheckSettings(self.params, self.n_max, self.kappa_max, self.fock_modes,
                                    self.quad_order, tols)


# config-file keys and the RunConfig attribute each one sets
_CONFIG_KEYS = {
    "mass": "m", "m": "m", "omega": "omega", "dim": "dim", "n_max": "n_max",
    "kappa_max": "kappa_max", "fock_modes": "fock_modes", "quad_order": "quad_order",
    "format": "fmt", "out": "out",
}


def _parse_tol(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected NAME=VALUE")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def load_config(args) -> RunConfig:
    cfg = RunConfig(m=args.mass, omega=args.omega, dim=args.dim, n_max=args.n_max,
                    kappa_max=args.kappa_max, fock_modes=args.fock_modes,
                    quad_order=args.quad_order, fmt=args.format, out=args.out,
                    tolerances=dict(args.tol or []))
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a flat JSON object")
        for key, value in data.items():
            if key.startswith("tol_"):
                cfg.tolerances[key[4:]] = float(value)
            elif key in _CONFIG_KEYS:
                setattr(cfg, _CONFIG_KEYS[key], value)
            else:
                raise ConfigError(f"unknown config key {key!r}")
        try:
            cfg.m, cfg.omega = float(cfg.m), float(cfg.omega)
            cfg.dim, cfg.n_max, cfg.kappa_max = int(cfg.dim), int(cfg.n_max), int(cfg.kappa_max)
            cfg.fock_modes = int(cfg.fock_modes)
            cfg.quad_order = None if cfg.quad_order is None else int(cfg.quad_order)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad config value: {exc}") from exc
    return cfg.validate()


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def write_table(cfg: RunConfig, columns, rows, default="csv"):
    fmt = cfg.fmt or default
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    else:
        recs = [{c: (float(v) if isinstance(v, np.floating) else v) for c, v in zip(columns, row)}
                for row in rows]
        buf.write(json.dumps(recs, indent=1) + "\n")
    _emit(cfg, buf.getvalue())


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _complex_columns(prefix, count):
    return [f"{prefix}{i}_{part}" for i in range(count) for part in ("re", "im")]


def _split(values):
    # + 0.0 turns -0.0 into 0.0
    return [x + 0.0 for v in values for x in (float(np.real(v)), float(np.imag(v)))]


def cmd_spectrum(cfg: RunConfig, args):
    p = cfg.params
    if cfg.dim == 1:
        rows = [(n, float(osc1d.energy(p, n))) for n in range(-cfg.n_max, cfg.n_max + 1)]
        write_table(cfg, ["n", "E"], rows)
        return EXIT_OK
    rows = []
    for q in osc3d.enumerate_states(cfg.n_max, cfg.kappa_max):
        n = f"{'-' if q.n_sign < 0 else '+'}{q.n_abs}"
        rows.append((n, q.kappa, q.j, q.l, q.lprime, q.g,
                     osc3d.energy3d(p, q.n_sign, q.n_abs, q.kappa)))
    write_table(cfg, ["n", "kappa", "j", "l", "lprime", "g", "E"], rows)
    return EXIT_OK


def _grid(spec: str, cfg: RunConfig):
    if spec.startswith("hermite"):
        _, _, order = spec.partition(":")
        order = int(order) if order else (cfg.quad_order or default_order(cfg.n_max))
        return osc1d.collocation_grid(cfg.params, order)[0]
    try:
        lo, hi, count = spec.split(",")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise ConfigError(f"grid must be 'min,max,count' or 'hermite[:order]', got {spec!r}") from exc
    if count < 1 or not hi >= lo:
        raise ConfigError("grid needs count >= 1 and max >= min")
    return np.linspace(lo, hi, count)


def cmd_wavefn(cfg: RunConfig, args):
    p = cfg.params
    if cfg.dim == 1:
        z = _grid(args.grid or "-8,8,161", cfg)
        psi = osc1d.wavefunction(p, args.n, z)
        rows = [[float(zz)] + _split(row) for zz, row in zip(z, psi)]
        write_table(cfg, ["z"] + _complex_columns("psi", 4), rows)
        return EXIT_OK
    try:
        qn = osc3d.Qnum3D.from_signed(args.n, args.kappa, args.g, args.negative_zero)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    r = _grid(args.grid or "0,6,121", cfg)
    if np.any(r < 0):
        raise ConfigError("radial grid must be non-negative")
    psi = osc3d.wavefunction3d(p, qn, r, args.theta, args.phi)
    rows = [[float(rr)] + _split(row) for rr, row in zip(r, psi)]
    write_table(cfg, ["r"] + _complex_columns("psi", 4), rows)
    return EXIT_OK


def cmd_check(cfg: RunConfig, args):
    try:
        results = checks.run_suite(args.suite, cfg.check_settings())
    except KeyError as exc:
        raise ConfigError(exc.args[0]) from exc
    passed = all(r.passed for r in results)
    if (cfg.fmt or "json") == "json":
        report = {"suite": args.suite, "passed": passed, "checks": [r.as_dict() for r in results]}
        _emit(cfg, json.dumps(report, indent=1) + "\n")
    else:
        write_table(cfg, ["check", "value", "tolerance", "pass"],
                    [(r.name, r.value, r.tolerance, r.passed) for r in results])
    return EXIT_OK if passed else EXIT_FAIL


def cmd_propagator(cfg: RunConfig, args):
    if cfg.dim != 1:
        raise ConfigError("the propagator is available for dim 1 only")
    p = cfg.params
    cutoff = cfg.n_max if args.cutoff is None else args.cutoff
    if cutoff < 0:
        raise ConfigError("cutoff must be non-negative")
    cols = [f"S{a}{b}_{part}" for a in range(4) for b in range(4) for part in ("re", "im")]
    rows = []
    if args.space == "coordinate":
        z = _grid(args.grid or "-4,4,81", cfg)
        for zz in z:
            s = propagator.coordinate_propagator(p, float(zz), args.dt, args.zp, 0.0, cutoff)
            rows.append([float(zz)] + _split(s.value.ravel()))
        write_table(cfg, ["z"] + cols, rows)
    else:
        p0 = _grid(args.grid or "-3,3,61", cfg)
        for x in p0:
            s = propagator.momentum_propagator(p, float(x), args.pz, args.pzp, cutoff,
                                               epsilon=args.epsilon, form=args.form)
            rows.append([float(x)] + _split(s.value.ravel()))
        write_table(cfg, ["p0"] + cols, rows)
    return EXIT_OK


def fock_modeset(cfg: RunConfig) -> fock.ModeSet:
    p = cfg.params
    if cfg.dim == 1:
        return checks.fock_modes_1d(p, cfg.fock_modes)
    states = list(osc3d.enumerate_states(cfg.n_max, max(cfg.kappa_max, 1)))
    states.sort(key=lambda q: (abs(osc3d.energy3d(p, q.n_sign, q.n_abs, q.kappa)), abs(q.kappa)))
    return fock.ModeSet.three_dim(p, states[:cfg.fock_modes])


def cmd_fock(cfg: RunConfig, args):
    modes = fock_modeset(cfg)
    if args.operator == "hamiltonian":
        op = fock.hamiltonian_normal_ordered(modes)
    elif args.operator == "charge":
        op = fock.charge_operator(modes)
    else:
        if not 0 <= args.mode < modes.size:
            raise ConfigError(f"mode index must be in 0..{modes.size - 1}")
        which = "annihilate" if args.operator == "annihilator" else "create"
        op = fock.ladder(modes, modes.labels[args.mode], which)
    header = [f"operator {args.operator}" + ("" if args.operator in ("hamiltonian", "charge")
                                             else f" mode {args.mode}"),
              f"dim {cfg.dim} mass {_fmt(cfg.m)} omega {_fmt(cfg.omega)}",
              "basis: mode 0 is the most significant bit of the row/column index",
              *modes.describe()]
    buf = io.StringIO()
    fock.write_sparse(op, buf, header)
    _emit(cfg, buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mass", type=float, default=1.0)
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--dim", type=int, default=1)
    common.add_argument("--n-max", type=int, default=20)
    common.add_argument("--kappa-max", type=int, default=6)
    common.add_argument("--fock-modes", type=int, default=8)
    common.add_argument("--quad-order", type=int, default=None)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--config", default=None, help="flat JSON file overriding flags")
    common.add_argument("--tol", type=_parse_tol, action="append",
                        help="check tolerance NAME=VALUE; NAME may be 'all'")

    parser = argparse.ArgumentParser(prog="diracosc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("spectrum", parents=[common], help="energy table")

    w = sub.add_parser("wavefn", parents=[common], help="sample a stationary spinor")
    w.add_argument("--n", type=int, default=0)
    w.add_argument("--kappa", type=int, default=-1)
    w.add_argument("--g", type=float, default=0.5)
    w.add_argument("--negative-zero", action="store_true")
    w.add_argument("--theta", type=float, default=0.7)
    w.add_argument("--phi", type=float, default=0.3)
    w.add_argument("--grid", default=None, help="'min,max,count' or 'hermite[:order]'")

    c = sub.add_parser("check", parents=[common], help="run verification suites")
    c.add_argument("--suite", default="all")

    pr = sub.add_parser("propagator", parents=[common], help="propagator on a grid")
    pr.add_argument("--space", choices=("coordinate", "momentum"), default="coordinate")
    pr.add_argument("--cutoff", type=int, default=None)
    pr.add_argument("--grid", default=None)
    pr.add_argument("--dt", type=float, default=0.5)
    pr.add_argument("--zp", type=float, default=0.0)
    pr.add_argument("--pz", type=float, default=0.3)
    pr.add_argument("--pzp", type=float, default=0.3)
    pr.add_argument("--epsilon", type=float, default=0.0)
    pr.add_argument("--form", choices=("exact", "printed"), default="exact")

    f = sub.add_parser("fock", parents=[common], help="export a Fock-space operator")
    f.add_argument("--operator", choices=("hamiltonian", "charge", "annihilator", "creator"),
                   default="hamiltonian")
    f.add_argument("--mode", type=int, default=0)
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefn": cmd_wavefn,
    "check": cmd_check,
    "propagator": cmd_propagator,
    "fock": cmd_fock,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on bad flags
    try:
        cfg = load_config(args)
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"diracosc: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except propagator.PoleError as exc:
        print(f"diracosc: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
