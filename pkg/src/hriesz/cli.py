"""Command-line front end: ``hriesz <subcommand> [options]``.

Every subcommand prints one table (CSV by default, or JSON) with the
columns check, params, value, reference, abs_defect, rel_defect, tolerance,
passed.  Exit status is 0 when every row passes, 1 when some row fails and
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields

from .checks import DEFAULT_TOLERANCES, Checks
from .transference import builtin

COLUMNS = ["check", "params", "value", "reference", "abs_defect", "rel_defect", "tolerance", "passed"]
CONFIG_ENV = "HRIESZ_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    quad_points: int = 64
    trunc: int = 20
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    format: str = "csv"
    # keys given explicitly in a config file
    explicit: frozenset = frozenset()

    def validate(self):
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, not {self.format!r}")
        if not isinstance(self.quad_points, int) or self.quad_points < 1:
            raise ConfigError("quad_points must be a positive integer")
        if not isinstance(self.trunc, int) or self.trunc < 1:
            raise ConfigError("trunc must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit nonnegative integer")
        for k, v in self.tolerances.items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance key {k!r}")
            if not isinstance(v, (int, float)) or not v > 0:
                raise ConfigError(f"tolerance {k!r} must be positive")
        return self


def load_config(path: str | None) -> RunConfig:
    """RunConfig from a JSON object file, or defaults when path is None."""
    if path is None:
        return RunConfig().validate()
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    names = {f.name for f in fields(RunConfig)} - {"explicit"}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**data, explicit=frozenset(data)).validate()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "pass" if x else "fail"
    return format(x, ".17g")


def _json_num(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return None
    return x


def render(rows, fmt: str) -> str:
    rows = sorted(rows, key=lambda r: r.sort_key())
    if fmt == "json":
        objs = [{
            "check": r.check,
            "params": r.param_text(),
            "value": _json_num(r.value),
            "reference": _json_num(r.reference),
            "abs_defect": _json_num(r.abs_defect),
            "rel_defect": _json_num(r.rel_defect),
            "tolerance": _json_num(r.tolerance),
            "passed": r.passed,
        } for r in rows]
        return json.dumps(objs, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([r.check, r.param_text(), _fmt(r.value), _fmt(r.reference), _fmt(r.abs_defect),
                    _fmt(r.rel_defect), _fmt(r.tolerance), _fmt(r.passed)])
    return buf.getvalue()


def _int_list(text):
    try:
        return tuple(int(v) for v in text.split(",") if v != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default=None)
    common.add_argument("--out", default=None, help="write the table to FILE")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--config", default=None, help=f"JSON RunConfig (else ${CONFIG_ENV})")
    common.add_argument("--quad", type=int, default=None, help="quadrature points")

    parser = argparse.ArgumentParser(prog="hriesz", description="Riesz transform verification suites.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, default, text in (("gamma-ratio", 20, "Gamma(n/2)/(sqrt(pi) Gamma((n+1)/2)) table"),
                                ("kernel-bound", 10, "L^1 bound of the heat-type kernel"),
                                ("lemma34", 20, "ratio of radial integrals against its closed form")):
        add(name, text).add_argument("--n-max", type=int, default=default)

    p = add("ortho", "orthonormality of the multiple Laguerre basis")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=_int_list, default=None)
    p.add_argument("--trunc", type=int, default=None)

    p = add("riesz-l2", "square-function identity in Hermite coefficients")
    p.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 4])
    p.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--trials", type=int, default=100)

    p = add("factorize", "factorization of monomial Riesz transforms")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, nargs="+", default=[2, 3])
    p.add_argument("--trunc", type=int, default=None)

    p = add("commutator", "measured ladder commutator constant")
    p.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    p.add_argument("--trunc", type=int, default=None)

    p = add("intertwine", "special Hermite versus Laguerre Riesz transform")
    p.add_argument("--n", type=int, nargs="+", default=[1, 2])
    p.add_argument("--m", type=_int_list, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--trunc", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--profile", choices=["gaussian", "finite-psi", "both"], default="both")

    p = add("weighted-probe", "weighted L^p ratios of the Laguerre Riesz transform")
    p.add_argument("--n", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--m", type=_int_list, default=None)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--p", type=float, nargs="+", default=[2.0, 4.0])

    p = add("transference", "line versus circle multiplier norms")
    p.add_argument("--multiplier", choices=["identity", "shift", "hilbert"], nargs="+",
                   default=["identity", "hilbert"])
    p.add_argument("--p", type=float, nargs="+", default=[2.0, 4.0])

    p = add("hecke", "radial scaling exponent of Hecke-Bochner coefficients")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=2)

    add("projection", "twisted-convolution projection algebra").add_argument("--k-max", type=int, default=2)
    add("all", "run the full suite")
    return parser


def _trunc(args, cfg, default):
    if getattr(args, "trunc", None) is not None:
        return args.trunc
    if "trunc" in cfg.explicit:
        return cfg.trunc
    return default


def _pair(args, label):
    if (args.p is None) != (args.q is None):
        raise ConfigError(f"{label} needs both --p and --q")
    return None if args.p is None else ((args.p, args.q),)


def run_checks(args, cfg: RunConfig):
    ck = Checks(cfg.tolerances, cfg.seed, cfg.quad_points)
    cmd = args.command
    if cmd == "gamma-ratio":
        return ck.gamma_ratio(args.n_max)
    if cmd == "kernel-bound":
        return ck.kernel_bound(args.n_max)
    if cmd == "lemma34":
        return ck.lemma34(args.n_max)
    if cmd == "ortho":
        if args.m is not None and args.n is not None and len(args.m) != args.n:
            raise ConfigError("--m must have --n entries")
        if args.m is not None:
            ns = (len(args.m),)
        else:
            ns = (args.n,) if args.n is not None else (1, 2, 3)
        return ck.ortho(ns, args.m, _trunc(args, cfg, 6), cfg.quad_points)
    if cmd == "riesz-l2":
        return ck.riesz_l2(tuple(args.n), tuple(args.lam), _trunc(args, cfg, 8), args.trials)
    if cmd == "factorize":
        cells = _pair(args, "factorize") or ((1, 1), (1, 2), (2, 2))
        return ck.factorize(cells, tuple(args.n), _trunc(args, cfg, 10))
    if cmd == "commutator":
        return ck.commutator(tuple(args.lam), _trunc(args, cfg, 12))
    if cmd == "intertwine":
        if args.m is not None:
            if len(args.n) != 1 or len(args.m) != args.n[0]:
                raise ConfigError("--m must have --n entries")
        profiles = ("gaussian", "finite-psi") if args.profile == "both" else (args.profile,)
        return ck.intertwine(tuple(args.n), args.m, args.j, _trunc(args, cfg, cfg.trunc),
                             args.samples, profiles)
    if cmd == "weighted-probe":
        if args.m is not None and (len(args.n) != 1 or len(args.m) != args.n[0]):
            raise ConfigError("--m must have --n entries")
        return ck.weighted_probe(tuple(args.n), args.m, args.j, tuple(args.p))
    if cmd == "transference":
        for name in args.multiplier:
            builtin(name)
        return ck.transference(tuple(args.multiplier), tuple(args.p))
    if cmd == "hecke":
        cells = _pair(args, "hecke") or ((1, 0), (1, 1), (2, 1))
        return ck.hecke(cells, args.n)
    if cmd == "projection":
        return ck.projection(args.k_max)
    if cmd == "all":
        return ck.everything()
    raise ConfigError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg = load_config(args.config or os.environ.get(CONFIG_ENV))
        if args.seed is not None:
            cfg.seed = args.seed
        if args.format is not None:
            cfg.format = args.format
        if args.quad is not None:
            cfg.quad_points = args.quad
        cfg.validate()
        rows = run_checks(args, cfg)
    except (ConfigError, ValueError) as exc:
        print(f"hriesz: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    text = render(rows, cfg.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
