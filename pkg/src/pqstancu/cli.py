"""Command-line front end: ``pqstancu {eval,moments,korovkin,bounds,selftest}``.

Exit codes: 0 success, 1 self-test failure, 2 invalid parameters, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import __version__, basis, convergence_lab, corpus, moments, selftest, svgplot
from ._kernels import BACKEND
from .basis import DomainError, OperatorConfig
from .bounds import DEFAULT_CONSTANT, SLACK_TOLERANCE
from .pq_core import ParameterError, PQPair

EXIT_OK, EXIT_SELFTEST, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3
DEFAULT_PRECISION = 12


class ConfigError(ParameterError):
    """An experiment config violates an invariant."""


class OutputError(Exception):
    """Reading a config or writing a result failed."""


def format_number(v, precision: int = DEFAULT_PRECISION) -> str:
    """Shortest decimal with at most ``precision`` significant digits.

    Floats always keep a '.' or an exponent so the column type is obvious;
    integers print as integers.
    """
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    v = float(v)
    if not math.isfinite(v):
        return repr(v)
    s = f"{v:.{precision}g}"
    return s if ("." in s or "e" in s) else s + ".0"


def write_csv(header: Sequence[str], rows, precision: int, path: Optional[str]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([c if isinstance(c, str) else format_number(c, precision) for c in row])
    _emit(buf.getvalue(), path)


def _emit(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from None


# --------------------------------------------------------------------------
# experiment configs


@dataclass
class ExperimentConfig:
    """Everything a korovkin or bounds run needs; mirrors the JSON config."""

    n_values: List[int] = field(default_factory=lambda: list(convergence_lab.DEFAULT_N_VALUES))
    l: int = 1
    alpha: float = 0.5
    beta: float = 1.0
    sequence: convergence_lab.SequenceSpec = field(default_factory=convergence_lab.SequenceSpec)
    corpus: List[str] = field(default_factory=list)
    grid_points: int = convergence_lab.DEFAULT_X_POINTS
    csv_path: Optional[str] = None
    svg_path: Optional[str] = None
    precision: int = DEFAULT_PRECISION

    def validate(self) -> "ExperimentConfig":
        if not self.n_values or any(int(n) != n or n < 1 for n in self.n_values):
            raise ConfigError("operator.n: every n must be an integer >= 1")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ConfigError("operator.n: the n sweep must be strictly increasing")
        convergence_lab.OperatorTemplate(self.l, self.alpha, self.beta).config(1, 1.0, 1.0)
        for n in self.n_values:
            self.sequence.params(n)
        corpus.resolve(self.corpus)
        if len(set(self.corpus)) != len(self.corpus):
            raise ConfigError(f"corpus: duplicate names in {self.corpus}")
        if int(self.grid_points) != self.grid_points or self.grid_points < 2:
            raise ConfigError(f"grid_points must be an integer >= 2, got {self.grid_points}")
        if int(self.precision) != self.precision or not 1 <= self.precision <= 17:
            raise ConfigError(f"output.precision must be an integer in [1, 17], got {self.precision}")
        return self

    @property
    def template(self) -> convergence_lab.OperatorTemplate:
        return convergence_lab.OperatorTemplate(self.l, self.alpha, self.beta)

    def to_dict(self) -> dict:
        return {
            "operator": {"n": list(self.n_values), "l": self.l, "alpha": self.alpha, "beta": self.beta},
            "sequences": self.sequence.to_dict(),
            "corpus": list(self.corpus),
            "grid_points": self.grid_points,
            "output": {"csv_path": self.csv_path, "svg_path": self.svg_path, "precision": self.precision},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        def take(obj, keys, where):
            if not isinstance(obj, dict):
                raise ConfigError(f"{where} must be a JSON object")
            extra = set(obj) - set(keys)
            if extra:
                raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
            return obj

        take(d, ("operator", "sequences", "corpus", "grid_points", "output"), "config")
        cfg = cls()
        op = take(d.get("operator", {}), ("n", "l", "alpha", "beta"), "operator")
        if "n" in op:
            n = op["n"]
            cfg.n_values = [n] if isinstance(n, int) else list(n)
        cfg.l = op.get("l", cfg.l)
        cfg.alpha = float(op.get("alpha", cfg.alpha))
        cfg.beta = float(op.get("beta", cfg.beta))
        seq = take(d.get("sequences", {}), ("kind", "c_p", "c_q", "r_p", "r_q", "triples"), "sequences")
        if seq:
            cfg.sequence = convergence_lab.SequenceSpec(**seq)
        cfg.corpus = list(d.get("corpus", cfg.corpus))
        cfg.grid_points = d.get("grid_points", cfg.grid_points)
        out = take(d.get("output", {}), ("csv_path", "svg_path", "precision"), "output")
        cfg.csv_path = out.get("csv_path", cfg.csv_path)
        cfg.svg_path = out.get("svg_path", cfg.svg_path)
        cfg.precision = out.get("precision", cfg.precision)
        return cfg


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise OutputError(f"cannot read config {path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    try:
        return ExperimentConfig.from_dict(data)
    except ParameterError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config {path} has a value of the wrong type: {exc}") from None


def experiment_from_args(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.n_values is not None:
        cfg.n_values = args.n_values
    for name in ("l", "alpha", "beta", "grid_points", "precision"):
        if getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if args.corpus is not None:
        cfg.corpus = args.corpus
    if args.csv is not None:
        cfg.csv_path = args.csv
    if args.svg is not None:
        cfg.svg_path = args.svg
    seq_flags = {k: getattr(args, k) for k in ("c_p", "c_q", "r_p", "r_q") if getattr(args, k) is not None}
    if args.sequence is not None or seq_flags:
        base = cfg.sequence.to_dict() if args.sequence in (None, cfg.sequence.kind) else {}
        base.update(seq_flags)
        base["kind"] = args.sequence or cfg.sequence.kind
        cfg.sequence = convergence_lab.SequenceSpec(**base)
    try:
        return cfg.validate()
    except ParameterError:
        raise
    except (TypeError, ValueError) as exc:
        # wrong JSON types, e.g. a string where a number belongs
        raise ConfigError(f"config has a value of the wrong type: {exc}") from None


# --------------------------------------------------------------------------
# subcommands


def _operator(args) -> OperatorConfig:
    return OperatorConfig(args.n, args.l, args.alpha, args.beta, PQPair(args.p, args.q))


def _points(args) -> np.ndarray:
    if args.x is not None:
        return np.asarray(args.x, dtype=np.float64)
    if args.grid < 2:
        raise ParameterError(f"--grid must be >= 2, got {args.grid}")
    return np.linspace(0.0, 1.0, args.grid)


def cmd_eval(args) -> int:
    f = corpus.get(args.fn)
    xs = _points(args)
    if args.mode == "bernstein-schurer":
        s = basis.apply_bernstein_schurer(args.n, args.l, PQPair(args.p, args.q), f, xs)
    else:
        s = basis.apply_stancu_schurer(_operator(args), f, xs)
    fx = f(xs)
    rows = zip(xs, s, fx, np.abs(s - fx))
    write_csv(["x", "S", "f", "abs_error"], rows, args.precision, args.output)
    return EXIT_OK


def cmd_moments(args) -> int:
    cfg = _operator(args)
    xs = _points(args)
    raw = [np.asarray(moments.ss_moment_closed(i, cfg, xs)) for i in range(3)]
    cen = [np.asarray(moments.ss_central_moment_closed(i, cfg, xs)) for i in range(3)]
    header = ["x"] + [f"raw{i}" for i in range(3)] + [f"central{i}" for i in range(3)]
    cols = [xs] + raw + cen
    if args.oracle:
        oraw = [np.array([moments.moment_bruteforce(i, cfg, x) for x in xs]) for i in range(3)]
        ocen = [np.array([moments.central_moment_bruteforce(i, cfg, x) for x in xs]) for i in range(3)]
        header += [f"raw{i}_oracle" for i in range(3)] + [f"central{i}_oracle" for i in range(3)]
        header += [f"raw{i}_diff" for i in range(3)] + [f"central{i}_diff" for i in range(3)]
        cols += oraw + ocen + [a - b for a, b in zip(raw + cen, oraw + ocen)]
    write_csv(header, zip(*cols), args.precision, args.output)
    return EXIT_OK


def _write_svg(path, xs, series, title, ylabel):
    _emit(svgplot.loglog_svg(xs, series, title=title, ylabel=ylabel), path)


def cmd_korovkin(args) -> int:
    cfg = experiment_from_args(args)
    rep = convergence_lab.run_korovkin(cfg.sequence, cfg.template, cfg.n_values, cfg.grid_points,
                                       corpus.resolve(cfg.corpus))
    keys = rep.error_keys()
    header = ["n", "p_n", "q_n", "bracket_n"] + [f"err_{k}" for k in keys]
    rows = [[r.n, r.p_n, r.q_n, r.bracket_n] + [r.sup_errors[k] for k in keys] for r in rep.per_n]
    write_csv(header, rows, cfg.precision, cfg.csv_path)
    if cfg.svg_path:
        # e0 is reproduced to rounding; plotting it would only stretch the axis
        series = {f"err_{k}": rep.column(k) for k in keys if k != "e0"}
        _write_svg(cfg.svg_path, rep.n_values, series, "sup-grid error vs n", "sup error")
    return EXIT_OK


def cmd_bounds(args) -> int:
    cfg = experiment_from_args(args)
    rep = convergence_lab.run_bound_sweep(cfg.sequence, cfg.template, cfg.n_values,
                                          corpus.resolve(cfg.corpus), cfg.grid_points, args.C,
                                          inflation=args.inflation, thm33_variant=args.thm33_variant)
    header = ["n", "fn", "bound_kind", "sup_error", "sup_bound", "min_slack"]
    rows = [[r.n, r.fn, r.bound_kind, r.sup_error, r.sup_bound, r.min_slack] for r in rep.bound_rows]
    write_csv(header, rows, cfg.precision, cfg.csv_path)
    corner = sorted({r.fn for r in rep.bound_rows if not r.asserted})
    if corner:
        print(f"note: thm33 rows for {', '.join(corner)} are reported only "
              "(first central moment is nonzero when l, alpha or beta > 0)", file=sys.stderr)
    broken = [r for r in rep.bound_rows if r.asserted and r.min_slack < -SLACK_TOLERANCE]
    for r in broken:
        print(f"warning: {r.bound_kind} bound below the error for {r.fn} at n={r.n} "
              f"(min slack {r.min_slack:.3g})", file=sys.stderr)
    if cfg.svg_path:
        series = {}
        for r in rep.bound_rows:
            series.setdefault(f"{r.fn} error", {})[r.n] = r.sup_error
            series.setdefault(f"{r.fn} {r.bound_kind}", {})[r.n] = r.sup_bound
        series = {k: [v[n] for n in rep.n_values] for k, v in series.items()}
        _write_svg(cfg.svg_path, rep.n_values, series, "sup error and bounds vs n", "sup value")
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = selftest.run_selftest(quick=args.quick)
    failed = [r.name for r in results if not r.ok]
    if failed:
        print(f"selftest FAILED: {', '.join(failed)}")
        return EXIT_SELFTEST
    print(f"selftest passed ({len(results)} groups, backend {BACKEND})")
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_operator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=10, help="degree parameter n >= 1")
    p.add_argument("--l", type=int, default=1, help="Schurer shift l >= 0")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--p", type=float, default=0.95)
    p.add_argument("--q", type=float, default=0.9)
    p.add_argument("--x", type=float, nargs="+", help="evaluation points in [0, 1]")
    p.add_argument("--grid", type=int, default=11, help="uniform points on [0, 1] when --x is absent")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="significant digits")
    p.add_argument("--output", "-o", help="CSV path (default stdout)")


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON experiment config; explicit flags override it")
    p.add_argument("--n-values", type=int, nargs="+", dest="n_values")
    p.add_argument("--l", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--sequence", choices=["affine_reciprocal", "power"])
    p.add_argument("--c-p", type=float, dest="c_p")
    p.add_argument("--c-q", type=float, dest="c_q")
    p.add_argument("--r-p", type=float, dest="r_p")
    p.add_argument("--r-q", type=float, dest="r_q")
    p.add_argument("--corpus", nargs="*", choices=sorted(corpus.BUILTINS), metavar="FN")
    p.add_argument("--grid-points", type=int, dest="grid_points")
    p.add_argument("--precision", type=int)
    p.add_argument("--csv", help="CSV path (default stdout)")
    p.add_argument("--svg", help="write a log-log SVG plot here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqstancu",
        description="(p,q)-Stancu-Schurer operators: evaluation, moments, convergence and bound sweeps.",
        epilog="exit codes: 0 ok, 1 selftest failure, 2 invalid parameters, 3 I/O failure",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the operator on a built-in function")
    _add_operator_flags(p)
    p.add_argument("--fn", default="sin_pi", choices=sorted(corpus.BUILTINS))
    p.add_argument("--mode", choices=["stancu-schurer", "bernstein-schurer"], default="stancu-schurer")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("moments", help="tabulate raw and central moments of order 0..2")
    _add_operator_flags(p)
    p.add_argument("--oracle", action="store_true", help="add brute-force and difference columns")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("korovkin", help="sup errors for e0, e1, e2 (and a corpus) along an n sweep")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_korovkin)

    p = sub.add_parser("bounds", help="error bounds and slack along an n sweep")
    _add_experiment_flags(p)
    p.add_argument("--C", type=float, default=DEFAULT_CONSTANT, help="constant of the omega_2 bound")
    p.add_argument("--inflation", type=float, default=convergence_lab.DEFAULT_INFLATION)
    p.add_argument("--thm33-variant", choices=["proof", "printed"], default="proof", dest="thm33_variant")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("selftest", help="run the oracle and invariant checks")
    p.add_argument("--quick", action="store_true", help="smaller sweeps, no Korovkin or bound groups")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DomainError, IndexError) as exc:
        print(f"pqstancu {args.command}: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except OutputError as exc:
        print(f"pqstancu {args.command}: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except OverflowError as exc:
        print(f"pqstancu {args.command}: invalid parameters: overflow ({exc})", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
