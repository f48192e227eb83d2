"""Korovkin-type convergence experiments along sequences p_n, q_n -> 1.

Sup norms are taken over a uniform grid of x in [0, 1]; the operators only
sample f on [0, l+1] at their nodes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import corpus as _corpus
from .basis import FunctionHandle, OperatorConfig, basis_weights, nodes
from .bounds import DEFAULT_CONSTANT, BoundContext, applicable_kinds, is_thm33_corner
from .moments import ss_central_moment_closed
from .pq_core import ParameterError, PQPair
from .smoothness import DEFAULT_GRID, GridModuli

__all__ = [
    "DEFAULT_N_VALUES",
    "DEFAULT_X_POINTS",
    "SequenceSpec",
    "OperatorTemplate",
    "NRecord",
    "BoundRow",
    "ConvergenceReport",
    "run_korovkin",
    "run_bound_sweep",
    "fit_decay_rate",
]

DEFAULT_N_VALUES = (10, 25, 50, 100, 200)
DEFAULT_X_POINTS = 201
DEFAULT_INFLATION = 1.05
NOT_A_RATE_FLOOR = 1e-14


@dataclass(frozen=True)
class SequenceSpec:
    """How (p_n, q_n) depend on n.

    ``affine_reciprocal``: p_n = 1 - c_p/n, q_n = 1 - c_q/n (0 < c_p < c_q).
    ``power``:             p_n = 1 - n^-r_p, q_n = 1 - n^-r_q.
    ``custom``:            explicit (n, p, q) triples.
    """

    kind: str = "affine_reciprocal"
    c_p: float = 0.5
    c_q: float = 1.0
    r_p: float = 1.5
    r_q: float = 1.0
    triples: Tuple[Tuple[int, float, float], ...] = ()

    def __post_init__(self):
        if self.kind not in ("affine_reciprocal", "power", "custom"):
            raise ParameterError(f"SequenceSpec: unknown kind {self.kind!r}")
        if self.kind == "affine_reciprocal" and not 0 < self.c_p < self.c_q:
            raise ParameterError(f"SequenceSpec: requires 0 < c_p < c_q (c_p={self.c_p}, c_q={self.c_q})")
        if self.kind == "power" and not self.r_p > self.r_q > 0:
            raise ParameterError(f"SequenceSpec: requires r_p > r_q > 0 (r_p={self.r_p}, r_q={self.r_q})")
        if self.kind == "custom":
            object.__setattr__(self, "triples", tuple((int(n), float(p), float(q)) for n, p, q in self.triples))

    def params(self, n: int) -> Tuple[float, float]:
        if self.kind == "affine_reciprocal":
            p, q = 1.0 - self.c_p / n, 1.0 - self.c_q / n
        elif self.kind == "power":
            p, q = 1.0 - n ** -self.r_p, 1.0 - n ** -self.r_q
        else:
            match = [(pp, qq) for nn, pp, qq in self.triples if nn == n]
            if not match:
                raise ParameterError(f"SequenceSpec: no custom (p, q) given for n={n}")
            p, q = match[0]
        if not 0.0 < q < p <= 1.0:
            raise ParameterError(f"SequenceSpec: requires 0 < q_n < p_n <= 1 at n={n} (p_n={p}, q_n={q})")
        return p, q

    def limit_gap(self, n: int) -> float:
        """max(|1 - p_n|, |1 - q_n|)."""
        p, q = self.params(n)
        return max(1.0 - p, 1.0 - q)

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == "affine_reciprocal":
            d.update(c_p=self.c_p, c_q=self.c_q)
        elif self.kind == "power":
            d.update(r_p=self.r_p, r_q=self.r_q)
        else:
            d["triples"] = [list(t) for t in self.triples]
        return d


@dataclass(frozen=True)
class OperatorTemplate:
    """An operator configuration without n, p and q."""

    l: int = 1
    alpha: float = 0.5
    beta: float = 1.0

    def config(self, n: int, p: float, q: float) -> OperatorConfig:
        return OperatorConfig(n, self.l, self.alpha, self.beta, PQPair(p, q))


@dataclass
class NRecord:
    n: int
    p_n: float
    q_n: float
    bracket_n: float
    sup_errors: Dict[str, float] = field(default_factory=dict)
    bound_values: Dict[str, float] = field(default_factory=dict)
    min_slacks: Dict[str, float] = field(default_factory=dict)
    max_central2: float = 0.0


@dataclass
class BoundRow:
    n: int
    fn: str
    bound_kind: str
    sup_error: float
    sup_bound: float
    min_slack: float
    max_ratio: Optional[float] = None
    asserted: bool = True


@dataclass
class ConvergenceReport:
    spec: SequenceSpec
    template: OperatorTemplate
    n_values: List[int]
    per_n: List[NRecord]
    grid_points: int
    bound_rows: List[BoundRow] = field(default_factory=list)

    def column(self, key: str) -> np.ndarray:
        """Sup-error column for ``key`` (``e2``, ``err_e2`` or a corpus name)."""
        key = key[4:] if key.startswith("err_") else key
        try:
            return np.array([r.sup_errors[key] for r in self.per_n])
        except KeyError:
            raise ParameterError(f"report has no error column {key!r}") from None

    def error_keys(self) -> List[str]:
        return list(self.per_n[0].sup_errors) if self.per_n else ["e0", "e1", "e2"]


def _check_n_values(n_values) -> List[int]:
    ns = [int(n) for n in n_values]
    if not ns or any(n < 1 for n in ns):
        raise ParameterError("n_values must be a nonempty list of integers >= 1")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ParameterError("n_values must be strictly increasing")
    return ns


def _x_grid(grid_points: int) -> np.ndarray:
    if grid_points < 2:
        raise ParameterError(f"grid_points must be >= 2, got {grid_points}")
    return np.linspace(0.0, 1.0, int(grid_points))


def _korovkin_record(spec, template, n, xs, corpus, moduli_cache, modulus_grid):
    p, q = spec.params(n)
    cfg = template.config(n, p, q)
    W = basis_weights(cfg, xs)
    t = nodes(cfg)
    rec = NRecord(n, p, q, cfg.bracket_n)
    for i in range(3):
        rec.sup_errors[f"e{i}"] = float(np.max(np.abs(W @ t**i - xs**i)))
    for f in corpus:
        rec.sup_errors[f.name] = float(np.max(np.abs(W @ f(t) - f(xs))))
    m2 = np.asarray(ss_central_moment_closed(2, cfg, xs))
    rec.max_central2 = float(np.max(m2))
    # thm32 columns for the test monomials t and t^2
    for i in (1, 2):
        f = _corpus.monomial(i)
        key = (f.name, cfg.domain)
        if key not in moduli_cache:
            moduli_cache[key] = GridModuli(f, cfg.domain, modulus_grid)
        ctx = BoundContext(cfg, f, xs, inflation=DEFAULT_INFLATION, moduli=moduli_cache[key])
        bound, _ = ctx.thm32()
        rec.bound_values[f"thm32:e{i}"] = float(np.max(bound))
        rec.min_slacks[f"thm32:e{i}"] = float(np.min(bound - ctx.errors))
    return rec


def run_korovkin(spec: SequenceSpec = SequenceSpec(), template: OperatorTemplate = OperatorTemplate(),
                 n_values: Sequence[int] = DEFAULT_N_VALUES, grid_points: int = DEFAULT_X_POINTS,
                 corpus: Sequence[FunctionHandle] = (), modulus_grid: int = DEFAULT_GRID) -> ConvergenceReport:
    """Sup-grid errors |S(e_i; x) - x^i|, i = 0, 1, 2, plus any corpus functions, per n."""
    ns = _check_n_values(n_values)
    xs = _x_grid(grid_points)
    moduli = {}
    per_n = [_korovkin_record(spec, template, n, xs, corpus, moduli, modulus_grid) for n in ns]
    return ConvergenceReport(spec, template, ns, per_n, int(grid_points))


def run_bound_sweep(spec: SequenceSpec = SequenceSpec(), template: OperatorTemplate = OperatorTemplate(),
                    n_values: Sequence[int] = DEFAULT_N_VALUES,
                    corpus: Sequence[FunctionHandle] = (), grid_points: int = DEFAULT_X_POINTS,
                    C: float = DEFAULT_CONSTANT, *, inflation: float = DEFAULT_INFLATION,
                    modulus_grid: int = DEFAULT_GRID, thm33_variant: str = "proof") -> ConvergenceReport:
    """Every applicable bound for the monomials and ``corpus`` along the sweep.

    Rows for ``thm33`` in the documented corner (l, alpha or beta nonzero)
    are marked ``asserted=False``: their slack is reported, not required.
    """
    ns = _check_n_values(n_values)
    xs = _x_grid(grid_points)
    # constants are exactly reproduced; their rows would only compare rounding noise with 0
    funcs = [_corpus.monomial(i) for i in (1, 2)] + list(corpus)
    names = [f.name for f in funcs]
    if len(set(names)) != len(names):
        raise ParameterError(f"duplicate function names in corpus: {names}")
    report = run_korovkin(spec, template, ns, grid_points, corpus, modulus_grid)
    moduli: Dict[tuple, GridModuli] = {}
    for rec in report.per_n:
        cfg = template.config(rec.n, rec.p_n, rec.q_n)
        for f in funcs:
            key = (f.name, cfg.domain)
            if key not in moduli:
                moduli[key] = GridModuli(f, cfg.domain, modulus_grid)
            dkey = (f.name + "'", cfg.domain)
            if f.deriv is not None and dkey not in moduli:
                moduli[dkey] = GridModuli(f.derivative(), cfg.domain, modulus_grid)
            ctx = BoundContext(cfg, f, xs, inflation=inflation, moduli=moduli[key],
                               deriv_moduli=moduli.get(dkey))
            for kind in applicable_kinds(f):
                kw = {"C": C} if kind == "thm41" else {"variant": thm33_variant} if kind == "thm33" else {}
                bound, params = ctx.evaluate(kind, **kw)
                row = BoundRow(
                    rec.n, f.name, kind,
                    sup_error=float(np.max(ctx.errors)),
                    sup_bound=float(np.max(bound)),
                    min_slack=float(np.min(bound - ctx.errors)),
                    max_ratio=float(np.max(params["ratio"])) if kind == "thm41" else None,
                    asserted=not (kind == "thm33" and is_thm33_corner(cfg)),
                )
                report.bound_rows.append(row)
                rec.bound_values[f"{kind}:{f.name}"] = row.sup_bound
                rec.min_slacks[f"{kind}:{f.name}"] = row.min_slack
    return report


def fit_decay_rate(report, key: Optional[str] = None) -> float:
    """Least-squares slope of log(error) against log(n); NaN when not a rate.

    ``report`` may be a ConvergenceReport (``key`` names an error column) or
    a pair of sequences (n_values, errors).
    """
    if isinstance(report, ConvergenceReport):
        if key is None:
            raise ParameterError("fit_decay_rate: a report needs an error column key")
        ns = np.asarray(report.n_values, dtype=np.float64)
        errs = report.column(key)
    else:
        ns, errs = (np.asarray(a, dtype=np.float64) for a in report)
    keep = errs > NOT_A_RATE_FLOOR
    if np.count_nonzero(keep) < 4:
        return math.nan
    slope, _ = np.polyfit(np.log(ns[keep]), np.log(errs[keep]), 1)
    return float(slope)
