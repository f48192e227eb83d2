"""Right-hand sides of the four error estimates, evaluated numerically.

All four are driven by the central moments at x,

    m1(x) = S((t - x); x),    m2(x) = S((t - x)^2; x),

and by grid estimates of the relevant moduli on [0, l+1].  Because those
estimates come from below, callers that assert "bound >= error" should pass
``inflation`` > 1 (the sweeps use 1.05).

Conventions, fixed here once:

``thm32``  2 omega(f; sqrt(m2))
``thm33``  omega_1(f'; 1/D) sqrt(m2) (1 + D sqrt(m2)),  D = [n] + beta.
           ``variant="printed"`` uses sqrt(D) in place of D; that form
           underestimates the error of t^2 for large n (from n = 37 when
           p = q = 1) and is kept only for comparison.  Neither form carries a first-order term, so for
           l, alpha or beta > 0 the estimate can be violated by affine parts
           of f; such reports carry ``params["corner"] = True``.
``thm41``  C omega_2(f; sqrt(m2 + m1^2)) + omega(f; |m1|)
``thm43``  M m2^(a/2)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .basis import FunctionHandle, OperatorConfig, apply_stancu_schurer
from .moments import ss_central_moment_closed
from .pq_core import ParameterError
from .smoothness import DEFAULT_GRID, GridModuli

__all__ = [
    "BOUND_KINDS",
    "DEFAULT_CONSTANT",
    "SLACK_TOLERANCE",
    "BoundReport",
    "BoundContext",
    "applicable_kinds",
    "is_thm33_corner",
    "bound_thm32",
    "bound_thm33",
    "bound_thm41",
    "bound_thm43",
]

BOUND_KINDS = ("thm32", "thm33", "thm41", "thm43")
DEFAULT_CONSTANT = 4.0
# at x = 0 some bounds are attained exactly, so slack is compared with this
SLACK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BoundReport:
    x: float
    actual_error: float
    bound_value: float
    bound_kind: str
    slack: float
    params: Dict[str, float] = field(default_factory=dict)


def applicable_kinds(f: FunctionHandle):
    kinds = ["thm32"]
    if f.deriv is not None:
        kinds.append("thm33")
    kinds.append("thm41")
    if f.lip_spec is not None:
        kinds.append("thm43")
    return kinds


def is_thm33_corner(config: OperatorConfig) -> bool:
    """True when the first central moment is not identically zero."""
    return not (config.l == 0 and config.alpha == 0.0 and config.beta == 0.0)


class BoundContext:
    """Errors and central moments of one (config, f) pair on a set of points.

    ``moduli`` / ``deriv_moduli`` may be shared between contexts with the
    same function and domain [0, l+1] to avoid resampling.
    """

    def __init__(self, config: OperatorConfig, f: FunctionHandle, xs, *,
                 grid_points: int = DEFAULT_GRID, inflation: float = 1.0,
                 moduli: Optional[GridModuli] = None,
                 deriv_moduli: Optional[GridModuli] = None):
        if not inflation >= 1.0:
            raise ParameterError(f"inflation must be >= 1, got {inflation}")
        self.config = config
        self.f = f
        self.xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        self.inflation = float(inflation)
        self.grid_points = grid_points
        self.values = apply_stancu_schurer(config, f, self.xs)
        self.errors = np.abs(self.values - f(self.xs))
        self.m1 = np.asarray(ss_central_moment_closed(1, config, self.xs), dtype=np.float64)
        # rounding can leave a tiny negative second moment near x = 0
        self.m2 = np.maximum(np.asarray(ss_central_moment_closed(2, config, self.xs), dtype=np.float64), 0.0)
        self._moduli = moduli
        self._deriv_moduli = deriv_moduli

    @property
    def moduli(self) -> GridModuli:
        if self._moduli is None:
            self._moduli = GridModuli(self.f, self.config.domain, self.grid_points)
        return self._moduli

    @property
    def deriv_moduli(self) -> GridModuli:
        if self._deriv_moduli is None:
            self._deriv_moduli = GridModuli(self.f.derivative(), self.config.domain, self.grid_points)
        return self._deriv_moduli

    def thm32(self):
        om = np.array([self.moduli.first(math.sqrt(v)) for v in self.m2]) * self.inflation
        return 2.0 * om, {"omega": om, "delta": np.sqrt(self.m2)}

    def thm33(self, variant: str = "proof"):
        if self.f.deriv is None:
            raise ParameterError(f"thm33 needs a derivative; {self.f.name} has none")
        if variant not in ("proof", "printed"):
            raise ParameterError(f"thm33 variant must be 'proof' or 'printed', got {variant!r}")
        D = self.config.denominator
        om1 = self.deriv_moduli.first(1.0 / D) * self.inflation
        root = np.sqrt(self.m2)
        factor = D if variant == "proof" else math.sqrt(D)
        bound = om1 * root * (1.0 + factor * root)
        return bound, {"omega1": np.full_like(root, om1), "delta": np.full_like(root, 1.0 / D)}

    def thm41(self, C: float = DEFAULT_CONSTANT):
        if not C > 0:
            raise ParameterError(f"thm41 constant must be > 0, got {C}")
        theta = self.m2 + self.m1 * self.m1
        om2 = np.array([self.moduli.second(math.sqrt(v)) for v in theta]) * self.inflation
        om = np.array([self.moduli.first(abs(v)) for v in self.m1]) * self.inflation
        denom = om2 + om
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(denom > 0, self.errors / denom, np.where(self.errors > 0, np.inf, 0.0))
        return C * om2 + om, {"omega2": om2, "omega": om, "theta": theta, "ratio": ratio, "C": np.full_like(om, C)}

    def thm43(self, M: Optional[float] = None, a: Optional[float] = None):
        if M is None or a is None:
            if self.f.lip_spec is None:
                raise ParameterError(f"thm43 needs a Lipschitz declaration; {self.f.name} has no lip_spec")
            M0, a0 = self.f.lip_spec
            M = M0 if M is None else M
            a = a0 if a is None else a
        if not (M > 0 and 0 < a <= 1):
            raise ParameterError(f"thm43 needs M > 0 and a in (0, 1], got M={M}, a={a}")
        bound = M * self.m2 ** (a / 2.0)
        return bound, {"M": np.full_like(bound, M), "a": np.full_like(bound, a)}

    def evaluate(self, kind: str, **kw):
        """(bound array, params dict of arrays) for one bound kind."""
        if kind not in BOUND_KINDS:
            raise ParameterError(f"unknown bound kind {kind!r}")
        return getattr(self, kind)(**kw)

    def reports(self, kind: str, **kw):
        bound, params = self.evaluate(kind, **kw)
        corner = kind == "thm33" and is_thm33_corner(self.config)
        out = []
        for j, x in enumerate(self.xs):
            p = {k: float(v[j]) for k, v in params.items()}
            p.update(m1=float(self.m1[j]), m2=float(self.m2[j]), inflation=self.inflation)
            if kind == "thm33":
                p["corner"] = corner
            err = float(self.errors[j])
            b = float(bound[j])
            out.append(BoundReport(float(x), err, b, kind, b - err, p))
        return out


def _single(config, f, x, kind, grid_points, inflation, **kw) -> BoundReport:
    ctx = BoundContext(config, f, [x], grid_points=grid_points, inflation=inflation)
    return ctx.reports(kind, **kw)[0]


def bound_thm32(config: OperatorConfig, f: FunctionHandle, x: float, *,
                grid_points: int = DEFAULT_GRID, inflation: float = 1.0) -> BoundReport:
    return _single(config, f, x, "thm32", grid_points, inflation)


def bound_thm33(config: OperatorConfig, f: FunctionHandle, x: float, *, variant: str = "proof",
                grid_points: int = DEFAULT_GRID, inflation: float = 1.0) -> BoundReport:
    return _single(config, f, x, "thm33", grid_points, inflation, variant=variant)


def bound_thm41(config: OperatorConfig, f: FunctionHandle, x: float, C: float = DEFAULT_CONSTANT, *,
                grid_points: int = DEFAULT_GRID, inflation: float = 1.0) -> BoundReport:
    return _single(config, f, x, "thm41", grid_points, inflation, C=C)


def bound_thm43(config: OperatorConfig, f: FunctionHandle, x: float,
                M: Optional[float] = None, a: Optional[float] = None) -> BoundReport:
    """M m2(x)^(a/2); M and a default to ``f.lip_spec``."""
    return _single(config, f, x, "thm43", DEFAULT_GRID, 1.0, M=M, a=a)
