"""Bernstein-Schurer basis, operator nodes and the two sampling operators.

Factoring p out of every (p,q)-integer ([k]_{p,q} = p^(k-1) [k]_{1,r} with
r = q/p) cancels the normaliser p^(-(n+l)(n+l-1)/2) exactly, leaving

    b_v(x) = C(N, v)_r  x^v  prod_{j<N-v} (1 - r^j x),   N = n + l.

Apart from the binomial every factor lies in [0, 1], so small p cannot
cause overflow.  This is what the kernels evaluate; degrees above
BASIS_LOG_THRESHOLD switch to log space.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional, Tuple

import numpy as np

from . import _kernels
from .pq_core import ParameterError, PQPair, pq_int

__all__ = [
    "DomainError",
    "OperatorConfig",
    "FunctionHandle",
    "NODE_TOLERANCE",
    "BASIS_LOG_THRESHOLD",
    "basis_weight",
    "basis_weights",
    "node",
    "nodes",
    "apply_stancu_schurer",
    "apply_bernstein_schurer",
]

NODE_TOLERANCE = 1e-9
# above this degree the kernels work in log space; below it the factored
# weights cannot overflow and the linear path is more accurate
BASIS_LOG_THRESHOLD = 500


class DomainError(ValueError):
    """A point or a node lies outside the admissible interval."""


@dataclass(frozen=True)
class OperatorConfig:
    """One operator S_{n,l}^{alpha,beta}(.; ., p, q)."""

    n: int
    l: int
    alpha: float
    beta: float
    pq: PQPair

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"OperatorConfig: n must be an integer >= 1, got {self.n!r}")
        if isinstance(self.l, bool) or int(self.l) != self.l or self.l < 0:
            raise ParameterError(f"OperatorConfig: l must be an integer >= 0, got {self.l!r}")
        if not 0.0 <= self.alpha <= self.beta:
            raise ParameterError(
                f"OperatorConfig: requires 0 <= alpha <= beta (alpha={self.alpha}, beta={self.beta})"
            )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @classmethod
    def from_values(cls, n, l, alpha, beta, p, q):
        return cls(n, l, alpha, beta, PQPair(p, q))

    @property
    def p(self) -> float:
        return self.pq.p

    @property
    def q(self) -> float:
        return self.pq.q

    @property
    def degree(self) -> int:
        """N = n + l, the number of basis functions minus one."""
        return self.n + self.l

    @cached_property
    def bracket_n(self) -> float:
        return pq_int(self.n, self.pq)

    @cached_property
    def bracket_N(self) -> float:
        return pq_int(self.degree, self.pq)

    @cached_property
    def bracket_N1(self) -> float:
        return pq_int(self.degree - 1, self.pq)

    @property
    def denominator(self) -> float:
        """[n]_{p,q} + beta."""
        return self.bracket_n + self.beta

    @property
    def domain(self) -> Tuple[float, float]:
        return (0.0, float(self.l + 1))

    def with_pq(self, p: float, q: float) -> "OperatorConfig":
        return OperatorConfig(self.n, self.l, self.alpha, self.beta, PQPair(p, q))


@dataclass(frozen=True)
class FunctionHandle:
    """A real function on [0, l+1], optionally with derivative and Lipschitz data.

    ``eval`` may be vectorised; scalar outputs (e.g. constants) are broadcast.
    ``lip_spec`` is ``(M, a)`` declaring |f(t) - f(s)| <= M |t - s|^a.
    """

    name: str
    eval: Callable
    deriv: Optional[Callable] = None
    lip_spec: Optional[Tuple[float, float]] = None
    description: str = field(default="", compare=False)

    def __post_init__(self):
        if self.lip_spec is not None:
            M, a = self.lip_spec
            if not (M > 0 and 0 < a <= 1):
                raise ParameterError(f"FunctionHandle {self.name}: lip_spec needs M > 0, a in (0,1]")

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=np.float64)
        out = np.asarray(self.eval(t_arr), dtype=np.float64)
        if out.shape != t_arr.shape:
            out = np.broadcast_to(out, t_arr.shape).copy()
        return out if t_arr.ndim else float(out)

    def derivative(self) -> "FunctionHandle":
        if self.deriv is None:
            raise ParameterError(f"FunctionHandle {self.name}: no derivative supplied")
        return FunctionHandle(self.name + "'", self.deriv)


def _check_nu(config: OperatorConfig, nu) -> int:
    if isinstance(nu, bool) or int(nu) != nu or not 0 <= nu <= config.degree:
        raise IndexError(f"nu={nu!r} outside [0, {config.degree}]")
    return int(nu)


def _check_x(x) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if xs.ndim != 1:
        raise DomainError("x must be a scalar or a 1-d array")
    if np.any(~np.isfinite(xs)) or np.any(xs < 0.0) or np.any(xs > 1.0):
        raise DomainError("x must lie in [0, 1]")
    return xs


def basis_weights(config: OperatorConfig, x) -> np.ndarray:
    """All weights b_v(x), v = 0..n+l.  Shape (N+1,) for scalar x, else (len(x), N+1)."""
    xs = _check_x(x)
    N = config.degree
    W = _kernels.basis_matrix(config.pq.ratio, N, xs, N > BASIS_LOG_THRESHOLD)
    return W[0] if np.ndim(x) == 0 else W


def basis_weight(config: OperatorConfig, nu: int, x) -> float:
    nu = _check_nu(config, nu)
    W = basis_weights(config, x)
    return float(W[nu]) if np.ndim(x) == 0 else W[:, nu]


def nodes(config: OperatorConfig) -> np.ndarray:
    """(p^(N-v) [v]_{p,q} + alpha) / ([n]_{p,q} + beta) for v = 0..N."""
    N = config.degree
    pq = config.pq
    scaled = np.array([pq.p ** (N - v) * pq_int(v, pq) for v in range(N + 1)])
    return (scaled + config.alpha) / config.denominator


def node(config: OperatorConfig, nu: int) -> float:
    nu = _check_nu(config, nu)
    return float(
        (config.p ** (config.degree - nu) * pq_int(nu, config.pq) + config.alpha) / config.denominator
    )


def _check_nodes(config: OperatorConfig, t: np.ndarray) -> None:
    lo, hi = config.domain
    if t[0] < lo - NODE_TOLERANCE or t[-1] > hi + NODE_TOLERANCE:
        raise DomainError(
            f"nodes span [{t[0]:.6g}, {t[-1]:.6g}], outside [0, l+1] = [0, {config.l + 1}]"
        )


def _apply(W: np.ndarray, fvals: np.ndarray, x):
    out = W @ fvals
    return float(out[0]) if np.ndim(x) == 0 else out


def apply_stancu_schurer(config: OperatorConfig, f: FunctionHandle, x):
    """S_{n,l}^{alpha,beta}(f; x, p, q) for scalar or array x in [0, 1]."""
    t = nodes(config)
    _check_nodes(config, t)
    W = _kernels.basis_matrix(config.pq.ratio, config.degree, _check_x(x),
                              config.degree > BASIS_LOG_THRESHOLD)
    return _apply(W, f(t), x)


def apply_bernstein_schurer(n: int, l: int, pq: PQPair, f: FunctionHandle, x):
    """B_{n,l}^{p,q}(f; x) with nodes [v]_{p,q} / (p^(v-N) [n]_{p,q})."""
    config = OperatorConfig(n, l, 0.0, 0.0, pq)
    N = config.degree
    bn = config.bracket_n
    t = np.array([pq_int(v, pq) / (pq.p ** (v - N) * bn) for v in range(N + 1)])
    _check_nodes(config, t)
    W = _kernels.basis_matrix(pq.ratio, N, _check_x(x), N > BASIS_LOG_THRESHOLD)
    return _apply(W, f(t), x)
