"""Closed-form moments of the Bernstein-Schurer and Stancu-Schurer operators.

Two printed formulas are used in repaired form, both re-derived from the
binomial transform in :func:`ss_moment_general` and pinned by the
brute-force oracle in :func:`moment_bruteforce`:

* S(t^2; x): the x coefficient is [n+l] p^(n+l-1) + 2 alpha [n+l].
* S((t-x)^2; x): the constant term is alpha^2 / ([n] + beta)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .basis import OperatorConfig, basis_weights, nodes
from .pq_core import ParameterError, PQPair

__all__ = [
    "MomentSet",
    "bs_moment_closed",
    "ss_moment_general",
    "ss_moment_closed",
    "ss_central_moment_closed",
    "moment_bruteforce",
    "central_moment_bruteforce",
    "moment_set",
]


def _check_order(i) -> int:
    if i not in (0, 1, 2):
        raise ParameterError(f"unsupported moment order {i!r}: closed forms exist for 0, 1, 2")
    return int(i)


def bs_moment_closed(i: int, n: int, l: int, pq: PQPair, x):
    """B_{n,l}^{p,q}(t^i; x) for i = 0, 1, 2."""
    i = _check_order(i)
    cfg = OperatorConfig(n, l, 0.0, 0.0, pq)
    x = np.asarray(x, dtype=np.float64)
    bn, bN = cfg.bracket_n, cfg.bracket_N
    if i == 0:
        out = np.ones_like(x)
    elif i == 1:
        out = bN * x / bn
    else:
        N = cfg.degree
        out = (bN * pq.p ** (N - 1) * x + pq.q * bN * cfg.bracket_N1 * x * x) / (bn * bn)
    return out if out.ndim else float(out)


def ss_moment_general(m: int, config: OperatorConfig, x, bs_moments: Sequence[float]) -> float:
    """S(t^m; x) from B(t^i; x), i = 0..m, via the ordinary-binomial transform.

    Exact relative to the supplied B-moments; for m > 2 those must come from
    :func:`moment_bruteforce` with alpha = beta = 0.
    """
    if isinstance(m, bool) or int(m) != m or m < 0:
        raise ParameterError(f"m must be a nonnegative integer, got {m!r}")
    m = int(m)
    if len(bs_moments) != m + 1:
        raise ParameterError(f"bs_moments must have length m+1 = {m + 1}, got {len(bs_moments)}")
    bn = config.bracket_n
    shift = config.alpha / bn
    scale = (bn / config.denominator) ** m
    return scale * math.fsum(
        math.comb(m, i) * shift ** (m - i) * bs_moments[i] for i in range(m + 1)
    )


def ss_moment_closed(i: int, config: OperatorConfig, x):
    """S_{n,l}^{alpha,beta}(t^i; x) for i = 0, 1, 2."""
    i = _check_order(i)
    x = np.asarray(x, dtype=np.float64)
    a, D = config.alpha, config.denominator
    bN = config.bracket_N
    if i == 0:
        out = np.ones_like(x)
    elif i == 1:
        out = (bN * x + a) / D
    else:
        N = config.degree
        lin = bN * config.p ** (N - 1) + 2.0 * a * bN
        quad = config.q * bN * config.bracket_N1
        out = (lin * x + quad * x * x + a * a) / (D * D)
    return out if out.ndim else float(out)


def ss_central_moment_closed(i: int, config: OperatorConfig, x):
    """S_{n,l}^{alpha,beta}((t - x)^i; x) for i = 0, 1, 2."""
    i = _check_order(i)
    x = np.asarray(x, dtype=np.float64)
    a, D = config.alpha, config.denominator
    bN = config.bracket_N
    if i == 0:
        out = np.ones_like(x)
    elif i == 1:
        out = (bN / D - 1.0) * x + a / D
    else:
        N = config.degree
        quad = config.q * bN * config.bracket_N1 - 2.0 * bN * D + D * D
        lin = bN * (config.p ** (N - 1) + 2.0 * a) - 2.0 * a * D
        out = (quad * x * x + lin * x + a * a) / (D * D)
    return out if out.ndim else float(out)


def moment_bruteforce(m: int, config: OperatorConfig, x: float) -> float:
    """sum_v b_v(x) node_v^m with correctly rounded summation."""
    w = basis_weights(config, float(x))
    t = nodes(config)
    return math.fsum((w * t**m).tolist())


def central_moment_bruteforce(m: int, config: OperatorConfig, x: float) -> float:
    """sum_v b_v(x) (node_v - x)^m with correctly rounded summation."""
    w = basis_weights(config, float(x))
    t = nodes(config)
    return math.fsum((w * (t - x) ** m).tolist())


@dataclass(frozen=True)
class MomentSet:
    """Raw and central moments of orders 0..2 at one point."""

    x: float
    raw: List[float]
    central: List[float]

    def consistency_gap(self) -> float:
        """|central[2] - (raw[2] - 2x raw[1] + x^2 raw[0])|."""
        x = self.x
        return abs(self.central[2] - (self.raw[2] - 2 * x * self.raw[1] + x * x * self.raw[0]))


def moment_set(config: OperatorConfig, x: float, oracle: bool = False) -> MomentSet:
    """Closed-form moments at x, or brute-force ones when ``oracle`` is set."""
    x = float(x)
    if oracle:
        raw = [moment_bruteforce(i, config, x) for i in range(3)]
        central = [central_moment_bruteforce(i, config, x) for i in range(3)]
    else:
        raw = [ss_moment_closed(i, config, x) for i in range(3)]
        central = [ss_central_moment_closed(i, config, x) for i in range(3)]
    return MomentSet(x, raw, central)
