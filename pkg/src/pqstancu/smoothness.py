"""Grid estimators of the moduli of continuity and of Lipschitz constants.

Every estimate is a supremum over a finite subset of the admissible pairs,
so it approximates the true modulus from below.  The sampled subset is

* all pairs of a uniform grid with ``grid_points`` intervals, and
* pairs (t, t + delta) at exactly the requested step, t on the grid.

For the second modulus the step set also contains a fixed geometric lattice
of 256 steps per three decades below half the domain width, so any query
``hmax`` sees roughly 256 log-spaced steps in (hmax/1000, hmax].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import _kernels
from .basis import FunctionHandle
from .pq_core import ParameterError

__all__ = [
    "DEFAULT_GRID",
    "MIN_GRID",
    "ModulusQuery",
    "GridModuli",
    "modulus_first",
    "modulus_second",
    "modulus_derivative",
    "lipschitz_estimate",
]

DEFAULT_GRID = 2048
MIN_GRID = 64
LATTICE_PER_3_DECADES = 256
LATTICE_FLOOR = 1e-7  # smallest lattice step, relative to the domain width


def _check_domain(domain, grid_points) -> Tuple[float, float, int]:
    lo, hi = (float(v) for v in domain)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ParameterError(f"invalid modulus domain [{lo}, {hi}]")
    if isinstance(grid_points, bool) or int(grid_points) != grid_points or grid_points < MIN_GRID:
        raise ParameterError(f"grid_points must be an integer >= {MIN_GRID}, got {grid_points!r}")
    return lo, hi, int(grid_points)


@dataclass(frozen=True)
class ModulusQuery:
    """A modulus argument together with the search domain and grid resolution.

    ``grid_points`` counts grid intervals, so doubling it refines the grid
    by nesting (every old node stays a node).
    """

    delta: float
    domain_lo: float
    domain_hi: float
    grid_points: int = DEFAULT_GRID

    def __post_init__(self):
        lo, hi, _ = _check_domain((self.domain_lo, self.domain_hi), self.grid_points)
        if not 0.0 < self.delta <= hi - lo:
            raise ParameterError(
                f"ModulusQuery: requires 0 < delta <= domain width (delta={self.delta}, width={hi - lo})"
            )


class GridModuli:
    """Samples of ``f`` on a uniform grid plus cached modulus profiles.

    Build one per (function, domain, grid) and query it repeatedly.
    """

    def __init__(self, f: FunctionHandle, domain=(0.0, 1.0), grid_points: int = DEFAULT_GRID):
        self.lo, self.hi, self.grid_points = _check_domain(domain, grid_points)
        self.f = f
        self.width = self.hi - self.lo
        self.t = np.linspace(self.lo, self.hi, self.grid_points + 1)
        self.step = self.width / self.grid_points
        self.values = f(self.t)
        if not np.all(np.isfinite(self.values)):
            raise ParameterError(f"function {f.name} is not finite on [{self.lo}, {self.hi}]")
        self._prof1 = np.zeros(1)
        self._prof2 = np.zeros(1)
        self._lattice = None

    def _grid_steps(self, h: float) -> int:
        return int(math.floor(h / self.step * (1.0 + 1e-12)))

    def _profile(self, which: str, k: int) -> float:
        prof = self._prof1 if which == "first" else self._prof2
        if k >= prof.size:
            kmax = max(k, 2 * (prof.size - 1), 16)
            if which == "first":
                prof = self._prof1 = _kernels.modulus_profile(self.values, kmax)
            else:
                prof = self._prof2 = _kernels.second_difference_profile(self.values, kmax)
        return float(prof[min(k, prof.size - 1)])

    def _shifted(self, h: float, times: int):
        # grid nodes t with t + times*h still inside the domain
        mask = self.t + times * h <= self.hi + 1e-12 * self.width
        return mask, self.t[mask]

    def first_exact(self, delta: float) -> float:
        """max over grid t of |f(t + delta) - f(t)|."""
        mask, t = self._shifted(delta, 1)
        if not t.size:
            return 0.0
        shifted = self.f(np.minimum(t + delta, self.hi))
        return float(np.max(np.abs(shifted - self.values[mask])))

    def second_exact(self, h: float) -> float:
        """max over grid t of |f(t + 2h) - 2 f(t + h) + f(t)|."""
        mask, t = self._shifted(h, 2)
        if not t.size:
            return 0.0
        f1 = self.f(t + h)
        f2 = self.f(np.minimum(t + 2 * h, self.hi))
        return float(np.max(np.abs(f2 - 2.0 * f1 + self.values[mask])))

    def first(self, delta: float) -> float:
        """Estimate of omega(f; delta); 0 for delta <= 0, saturates at the width."""
        if not delta > 0.0:
            return 0.0
        delta = min(float(delta), self.width)
        return max(self._profile("first", self._grid_steps(delta)), self.first_exact(delta))

    def _lattice_profile(self):
        if self._lattice is None:
            top = self.width / 2.0
            ratio = 1000.0 ** (1.0 / LATTICE_PER_3_DECADES)
            count = int(math.ceil(math.log(top / (LATTICE_FLOOR * self.width)) / math.log(ratio)))
            hs = top / ratio ** np.arange(count, -1, -1)
            sups = np.array([self.second_exact(h) for h in hs])
            self._lattice = (hs, np.maximum.accumulate(sups))
        return self._lattice

    def second(self, hmax: float) -> float:
        """Estimate of omega_2(f; hmax), steps h in (0, hmax]; saturates at width/2."""
        if not hmax > 0.0:
            return 0.0
        hmax = min(float(hmax), self.width / 2.0)
        best = max(self._profile("second", self._grid_steps(hmax)), self.second_exact(hmax))
        hs, cummax = self._lattice_profile()
        idx = int(np.searchsorted(hs, hmax * (1.0 + 1e-12), side="right")) - 1
        if idx >= 0:
            best = max(best, float(cummax[idx]))
        return best

    def lipschitz(self, a: float) -> float:
        """max over grid pairs of |f(t) - f(s)| / |t - s|^a."""
        if not 0.0 < a <= 1.0:
            raise ParameterError(f"Lipschitz exponent must lie in (0, 1], got {a}")
        return float(_kernels.lipschitz_max(self.values, self.step, float(a)))


def modulus_first(f: FunctionHandle, query: ModulusQuery) -> float:
    """Grid estimate of sup{|f(t) - f(s)| : |t - s| <= delta}."""
    g = GridModuli(f, (query.domain_lo, query.domain_hi), query.grid_points)
    return g.first(query.delta)


def modulus_second(f: FunctionHandle, hmax: float, domain=(0.0, 1.0), grid_points: int = DEFAULT_GRID) -> float:
    """Grid estimate of sup_{0<h<=hmax} sup_x |f(x+2h) - 2f(x+h) + f(x)|.

    The argument is the plain step bound; pass sqrt(delta) for omega_2(f, sqrt(delta)).
    """
    lo, hi, grid_points = _check_domain(domain, grid_points)
    if not 0.0 < hmax <= (hi - lo) / 2.0:
        raise ParameterError(f"hmax must lie in (0, width/2] = (0, {(hi - lo) / 2}], got {hmax}")
    return GridModuli(f, (lo, hi), grid_points).second(hmax)


def modulus_derivative(f: FunctionHandle, delta: float, domain=(0.0, 1.0), grid_points: int = DEFAULT_GRID) -> float:
    """omega_1(f'; delta), the first modulus of the supplied derivative."""
    return modulus_first(f.derivative(), ModulusQuery(delta, domain[0], domain[1], grid_points))


def lipschitz_estimate(f: FunctionHandle, a: float, domain=(0.0, 1.0), grid_points: int = DEFAULT_GRID) -> float:
    """Lower estimate of the smallest M with |f(t) - f(s)| <= M |t - s|^a."""
    if not 0.0 < a <= 1.0:
        raise ParameterError(f"Lipschitz exponent must lie in (0, 1], got {a}")
    return GridModuli(f, domain, grid_points).lipschitz(a)
