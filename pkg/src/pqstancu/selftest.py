"""Oracle and invariant checks runnable from the command line.

Each group returns a :class:`GroupResult`; ``run_selftest`` runs them in a
fixed order.  Closed forms are looked up through their modules at call time
so that a patched (mutated) implementation is what gets checked.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import basis, bounds, convergence_lab, corpus, moments, pq_core
from .basis import OperatorConfig
from .pq_core import PQPair

__all__ = ["GroupResult", "GROUPS", "run_selftest", "moment_sweep_gap", "STANDARD_SWEEP"]

STANDARD_SWEEP = dict(
    n=(1, 2, 5, 10, 25, 50),
    l=(0, 1, 3),
    ab=((0.0, 0.0), (0.5, 1.0), (2.0, 2.0)),
    pq=((1.0, 0.9), (0.95, 0.9), (0.999, 0.998)),
    x=tuple(np.linspace(0.0, 1.0, 11)),
)
QUICK_SWEEP = dict(
    n=(1, 5, 25),
    l=(0, 3),
    ab=((0.0, 0.0), (0.5, 1.0)),
    pq=((1.0, 0.9), (0.95, 0.9)),
    x=tuple(np.linspace(0.0, 1.0, 6)),
)


@dataclass
class GroupResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0


def _classical_bernstein(f, n, x):
    k = np.arange(n + 1)
    w = np.array([math.comb(n, int(j)) for j in k]) * x**k * (1 - x) ** (n - k)
    return float(w @ f(k / n))


def _q_stancu_schurer(f, n, l, alpha, beta, q, x):
    # p = 1 specialisation written out directly from the q-integers
    N = n + l

    def qi(k):
        return float(sum(q**i for i in range(k)))

    def qbinom(a, b):
        out = 1.0
        for i in range(1, b + 1):
            out *= qi(a - b + i) / qi(i)
        return out

    total = 0.0
    for v in range(N + 1):
        w = qbinom(N, v) * x**v
        for j in range(N - v):
            w *= 1.0 - q**j * x
        total += w * f((qi(v) + alpha) / (qi(n) + beta))
    return total


def check_pq_identities(quick: bool = False) -> GroupResult:
    worst = []
    kmax = 30 if quick else 60
    for p, q in [(0.9, 0.8), (1.0, 0.5), (0.7, 0.699), (0.5, 0.1)]:
        pq = PQPair(p, q)
        for k in range(kmax + 1):
            s, r = pq_core.pq_int(k, pq), pq_core.pq_int_ratio(k, pq)
            if abs(s - r) > 1e-12 * max(1.0, abs(r)):
                worst.append(f"sum/ratio k={k} p={p} q={q}")
        for n in range(1, (20 if quick else 40) + 1):
            for k in range(n + 1):
                lhs = pq_core.pq_binomial(n, k, pq)
                rhs = p**k * pq_core.pq_binomial(n - 1, k, pq) if k < n else 0.0
                if k >= 1:
                    rhs += q ** (n - k) * pq_core.pq_binomial(n - 1, k - 1, pq)
                if abs(lhs - rhs) > 1e-10 * abs(lhs):
                    worst.append(f"pascal n={n} k={k}")
        rng = np.random.default_rng(7)
        for n in range(0, 31, 3 if quick else 1):
            for x, y in rng.random((5, 2)):
                a = pq_core.pq_binomial_expand(1, 1, x, y, n, pq)
                b = pq_core.pq_product_form(x, y, n, pq)
                if abs(a - b) > 1e-10 * max(abs(b), 1e-300):
                    worst.append(f"expand/product n={n}")
    one = PQPair(1.0, 1.0)
    for k in range(12):
        if pq_core.pq_int(k, one) != k or pq_core.pq_factorial(k, one) != math.factorial(k):
            worst.append(f"classical k={k}")
    return GroupResult("pq identities", not worst, "; ".join(worst[:3]) or "all identities hold")


def check_partition_of_unity(quick: bool = False) -> GroupResult:
    xs = np.linspace(0.0, 1.0, 101)
    worst_sum, worst_neg = 0.0, 0.0
    ns = (1, 2, 7, 20) if quick else (1, 2, 3, 5, 8, 13, 21, 34, 55, 60)
    for n, l in itertools.product(ns, (0, 1, 3, 5)):
        if n + l > 60:
            continue
        for p, q in STANDARD_SWEEP["pq"] + ((0.5, 0.4), (1.0, 1.0)):
            W = basis.basis_weights(OperatorConfig(n, l, 0.0, 0.0, PQPair(p, q)), xs)
            worst_sum = max(worst_sum, float(np.max(np.abs(W.sum(axis=1) - 1.0))))
            worst_neg = min(worst_neg, float(W.min()))
    ok = worst_sum <= 1e-12 and worst_neg >= -1e-15
    return GroupResult("partition of unity", ok, f"max |sum - 1| = {worst_sum:.3g}, min weight = {worst_neg:.3g}")


def moment_sweep_gap(sweep=STANDARD_SWEEP) -> float:
    """max |closed - brute force| over raw and central orders 0..2."""
    gap = 0.0
    for n, l, (a, b), (p, q) in itertools.product(sweep["n"], sweep["l"], sweep["ab"], sweep["pq"]):
        cfg = OperatorConfig(n, l, a, b, PQPair(p, q))
        W = basis.basis_weights(cfg, np.asarray(sweep["x"]))
        t = basis.nodes(cfg)
        for j, x in enumerate(sweep["x"]):
            w = W[j]
            for i in range(3):
                raw_bf = math.fsum((w * t**i).tolist())
                cen_bf = math.fsum((w * (t - x) ** i).tolist())
                gap = max(gap,
                          abs(moments.ss_moment_closed(i, cfg, x) - raw_bf),
                          abs(moments.ss_central_moment_closed(i, cfg, x) - cen_bf))
            if a == 0.0 and b == 0.0:
                for i in range(3):
                    bs = moments.bs_moment_closed(i, n, l, cfg.pq, x)
                    gap = max(gap, abs(bs - math.fsum((w * t**i).tolist())))
    return gap


def check_moments(quick: bool = False) -> GroupResult:
    gap = moment_sweep_gap(QUICK_SWEEP if quick else STANDARD_SWEEP)
    return GroupResult("moment equivalence", gap <= 1e-10, f"max |closed - brute force| = {gap:.3g}")


def check_reduction_chain(quick: bool = False) -> GroupResult:
    xs = np.linspace(0.0, 1.0, 21 if quick else 101)
    f = corpus.get("sin_pi")
    g1 = g2 = g3 = 0.0
    for n, l in [(3, 0), (7, 2), (15, 1)] + ([] if quick else [(30, 3)]):
        for p, q in [(0.95, 0.9), (1.0, 0.8)]:
            pq = PQPair(p, q)
            s = basis.apply_stancu_schurer(OperatorConfig(n, l, 0.0, 0.0, pq), f, xs)
            b = basis.apply_bernstein_schurer(n, l, pq, f, xs)
            g1 = max(g1, float(np.max(np.abs(s - b))))
        s = basis.apply_stancu_schurer(OperatorConfig(n, 0, 0.0, 0.0, PQPair(1.0, 1.0)), f, xs)
        c = np.array([_classical_bernstein(f, n, x) for x in xs])
        g2 = max(g2, float(np.max(np.abs(s - c))))
        s = basis.apply_stancu_schurer(OperatorConfig(n, l, 0.5, 1.0, PQPair(1.0, 0.9)), f, xs)
        r = np.array([_q_stancu_schurer(f, n, l, 0.5, 1.0, 0.9, x) for x in xs])
        g3 = max(g3, float(np.max(np.abs(s - r))))
    ok = g1 <= 1e-14 and g2 <= 1e-12 and g3 <= 1e-12
    return GroupResult("reduction chain", ok, f"S vs B {g1:.3g}, classical {g2:.3g}, q-only {g3:.3g}")


def check_korovkin(quick: bool = False) -> GroupResult:
    rep = convergence_lab.run_korovkin()
    e0, e1, e2 = (rep.column(k) for k in ("e0", "e1", "e2"))
    slope = convergence_lab.fit_decay_rate(rep, "e2")
    ok = (np.all(e0 <= 1e-12) and np.all(np.diff(e1) < 0) and np.all(np.diff(e2) < 0)
          and -1.3 <= slope <= -0.7)
    return GroupResult("korovkin decay", bool(ok), f"max e0 {e0.max():.3g}, e2 slope {slope:.4f}")


def check_bounds(quick: bool = False) -> GroupResult:
    rep = convergence_lab.run_bound_sweep(corpus=corpus.resolve(corpus.CORPUS_NAMES))
    bad = [r for r in rep.bound_rows if r.asserted and r.min_slack < -bounds.SLACK_TOLERANCE]
    bad += [r for r in rep.bound_rows
            if r.bound_kind == "thm41" and r.fn in corpus.SMOOTH_CORPUS and not r.max_ratio < 4.0]
    detail = "all asserted bounds hold" if not bad else f"{bad[0].bound_kind}/{bad[0].fn} at n={bad[0].n}"
    return GroupResult("bound validity", not bad, detail)


GROUPS: List[Callable[[bool], GroupResult]] = [
    check_pq_identities,
    check_partition_of_unity,
    check_moments,
    check_reduction_chain,
]
FULL_ONLY: List[Callable[[bool], GroupResult]] = [check_korovkin, check_bounds]


def run_selftest(quick: bool = False, out=print) -> List[GroupResult]:
    results = []
    for check in GROUPS + ([] if quick else FULL_ONLY):
        t0 = time.perf_counter()
        try:
            res = check(quick)
        except Exception as exc:  # a crashing group is a failing group
            res = GroupResult(check.__name__, False, f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - t0
        out(f"{'PASS' if res.ok else 'FAIL'}  {res.name:<20} {res.detail}  ({res.seconds:.2f}s)")
        results.append(res)
    return results
