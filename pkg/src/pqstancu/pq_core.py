"""(p,q)-integers, factorials, binomial coefficients and the (p,q)-binomial theorem.

The (p,q)-integer is evaluated through its summation form

    [k]_{p,q} = sum_{i=0}^{k-1} p^(k-1-i) q^i

which agrees with (p^k - q^k)/(p - q) whenever p != q, stays accurate as
q -> p, and extends the definition to q == p.  In particular [0]_{p,q} = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ParameterError",
    "PQPair",
    "LOG_SPACE_THRESHOLD",
    "pq_int",
    "pq_int_ratio",
    "pq_factorial",
    "pq_log_factorial",
    "pq_binomial",
    "pq_falling_product",
    "pq_binomial_expand",
    "pq_product_form",
]

# binomials of order above this are computed from log-factorials
LOG_SPACE_THRESHOLD = 140


class ParameterError(ValueError):
    """An argument violates a documented invariant."""


@dataclass(frozen=True)
class PQPair:
    """Deformation parameters with 0 < q <= p <= 1."""

    p: float
    q: float

    def __post_init__(self):
        p, q = float(self.p), float(self.q)
        if not (math.isfinite(p) and math.isfinite(q)):
            raise ParameterError(f"PQPair: p and q must be finite (p={p}, q={q})")
        if not 0.0 < q <= p <= 1.0:
            raise ParameterError(f"PQPair: requires 0 < q <= p <= 1 (p={p}, q={q})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def ratio(self) -> float:
        """q/p, the single parameter left after factoring p out of the basis."""
        return self.q / self.p

    @property
    def classical(self) -> bool:
        return self.p == 1.0 and self.q == 1.0


def _check_index(name: str, k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ParameterError(f"{name} must be a nonnegative integer, got {k!r}")
    return int(k)


def pq_int(k: int, pq: PQPair) -> float:
    """Return the (p,q)-integer [k]_{p,q} via the summation form."""
    k = _check_index("k", k)
    if k == 0:
        return 0.0
    p, q = pq.p, pq.q
    if p == q:
        return k * p ** (k - 1)
    return math.fsum(p ** (k - 1 - i) * q**i for i in range(k))


def pq_int_ratio(k: int, pq: PQPair) -> float:
    """Ratio form (p^k - q^k)/(p - q).  Cancellation-prone as q -> p; used for checks."""
    k = _check_index("k", k)
    if pq.p == pq.q:
        raise ParameterError("pq_int_ratio: ratio form undefined for p == q")
    return (pq.p**k - pq.q**k) / (pq.p - pq.q)


def pq_factorial(k: int, pq: PQPair) -> float:
    """[k]_{p,q}! = [1][2]...[k], with [0]! = 1.

    Raises OverflowError instead of returning infinity.
    """
    k = _check_index("k", k)
    out = 1.0
    for i in range(1, k + 1):
        out *= pq_int(i, pq)
        if math.isinf(out):
            raise OverflowError(f"pq_factorial: [{k}]_{{p,q}}! exceeds the float range")
    return out


def pq_log_factorial(k: int, pq: PQPair) -> float:
    """Natural log of [k]_{p,q}!."""
    k = _check_index("k", k)
    return math.fsum(math.log(pq_int(i, pq)) for i in range(1, k + 1))


def pq_binomial(n: int, k: int, pq: PQPair) -> float:
    """(p,q)-binomial coefficient [n]!/([k]! [n-k]!)."""
    n = _check_index("n", n)
    k = _check_index("k", k)
    if k > n:
        raise IndexError(f"pq_binomial: k={k} exceeds n={n}")
    k = min(k, n - k)
    if n > LOG_SPACE_THRESHOLD:
        logc = pq_log_factorial(n, pq) - pq_log_factorial(k, pq) - pq_log_factorial(n - k, pq)
        try:
            return math.exp(logc)
        except OverflowError:
            raise OverflowError(f"pq_binomial: C({n},{k})_{{p,q}} exceeds the float range") from None
    # running ratio avoids forming the (possibly huge) factorials
    out = 1.0
    for i in range(1, k + 1):
        out *= pq_int(n - k + i, pq) / pq_int(i, pq)
    return out


def pq_falling_product(x: float, m: int, pq: PQPair) -> float:
    """prod_{j=0}^{m-1} (p^j - q^j x), equal to 1 for m = 0."""
    m = _check_index("m", m)
    out = 1.0
    for j in range(m):
        out *= pq.p**j - pq.q**j * x
    return out


def pq_binomial_expand(a: float, b: float, x: float, y: float, n: int, pq: PQPair) -> float:
    """Expanded (p,q)-binomial sum for (ax + by)^n_{p,q}."""
    n = _check_index("n", n)
    p, q = pq.p, pq.q
    terms = []
    for k in range(n + 1):
        m = n - k
        terms.append(
            pq_binomial(n, k, pq)
            * p ** (m * (m - 1) // 2)
            * q ** (k * (k - 1) // 2)
            * (a * x) ** m
            * (b * y) ** k
        )
    return math.fsum(terms)


def pq_product_form(x: float, y: float, n: int, pq: PQPair) -> float:
    """prod_{j=0}^{n-1} (p^j x + q^j y)."""
    n = _check_index("n", n)
    out = 1.0
    for j in range(n):
        out *= pq.p**j * x + pq.q**j * y
    return out
