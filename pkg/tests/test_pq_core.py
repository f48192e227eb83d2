import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from pqstancu.pq_core import (
    LOG_SPACE_THRESHOLD,
    ParameterError,
    PQPair,
    pq_binomial,
    pq_binomial_expand,
    pq_factorial,
    pq_falling_product,
    pq_int,
    pq_int_ratio,
    pq_log_factorial,
    pq_product_form,
)

PQ = PQPair(0.9, 0.8)


def pq_pairs(min_gap=0.0, p_min=0.05):
    return st.tuples(st.floats(p_min, 1.0), st.floats(0.0, 1.0)).map(
        lambda t: (t[0], t[0] * (1 - min_gap) * max(t[1], 1e-3))
    ).filter(lambda t: 0 < t[1] <= t[0])


def test_frozen_values():
    assert pq_int(3, PQ) == pytest.approx(0.81 + 0.72 + 0.64, abs=1e-15)
    assert pq_factorial(2, PQ) == pytest.approx(1.7, abs=1e-15)
    assert pq_binomial(2, 1, PQ) == pytest.approx(1.7, abs=1e-15)
    assert pq_falling_product(0.5, 2, PQ) == pytest.approx((1 - 0.5) * (0.9 - 0.8 * 0.5), abs=1e-15)
    assert pq_binomial_expand(1, 1, 0.3, 0.6, 4, PQ) == pytest.approx(pq_product_form(0.3, 0.6, 4, PQ), rel=1e-14)


def test_zero_and_one():
    assert pq_int(0, PQ) == 0.0
    assert pq_int(1, PQ) == 1.0
    assert pq_factorial(0, PQ) == 1.0
    assert pq_binomial(5, 0, PQ) == 1.0
    assert pq_binomial(5, 5, PQ) == 1.0
    assert pq_falling_product(0.3, 0, PQ) == 1.0
    assert pq_product_form(0.3, 0.2, 0, PQ) == 1.0


def test_classical_reduction():
    one = PQPair(1.0, 1.0)
    assert one.classical
    for k in range(15):
        assert pq_int(k, one) == k
        assert pq_factorial(k, one) == math.factorial(k)
        for j in range(k + 1):
            assert pq_binomial(k, j, one) == pytest.approx(math.comb(k, j), rel=1e-14)


def test_equal_p_q_uses_derivative_limit():
    pq = PQPair(0.7, 0.7)
    for k in range(1, 10):
        assert pq_int(k, pq) == pytest.approx(k * 0.7 ** (k - 1), rel=1e-15)
    with pytest.raises(ParameterError):
        pq_int_ratio(3, pq)


def test_not_monotone_below_p_one():
    # [k] need not increase with k once p < 1
    pq = PQPair(0.5, 0.4)
    assert pq_int(2, pq) == pytest.approx(0.9)
    assert pq_int(2, pq) < pq_int(1, pq)


@given(st.floats(0.01, 1.0), st.integers(0, 40))
def test_monotone_at_p_one(q, k):
    pq = PQPair(1.0, q)
    # the increment q^k eventually drops below one ulp
    assert pq_int(k + 1, pq) >= pq_int(k, pq)
    if q**k > 1e-12:
        assert pq_int(k + 1, pq) > pq_int(k, pq)


@pytest.mark.parametrize("p,q", [(0.0, 0.0), (1.0, 1.1), (0.5, 0.6), (1.2, 0.5), (0.5, 0.0), (math.nan, 0.5)])
def test_pair_validation(p, q):
    with pytest.raises(ParameterError):
        PQPair(p, q)


@pytest.mark.parametrize("bad", [-1, 1.5, True, "3"])
def test_index_validation(bad):
    with pytest.raises((ParameterError, ValueError, TypeError)):
        pq_int(bad, PQ)


def test_binomial_k_above_n():
    with pytest.raises(IndexError):
        pq_binomial(3, 4, PQ)


def test_factorial_overflow_raises():
    with pytest.raises(OverflowError):
        pq_factorial(400, PQPair(1.0, 1.0))


def test_log_space_binomial_is_continuous_across_threshold():
    pq = PQPair(0.999, 0.99)
    n = LOG_SPACE_THRESHOLD + 1
    for k in (1, 5, 30, 70):
        direct = math.prod(pq_int(n - k + i, pq) / pq_int(i, pq) for i in range(1, k + 1))
        assert pq_binomial(n, k, pq) == pytest.approx(direct, rel=1e-11)


@settings(max_examples=200)
@given(pq_pairs(min_gap=1e-3), st.integers(0, 60))
def test_summation_matches_ratio_form(pair, k):
    pq = PQPair(*pair)
    assume(pq.p - pq.q >= 1e-3)
    assert pq_int(k, pq) == pytest.approx(pq_int_ratio(k, pq), rel=1e-12, abs=1e-12)


@given(pq_pairs(), st.integers(1, 40), st.data())
def test_pascal_recurrence(pair, n, data):
    pq = PQPair(*pair)
    k = data.draw(st.integers(1, n - 1)) if n > 1 else 0
    assume(0 < k < n)
    p, q = pq.p, pq.q
    lhs = pq_binomial(n, k, pq)
    rhs = p**k * pq_binomial(n - 1, k, pq) + q ** (n - k) * pq_binomial(n - 1, k - 1, pq)
    assert lhs == pytest.approx(rhs, rel=1e-10)


# the oracle forms full factorials, which underflow for small p
@given(pq_pairs(p_min=0.4), st.integers(0, 40), st.data())
def test_binomial_symmetry_and_oracle(pair, n, data):
    pq = PQPair(*pair)
    k = data.draw(st.integers(0, n))
    assert pq_binomial(n, k, pq) == pytest.approx(pq_binomial(n, n - k, pq), rel=1e-12)
    if pq.p - pq.q > 1e-3:
        assert pq_binomial(n, k, pq) == pytest.approx(oracles.pq_binom(n, k, pq.p, pq.q), rel=1e-9)


@given(pq_pairs(), st.integers(0, 30), st.floats(0, 1), st.floats(0, 1))
def test_expansion_equals_product(pair, n, x, y):
    pq = PQPair(*pair)
    a = pq_binomial_expand(1, 1, x, y, n, pq)
    b = pq_product_form(x, y, n, pq)
    assert a == pytest.approx(b, rel=1e-10, abs=1e-300)


@given(pq_pairs(p_min=0.4), st.integers(0, 25))
def test_log_factorial_consistent(pair, k):
    pq = PQPair(*pair)
    assert pq_log_factorial(k, pq) == pytest.approx(math.log(pq_factorial(k, pq)), abs=1e-9)
