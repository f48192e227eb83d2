import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqstancu.basis import FunctionHandle, OperatorConfig
from pqstancu.bounds import (
    SLACK_TOLERANCE,
    BoundContext,
    applicable_kinds,
    bound_thm32,
    bound_thm33,
    bound_thm41,
    bound_thm43,
    is_thm33_corner,
)
from pqstancu.corpus import get, monomial
from pqstancu.pq_core import ParameterError, PQPair

CLASSICAL = OperatorConfig(20, 0, 0.0, 0.0, PQPair(1.0, 1.0))
SHIFTED = OperatorConfig(25, 1, 0.5, 1.0, PQPair(0.98, 0.96))
XS = np.linspace(0.0, 1.0, 101)


def test_lipschitz_bound_frozen_classical_values():
    # classical Bernstein at x = 1/2: E|K/n - 1/2| = C(n, n/2) / 2^(n+1) for K ~ Bin(n, 1/2)
    r = bound_thm43(CLASSICAL, get("abs_half"), 0.5)
    assert r.actual_error == pytest.approx(math.comb(20, 10) / 2**21, abs=1e-15)
    assert r.params["m2"] == pytest.approx(0.25 / 20, abs=1e-16)
    assert r.bound_value == pytest.approx(math.sqrt(0.0125), abs=1e-15)
    assert r.slack == pytest.approx(r.bound_value - r.actual_error)


def test_lipschitz_bound_override():
    r = bound_thm43(CLASSICAL, get("sqrt"), 0.3, M=2.0, a=0.5)
    assert r.bound_value == pytest.approx(2.0 * (0.3 * 0.7 / 20) ** 0.25, rel=1e-12)
    with pytest.raises(ParameterError):
        bound_thm43(CLASSICAL, get("square"), 0.3)
    with pytest.raises(ParameterError):
        bound_thm43(CLASSICAL, get("sqrt"), 0.3, M=1.0, a=1.5)


def test_modulus_bound_uses_root_second_moment():
    r = bound_thm32(CLASSICAL, get("sin_pi"), 0.3)
    delta = math.sqrt(0.3 * 0.7 / 20)
    assert r.params["delta"] == pytest.approx(delta, rel=1e-12)
    assert r.params["omega"] == pytest.approx(math.sin(math.pi * delta), abs=1e-12)
    assert r.bound_value == pytest.approx(2 * math.sin(math.pi * delta), abs=1e-12)


def test_second_modulus_bound_without_shift():
    # m1 = 0, so the bound is C omega_2(sqrt(m2)) and the omega term vanishes
    r = bound_thm41(CLASSICAL, get("sin_pi"), 0.3, C=4.0)
    assert r.params["omega"] == 0.0
    assert r.params["theta"] == pytest.approx(0.3 * 0.7 / 20)
    assert r.bound_value == pytest.approx(4.0 * r.params["omega2"])
    assert r.params["ratio"] == pytest.approx(r.actual_error / r.params["omega2"])
    with pytest.raises(ParameterError):
        bound_thm41(CLASSICAL, get("sin_pi"), 0.3, C=0.0)


def test_derivative_bound_variants():
    ctx = BoundContext(OperatorConfig(40, 0, 0.0, 0.0, PQPair(1.0, 1.0)), monomial(2), XS)
    proof, _ = ctx.thm33("proof")
    printed, _ = ctx.thm33("printed")
    assert np.min(proof - ctx.errors) >= -SLACK_TOLERANCE
    # the square-root scaling is too weak for t^2 at this n
    assert np.min(printed - ctx.errors) < -1e-4
    with pytest.raises(ParameterError):
        ctx.thm33("other")
    with pytest.raises(ParameterError):
        BoundContext(CLASSICAL, get("abs_half"), XS).thm33()


def test_corner_flag():
    assert not is_thm33_corner(CLASSICAL)
    assert is_thm33_corner(SHIFTED)
    assert bound_thm33(SHIFTED, get("sin_pi"), 0.4).params["corner"] is True
    assert bound_thm33(CLASSICAL, get("sin_pi"), 0.4).params["corner"] is False


def test_applicable_kinds():
    assert applicable_kinds(get("sin_pi")) == ["thm32", "thm33", "thm41", "thm43"]
    assert applicable_kinds(get("square")) == ["thm32", "thm33", "thm41"]
    assert applicable_kinds(get("sqrt")) == ["thm32", "thm41", "thm43"]


def test_inflation_scales_moduli_terms():
    a, _ = BoundContext(SHIFTED, get("exp_neg"), XS).thm32()
    b, _ = BoundContext(SHIFTED, get("exp_neg"), XS, inflation=1.05).thm32()
    np.testing.assert_allclose(b, 1.05 * a, rtol=1e-15)
    with pytest.raises(ParameterError):
        BoundContext(SHIFTED, get("exp_neg"), XS, inflation=0.9)


def test_reports_per_point():
    ctx = BoundContext(SHIFTED, get("sin_pi"), XS[:5], grid_points=512)
    reps = ctx.reports("thm41")
    assert len(reps) == 5
    assert [r.x for r in reps] == list(XS[:5])
    assert all(r.bound_kind == "thm41" for r in reps)
    with pytest.raises(ParameterError):
        ctx.evaluate("thm99")


def configs():
    return st.builds(
        lambda n, l, ab, p, frac: OperatorConfig(n, l, ab[0], ab[1], PQPair(p, p * frac)),
        st.integers(2, 60),
        st.integers(0, 3),
        st.tuples(st.floats(0, 2), st.floats(0, 2)).map(sorted),
        st.floats(0.9, 1.0),
        st.floats(0.9, 1.0),
    )


@settings(max_examples=40, deadline=None)
@given(configs(), st.sampled_from(["sin_pi", "exp_neg", "square", "abs_half", "sqrt"]))
def test_modulus_bound_dominates(cfg, name):
    ctx = BoundContext(cfg, get(name), XS[::5], grid_points=1024, inflation=1.05)
    bound, _ = ctx.thm32()
    assert np.min(bound - ctx.errors) >= -SLACK_TOLERANCE


@settings(max_examples=40, deadline=None)
@given(configs(), st.sampled_from(["abs_half", "sqrt", "exp_neg", "sin_pi"]))
def test_lipschitz_bound_dominates(cfg, name):
    ctx = BoundContext(cfg, get(name), XS[::5])
    bound, _ = ctx.thm43()
    assert np.min(bound - ctx.errors) >= -SLACK_TOLERANCE


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 60), st.floats(0.9, 1.0), st.floats(0.9, 1.0))
def test_derivative_bound_dominates_off_corner(n, p, frac):
    cfg = OperatorConfig(n, 0, 0.0, 0.0, PQPair(p, p * frac))
    for name in ("sin_pi", "exp_neg", "square"):
        ctx = BoundContext(cfg, get(name), XS[::5], grid_points=1024, inflation=1.05)
        bound, _ = ctx.thm33()
        assert np.min(bound - ctx.errors) >= -SLACK_TOLERANCE


def test_custom_function_handle():
    f = FunctionHandle("cube", lambda t: t**3, deriv=lambda t: 3 * t**2)
    ctx = BoundContext(SHIFTED, f, XS[::10], grid_points=512)
    for kind in applicable_kinds(f):
        bound, params = ctx.evaluate(kind)
        assert bound.shape == (11,)
        assert all(np.shape(v) == (11,) for v in params.values())
