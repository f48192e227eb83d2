import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqstancu.basis import FunctionHandle
from pqstancu.corpus import get, monomial
from pqstancu.pq_core import ParameterError
from pqstancu.smoothness import (
    GridModuli,
    ModulusQuery,
    lipschitz_estimate,
    modulus_derivative,
    modulus_first,
    modulus_second,
)


@pytest.mark.parametrize("delta", [0.01, 0.1, 0.3, 0.5])
def test_first_modulus_of_sine(delta):
    # attained by the pair (0, delta)
    est = modulus_first(get("sin_pi"), ModulusQuery(delta, 0.0, 1.0))
    assert est == pytest.approx(math.sin(math.pi * delta), abs=1e-12)


def test_first_modulus_saturates():
    assert modulus_first(get("sin_pi"), ModulusQuery(0.8, 0.0, 1.0)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("delta", [0.05, 0.25, 0.7])
def test_first_modulus_of_square_from_below(delta):
    true = 2 * delta - delta * delta
    est = modulus_first(monomial(2), ModulusQuery(delta, 0.0, 1.0))
    assert est <= true + 1e-15
    assert est >= true - 2.0 / 2048


@pytest.mark.parametrize("h", [0.01, 0.1, 0.25, 0.5])
def test_second_modulus_of_square_is_exact(h):
    assert modulus_second(monomial(2), h) == pytest.approx(2 * h * h, rel=1e-12)


@pytest.mark.parametrize("h", [0.02, 0.2, 0.5])
def test_second_modulus_of_sine(h):
    # the sup sits at centre 1/2, reached exactly only when 1/2 - h is a grid point
    true = 2 * (1 - math.cos(math.pi * h))
    est = modulus_second(get("sin_pi"), h)
    assert true - 1e-6 <= est <= true + 1e-15


def test_second_modulus_of_linear_vanishes():
    assert modulus_second(monomial(1), 0.3) <= 1e-15


def test_derivative_modulus_and_lipschitz():
    assert modulus_derivative(monomial(2), 0.1) == pytest.approx(0.2, abs=1e-12)
    assert lipschitz_estimate(get("sqrt"), 0.5) == pytest.approx(1.0, abs=1e-12)
    assert lipschitz_estimate(get("abs_half"), 1.0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ParameterError):
        modulus_derivative(get("abs_half"), 0.1)


def test_query_validation():
    with pytest.raises(ParameterError):
        ModulusQuery(0.0, 0.0, 1.0)
    with pytest.raises(ParameterError):
        ModulusQuery(2.0, 0.0, 1.0)
    with pytest.raises(ParameterError):
        ModulusQuery(0.1, 0.0, 1.0, grid_points=8)
    with pytest.raises(ParameterError):
        modulus_second(get("sin_pi"), 0.6)


def test_grid_moduli_clamps_and_zero():
    gm = GridModuli(get("exp_neg"), (0.0, 2.0), 512)
    assert gm.first(0.0) == 0.0
    assert gm.first(10.0) == pytest.approx(1 - math.exp(-2), abs=1e-14)
    assert gm.second(5.0) == gm.second(1.0)


def test_wider_domain():
    f = FunctionHandle("lin", lambda t: 3 * t)
    assert modulus_first(f, ModulusQuery(0.4, 0.0, 3.0)) == pytest.approx(1.2, abs=1e-12)


def test_grid_refinement_never_decreases_estimate():
    # intervals nest under doubling, so the sampled pairs only grow
    f = get("abs_half")
    ests = [modulus_second(f, 0.013, grid_points=g) for g in (128, 256, 512, 1024)]
    assert all(b >= a - 1e-15 for a, b in zip(ests, ests[1:]))


@settings(max_examples=80, deadline=None)
@given(st.floats(1e-4, 1.0), st.sampled_from(["sin_pi", "exp_neg", "square", "abs_half", "sqrt"]))
def test_first_modulus_bounded_by_lipschitz(delta, name):
    f = get(name)
    M, a = f.lip_spec or (2.0, 1.0)
    est = modulus_first(f, ModulusQuery(delta, 0.0, 1.0, 512))
    assert 0.0 <= est <= M * delta**a + 1e-12


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 0.5), st.floats(1e-3, 0.5))
def test_second_modulus_monotone(h1, h2):
    gm = GridModuli(get("sqrt"), (0.0, 1.0), 512)
    lo, hi = sorted((h1, h2))
    assert gm.second(lo) <= gm.second(hi) + 1e-15


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-3, 0.5))
def test_second_bounded_by_twice_first(h):
    gm = GridModuli(get("sin_pi"), (0.0, 1.0), 512)
    assert gm.second(h) <= 2 * gm.first(h) + 1e-12
    assert np.isfinite(gm.second(h))
