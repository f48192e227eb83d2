import os
import subprocess
import sys

import numpy as np
import pytest

from pqstancu import _pykernels

ck = pytest.importorskip("pqstancu._ckernels", reason="compiled kernels not built")

XS = np.linspace(0.0, 1.0, 41)


@pytest.mark.parametrize("r,N,use_log", [(0.9, 12, False), (0.999, 300, False), (1.0, 50, False),
                                         (0.97, 80, True), (0.5, 700, True)])
def test_basis_matrix_backends_agree(r, N, use_log):
    a = ck.basis_matrix(r, N, XS, use_log)
    b = _pykernels.basis_matrix(r, N, XS, use_log)
    np.testing.assert_allclose(a, b, atol=1e-14, rtol=1e-12)


def test_profile_backends_agree():
    rng = np.random.default_rng(3)
    v = np.cumsum(rng.normal(size=500))
    np.testing.assert_allclose(ck.modulus_profile(v, 60), _pykernels.modulus_profile(v, 60), rtol=1e-15)
    np.testing.assert_allclose(ck.second_difference_profile(v, 60),
                               _pykernels.second_difference_profile(v, 60), rtol=1e-15)
    assert ck.lipschitz_max(v, 0.01, 0.5) == pytest.approx(_pykernels.lipschitz_max(v, 0.01, 0.5), rel=1e-14)


def test_modulus_profile_small_case():
    v = np.array([0.0, 1.0, 0.0, 3.0])
    # k = 1: max |v[i+1] - v[i]| = 3; k = 2: max |v[i+2] - v[i]| = 3; k = 3: 3
    np.testing.assert_allclose(_pykernels.modulus_profile(v, 3)[1:], [3.0, 3.0, 3.0])
    np.testing.assert_allclose(_pykernels.second_difference_profile(v, 1)[1:], [4.0])


def _backend_under(env_value):
    env = dict(os.environ)
    if env_value is None:
        env.pop("PQSTANCU_PURE_PYTHON", None)
    else:
        env["PQSTANCU_PURE_PYTHON"] = env_value
    out = subprocess.run([sys.executable, "-c", "import pqstancu; print(pqstancu.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    return out.stdout.strip()


def test_environment_selects_backend():
    assert _backend_under(None) == "cython"
    assert _backend_under("0") == "cython"
    assert _backend_under("1") == "python"


def test_pure_python_selftest_passes():
    env = dict(os.environ, PQSTANCU_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-m", "pqstancu", "selftest", "--quick"], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stdout + out.stderr
    assert "backend python" in out.stdout
