"""Kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when it is
missing or when the environment variable ``PQSTANCU_PURE_PYTHON`` is set to
a non-empty value other than ``0``.
"""
import os

BACKEND = "python"

if os.environ.get("PQSTANCU_PURE_PYTHON", "") in ("", "0"):
    try:
        from ._ckernels import (
            basis_matrix,
            lipschitz_max,
            modulus_profile,
            second_difference_profile,
        )

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import (  # noqa: F401
        basis_matrix,
        lipschitz_max,
        modulus_profile,
        second_difference_profile,
    )
