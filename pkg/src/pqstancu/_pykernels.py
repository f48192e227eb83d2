"""Pure numpy implementations of the hot kernels.

Signatures and results match the compiled ``_ckernels`` module; this one is
used whenever the extension is not built or ``PQSTANCU_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "basis_matrix",
    "modulus_profile",
    "second_difference_profile",
    "lipschitz_max",
]


def _ratio_ints(r, N):
    # [k]_{1,r} for k = 0..N by cumulative geometric sums
    out = np.zeros(N + 1)
    if N:
        out[1:] = np.cumsum(r ** np.arange(N))
    return out


def basis_matrix(r, N, xs, use_log=False):
    """Weights C(N,v)_r x^v prod_{j<N-v}(1 - r^j x) for every x in ``xs``.

    Returns an array of shape (len(xs), N+1).
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    N = int(N)
    ints = _ratio_ints(r, N)
    v = np.arange(N + 1)
    rpow = r ** np.arange(N)
    factors = 1.0 - rpow[None, :] * xs[:, None]
    if not use_log:
        coef = np.ones(N + 1)
        for k in range(N):
            coef[k + 1] = coef[k] * ints[N - k] / ints[k + 1]
        falling = np.ones((xs.size, N + 1))
        if N:
            falling[:, 1:] = np.cumprod(factors, axis=1)
        xpow = xs[:, None] ** v[None, :]
        return coef[None, :] * xpow * falling[:, N - v]

    logints = np.log(ints[1:])
    logfact = np.concatenate(([0.0], np.cumsum(logints)))
    logcoef = logfact[N] - logfact - logfact[::-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        logfall = np.zeros((xs.size, N + 1))
        if N:
            logfall[:, 1:] = np.cumsum(np.log(factors), axis=1)
        logxpow = v[None, :] * np.log(xs)[:, None]
    logxpow[:, 0] = 0.0
    return np.exp(logcoef[None, :] + logxpow + logfall[:, N - v])


def modulus_profile(values, kmax):
    """prof[k] = max over 1 <= j <= k, i of |v[i+j] - v[i]|; prof[0] = 0."""
    v = np.asarray(values, dtype=np.float64)
    kmax = min(int(kmax), v.size - 1)
    prof = np.zeros(max(kmax, 0) + 1)
    run = 0.0
    for j in range(1, kmax + 1):
        run = max(run, float(np.max(np.abs(v[j:] - v[:-j]))))
        prof[j] = run
    return prof


def second_difference_profile(values, kmax):
    """prof[k] = max over 1 <= j <= k, i of |v[i+2j] - 2 v[i+j] + v[i]|."""
    v = np.asarray(values, dtype=np.float64)
    kmax = min(int(kmax), (v.size - 1) // 2)
    prof = np.zeros(max(kmax, 0) + 1)
    run = 0.0
    n = v.size
    for j in range(1, kmax + 1):
        d = v[2 * j:] - 2.0 * v[j:n - j] + v[:n - 2 * j]
        run = max(run, float(np.max(np.abs(d))))
        prof[j] = run
    return prof


def lipschitz_max(values, step, a):
    """max over grid pairs of |v[i] - v[j]| / (|i - j| step)^a."""
    v = np.asarray(values, dtype=np.float64)
    best = 0.0
    for j in range(1, v.size):
        m = float(np.max(np.abs(v[j:] - v[:-j])))
        best = max(best, m / (j * step) ** a)
    return best
