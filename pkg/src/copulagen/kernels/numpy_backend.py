"""Pure-numpy implementations of the hot numeric kernels.

Each function here has a numba twin in :mod:`copulagen.kernels.numba_backend`
with identical semantics; the active backend is chosen in the package
__init__. Inputs are assumed contiguous float64/int32 arrays — validation
lives in the public wrappers.
"""

from __future__ import annotations

import numpy as np
from scipy.special import erf as _erf

_SQRT_HALF = np.sqrt(0.5)

# AS241 / PPND16 rational-approximation coefficients (Wichura 1988).
PPND_A = (
    3.3871328727963666080e00, 1.3314166789178437745e02, 1.9715909503065514427e03,
    1.3731693765509461125e04, 4.5921953931549871457e04, 6.7265770927008700853e04,
    3.3430575583588128105e04, 2.5090809287301226727e03,
)
PPND_B = (
    4.2313330701600911252e01, 6.8718700749205790830e02, 5.3941960214247511077e03,
    2.1213794301586595867e04, 3.9307895800092710610e04, 2.8729085735721942674e04,
    5.2264952788528545610e03,
)
PPND_C = (
    1.42343711074968357734e00, 4.63033784615654529590e00, 5.76949722146069140550e00,
    3.64784832476320460504e00, 1.27045825245236838258e00, 2.41780725177450611770e-01,
    2.27238449892691845833e-02, 7.74545014278341407640e-04,
)
PPND_D = (
    2.05319162663775882187e00, 1.67638483018380384940e00, 6.89767334985100004550e-01,
    1.48103976427480074590e-01, 1.51986665636164571966e-02, 5.47593808499534494600e-04,
    1.05075007164441684324e-09,
)
PPND_E = (
    6.65790464350110377720e00, 5.46378491116411436990e00, 1.78482653991729133580e00,
    2.96560571828504891230e-01, 2.65321895265761230930e-02, 1.24266094738807843860e-03,
    2.71155556874348757815e-05, 2.01033439929228813265e-07,
)
PPND_F = (
    5.99832206555887937690e-01, 1.36929880922735805310e-01, 1.48753612908506148525e-02,
    7.86869131145613259100e-04, 1.84631831751005468180e-05, 1.42151175831644588870e-07,
    2.04426310338993978564e-15,
)


def _poly(coeffs, r):
    acc = np.full_like(r, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * r + c
    return acc


def _poly1(coeffs, r):
    # denominator polynomials have implicit constant term 1
    acc = np.full_like(r, coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * r + c
    return acc * r + 1.0


def norm_cdf(x: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + _erf(x * _SQRT_HALF))


def norm_ppf(u: np.ndarray) -> np.ndarray:
    out = np.empty_like(u)
    q = u - 0.5
    central = np.abs(q) <= 0.425
    if central.any():
        qc = q[central]
        r = 0.180625 - qc * qc
        out[central] = qc * _poly(PPND_A, r) / _poly1(PPND_B, r)
    tails = ~central
    if tails.any():
        qt = q[tails]
        r = np.where(qt < 0.0, u[tails], 1.0 - u[tails])
        r = np.sqrt(-np.log(r))
        val = np.empty_like(r)
        near = r <= 5.0
        rn = r[near] - 1.6
        val[near] = _poly(PPND_C, rn) / _poly1(PPND_D, rn)
        rf = r[~near] - 5.0
        val[~near] = _poly(PPND_E, rf) / _poly1(PPND_F, rf)
        out[tails] = np.where(qt < 0.0, -val, val)
    return out


def jacobi_eigh(a: np.ndarray, max_sweeps: int = 100):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues descending, orthonormal eigenvector columns,
    converged flag).
    """
    m = a.copy()
    p = m.shape[0]
    v = np.eye(p)
    if p == 1:
        return m[0, :1].copy(), v, True
    fro = np.sqrt(np.sum(m * m))
    tol = 1e-13 * max(fro, 1.0e-300)
    converged = False
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(m, 1) ** 2))
        if off <= tol:
            converged = True
            break
        skip = tol / (p * p)
        for i in range(p - 1):
            for j in range(i + 1, p):
                apq = m[i, j]
                if abs(apq) <= skip:
                    continue
                app = m[i, i]
                aqq = m[j, j]
                theta = 0.5 * (aqq - app) / apq
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rowi = m[i, :].copy()
                rowj = m[j, :].copy()
                m[i, :] = c * rowi - s * rowj
                m[j, :] = s * rowi + c * rowj
                coli = m[:, i].copy()
                colj = m[:, j].copy()
                m[:, i] = c * coli - s * colj
                m[:, j] = s * coli + c * colj
                m[i, i] = app - t * apq
                m[j, j] = aqq + t * apq
                m[i, j] = 0.0
                m[j, i] = 0.0
                vi = v[:, i].copy()
                vj = v[:, j].copy()
                v[:, i] = c * vi - s * vj
                v[:, j] = s * vi + c * vj
    w = np.diag(m).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order], converged


def cholesky_lower(a: np.ndarray):
    """Lower Cholesky factor; returns (L, pivot) with pivot=-1 on success."""
    p = a.shape[0]
    low = np.zeros_like(a)
    for j in range(p):
        s = a[j, j] - low[j, :j] @ low[j, :j]
        if s <= 0.0:
            return low, j
        low[j, j] = np.sqrt(s)
        if j + 1 < p:
            low[j + 1:, j] = (a[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / low[j, j]
    return low, -1


def nn_mixed_min_dist(q_num, q_cat, r_num, r_cat, chunk: int = 128) -> np.ndarray:
    """Distance to the nearest reference row under the mixed-type metric.

    Numeric columns are pre-scaled by the caller, so a numeric column
    contributes |a-b| (1.0 when exactly one side is NaN, 0.0 when both are);
    categorical columns contribute a 0/1 mismatch with code -1 for missing.
    Returns the per-query minimum of summed column distances (not averaged).
    """
    m = q_num.shape[0] if q_num.shape[1] else q_cat.shape[0]
    n = r_num.shape[0] if r_num.shape[1] else r_cat.shape[0]
    kn = q_num.shape[1]
    kc = q_cat.shape[1]
    out = np.empty(m)
    for start in range(0, m, chunk):
        end = min(start + chunk, m)
        acc = np.zeros((end - start, n))
        for k in range(kn):
            a = q_num[start:end, k][:, None]
            b = r_num[:, k][None, :]
            a_nan = np.isnan(q_num[start:end, k])[:, None]
            b_nan = np.isnan(r_num[:, k])[None, :]
            d = np.abs(a - b)
            d = np.where(a_nan & b_nan, 0.0, np.where(a_nan ^ b_nan, 1.0, d))
            acc += d
        for k in range(kc):
            acc += q_cat[start:end, k][:, None] != r_cat[:, k][None, :]
        out[start:end] = acc.min(axis=1)
    return out
