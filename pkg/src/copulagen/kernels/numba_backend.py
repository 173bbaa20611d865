"""Numba-jitted twins of the numpy kernel implementations.

Same algorithms and coefficient sets as :mod:`numpy_backend`; scalar loops
instead of vectorized masking, prange for the nearest-record scan.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from .numpy_backend import PPND_A, PPND_B, PPND_C, PPND_D, PPND_E, PPND_F

_SQRT_HALF = math.sqrt(0.5)

_A = np.array(PPND_A)
_B = np.array(PPND_B)
_C = np.array(PPND_C)
_D = np.array(PPND_D)
_E = np.array(PPND_E)
_F = np.array(PPND_F)


@njit(cache=True)
def _poly(coeffs, r):
    acc = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * r + coeffs[k]
    return acc


@njit(cache=True)
def _poly1(coeffs, r):
    acc = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * r + coeffs[k]
    return acc * r + 1.0


@njit(cache=True)
def norm_cdf(x):
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        out[i] = 0.5 * (1.0 + math.erf(x[i] * _SQRT_HALF))
    return out


@njit(cache=True)
def _ppf_scalar(u):
    q = u - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly(_A, r) / _poly1(_B, r)
    if q < 0.0:
        r = u
    else:
        r = 1.0 - u
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r = r - 1.6
        val = _poly(_C, r) / _poly1(_D, r)
    else:
        r = r - 5.0
        val = _poly(_E, r) / _poly1(_F, r)
    if q < 0.0:
        return -val
    return val


@njit(cache=True)
def norm_ppf(u):
    out = np.empty_like(u)
    for i in range(u.shape[0]):
        out[i] = _ppf_scalar(u[i])
    return out


@njit(cache=True)
def jacobi_eigh(a, max_sweeps=100):
    m = a.copy()
    p = m.shape[0]
    v = np.eye(p)
    if p == 1:
        w = np.empty(1)
        w[0] = m[0, 0]
        return w, v, True
    fro = 0.0
    for i in range(p):
        for j in range(p):
            fro += m[i, j] * m[i, j]
    fro = math.sqrt(fro)
    tol = 1e-13 * max(fro, 1.0e-300)
    converged = False
    for _ in range(max_sweeps):
        off2 = 0.0
        for i in range(p - 1):
            for j in range(i + 1, p):
                off2 += m[i, j] * m[i, j]
        if math.sqrt(2.0 * off2) <= tol:
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
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(p):
                    aik = m[i, k]
                    ajk = m[j, k]
                    m[i, k] = c * aik - s * ajk
                    m[j, k] = s * aik + c * ajk
                for k in range(p):
                    aki = m[k, i]
                    akj = m[k, j]
                    m[k, i] = c * aki - s * akj
                    m[k, j] = s * aki + c * akj
                m[i, i] = app - t * apq
                m[j, j] = aqq + t * apq
                m[i, j] = 0.0
                m[j, i] = 0.0
                for k in range(p):
                    vki = v[k, i]
                    vkj = v[k, j]
                    v[k, i] = c * vki - s * vkj
                    v[k, j] = s * vki + c * vkj
    w = np.empty(p)
    for i in range(p):
        w[i] = m[i, i]
    order = np.argsort(-w, kind="mergesort")
    return w[order], v[:, order], converged


@njit(cache=True)
def cholesky_lower(a):
    p = a.shape[0]
    low = np.zeros_like(a)
    for j in range(p):
        s = a[j, j]
        for k in range(j):
            s -= low[j, k] * low[j, k]
        if s <= 0.0:
            return low, j
        low[j, j] = math.sqrt(s)
        for i in range(j + 1, p):
            acc = a[i, j]
            for k in range(j):
                acc -= low[i, k] * low[j, k]
            low[i, j] = acc / low[j, j]
    return low, -1


@njit(cache=True, parallel=True)
def nn_mixed_min_dist(q_num, q_cat, r_num, r_cat):
    kn = q_num.shape[1]
    kc = q_cat.shape[1]
    m = q_num.shape[0] if kn > 0 else q_cat.shape[0]
    n = r_num.shape[0] if kn > 0 else r_cat.shape[0]
    out = np.empty(m)
    for a in prange(m):
        best = np.inf
        for b in range(n):
            d = 0.0
            for k in range(kn):
                x = q_num[a, k]
                y = r_num[b, k]
                x_nan = x != x
                y_nan = y != y
                if x_nan and y_nan:
                    continue
                if x_nan or y_nan:
                    d += 1.0
                else:
                    d += abs(x - y)
            for k in range(kc):
                if q_cat[a, k] != r_cat[b, k]:
                    d += 1.0
            if d < best:
                best = d
        out[a] = best
    return out
