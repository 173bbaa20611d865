"""Numeric kernels with a numba fast path and a pure-numpy fallback.

The backend is selected once at import time from the ``COPULAGEN_BACKEND``
environment variable: ``numba`` (jitted kernels), ``numpy`` (vectorized
fallback), or ``auto`` (default: numba when importable). Both backends
implement the same algorithms; ``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import CholeskyError, EigenConvergenceError

BACKEND_ENV = "COPULAGEN_BACKEND"

# Probabilities are clamped to this open interval before quantile inversion
# so latents stay finite.
U_EPS = 1e-10
U_LO = U_EPS
U_HI = 1.0 - U_EPS


def _load_backend():
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower()
    if choice in ("numpy", "np"):
        from . import numpy_backend as impl
        return impl, "numpy"
    if choice == "numba":
        from . import numba_backend as impl
        return impl, "numba"
    if choice != "auto":
        raise ValueError(f"{BACKEND_ENV} must be auto, numba, or numpy, not {choice!r}")
    try:
        from . import numba_backend as impl
        return impl, "numba"
    except ImportError:
        from . import numpy_backend as impl
        return impl, "numpy"


_impl, _backend_name = _load_backend()


def backend_name() -> str:
    """Name of the active kernel backend ('numba' or 'numpy')."""
    return _backend_name


def _as_float_array(x) -> tuple[np.ndarray, bool]:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    return np.atleast_1d(arr), scalar


def norm_cdf(z):
    """Standard normal CDF, erf-based, absolute error below 1e-12."""
    arr, scalar = _as_float_array(z)
    out = _impl.norm_cdf(arr.ravel()).reshape(arr.shape)
    return float(out[0]) if scalar else out


def norm_ppf(u):
    """Standard normal quantile (AS241 rational approximation).

    Raises ValueError outside the open interval (0, 1).
    """
    arr, scalar = _as_float_array(u)
    if arr.size and (np.any(arr <= 0.0) or np.any(arr >= 1.0)):
        raise ValueError("norm_ppf domain is the open interval (0, 1)")
    out = _impl.norm_ppf(arr.ravel()).reshape(arr.shape)
    return float(out[0]) if scalar else out


def _check_square_symmetric(a) -> np.ndarray:
    m = np.ascontiguousarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if m.size and np.max(np.abs(m - m.T)) > 1e-8 * max(1.0, np.max(np.abs(m))):
        raise ValueError("matrix is not symmetric")
    return (m + m.T) / 2.0


def sym_eigh(a, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvector columns.
    """
    m = _check_square_symmetric(a)
    w, v, converged = _impl.jacobi_eigh(m, max_sweeps)
    if not converged:
        wmax = float(np.max(np.abs(w)))
        wmin = float(np.min(np.abs(w)))
        cond = wmax / wmin if wmin > 0 else np.inf
        raise EigenConvergenceError(
            f"Jacobi sweep cap {max_sweeps} reached (order {m.shape[0]}, "
            f"approximate condition number {cond:.3e})"
        )
    return w, v


def cholesky(a) -> np.ndarray:
    """Lower Cholesky factor of a positive definite symmetric matrix."""
    m = _check_square_symmetric(a)
    low, pivot = _impl.cholesky_lower(m)
    if pivot >= 0:
        raise CholeskyError(pivot)
    return low


def cholesky_psd(a, jitter: float = 1e-10) -> np.ndarray:
    """Cholesky with a single diagonal-jitter retry for near-PSD inputs."""
    m = _check_square_symmetric(a)
    low, pivot = _impl.cholesky_lower(m)
    if pivot < 0:
        return low
    bumped = m + jitter * np.eye(m.shape[0])
    low, pivot = _impl.cholesky_lower(bumped)
    if pivot >= 0:
        raise CholeskyError(pivot)
    return low


def nn_mixed_min_dist(q_num, q_cat, r_num, r_cat) -> np.ndarray:
    """Per-query-row distance to the nearest reference row (summed mixed metric).

    Numeric blocks are float64 (NaN=missing) already scaled by the caller;
    categorical blocks are int32 codes (-1=missing). Blocks may have zero
    columns but must agree on row counts within each side.
    """
    qn = np.ascontiguousarray(q_num, dtype=np.float64)
    qc = np.ascontiguousarray(q_cat, dtype=np.int32)
    rn = np.ascontiguousarray(r_num, dtype=np.float64)
    rc = np.ascontiguousarray(r_cat, dtype=np.int32)
    if qn.shape[1] != rn.shape[1] or qc.shape[1] != rc.shape[1]:
        raise ValueError("query/reference column blocks do not match")
    if qn.shape[0] != qc.shape[0] or rn.shape[0] != rc.shape[0]:
        raise ValueError("numeric and categorical blocks must have equal row counts")
    if rn.shape[0] == 0:
        raise ValueError("reference side is empty")
    return _impl.nn_mixed_min_dist(qn, qc, rn, rc)


def warm_up() -> None:
    """Trigger jit compilation of every kernel (no-op on the numpy backend)."""
    norm_cdf(np.array([0.0, 1.0]))
    norm_ppf(np.array([0.25, 0.75]))
    eye = np.eye(3)
    sym_eigh(eye + 0.01)
    cholesky(eye)
    nn_mixed_min_dist(
        np.zeros((2, 1)), np.zeros((2, 1), dtype=np.int32),
        np.zeros((2, 1)), np.zeros((2, 1), dtype=np.int32),
    )
