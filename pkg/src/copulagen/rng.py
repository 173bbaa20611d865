"""Deterministic, splittable random streams.

Built on numpy's Philox counter-based bit generator. A stream is identified
by (seed, spawn key); ``child`` derives an independent stream by extending
the key, so per-column and per-stage streams stay reproducible regardless of
evaluation order.
"""

from __future__ import annotations

import numpy as np

from . import kernels

_SEED_MASK = (1 << 64) - 1


class Rng:
    __slots__ = ("_seed", "_key", "_gen")

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self._seed = int(seed) & _SEED_MASK
        self._key = tuple(int(k) for k in spawn_key)
        seq = np.random.SeedSequence(self._seed, spawn_key=self._key)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def __repr__(self) -> str:
        return f"Rng(seed={self._seed}, key={self._key})"

    def child(self, *key: int) -> "Rng":
        """Independent stream derived from this one by key extension."""
        return Rng(self._seed, self._key + key)

    def random(self, size=None):
        """Uniform draws in [0, 1)."""
        return self._gen.random(size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def laplace(self, scale: float, size=None):
        """Lap(0, scale) via inverse CDF: u~U(-1/2,1/2), -b*sign(u)*ln(1-2|u|)."""
        if not scale > 0.0:
            raise ValueError(f"laplace scale must be positive, got {scale}")
        u = self._gen.random(size) - 0.5
        inner = 1.0 - 2.0 * np.abs(u)
        inner = np.maximum(inner, np.finfo(np.float64).tiny)
        return -scale * np.sign(u) * np.log(inner)

    def standard_normal(self, size=None):
        """Standard normal draws by quantile inversion of clamped uniforms."""
        u = np.clip(self._gen.random(size), kernels.U_LO, kernels.U_HI)
        return kernels.norm_ppf(u)
