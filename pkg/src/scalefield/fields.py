"""Closed-form real scalar fields with analytic gradients.

These serve as scalar potentials of gradient gauge fields, external
potentials in Hamiltonians, and U(1) gauge phases.  All evaluate on arrays
of points with the coordinate axis last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError


def increment(f, p, step):
    """``f(p + step) - f(p)``, computed exactly where the field allows it."""
    if isinstance(f, LinearScalar):
        p = _points(p, f.dim)
        return np.broadcast_to(np.asarray(step, dtype=float) @ np.asarray(f.a), p.shape[:-1]).copy()
    if isinstance(f, (ZeroScalar, ConstantScalar)):
        return np.zeros(np.shape(p)[:-1])
    return f.value(np.asarray(p, dtype=float) + step) - f.value(p)


def _points(p, dim):
    p = np.asarray(p, dtype=float)
    if dim is not None and p.shape[-1] != dim:
        raise UsageError(f"point dimension {p.shape[-1]} does not match field dimension {dim}")
    return p


@dataclass(frozen=True)
class ZeroScalar:
    dim: int | None = None

    def value(self, p):
        p = _points(p, self.dim)
        return np.zeros(p.shape[:-1])

    def grad(self, p):
        return np.zeros_like(_points(p, self.dim))


@dataclass(frozen=True)
class ConstantScalar:
    c: float
    dim: int | None = None

    def value(self, p):
        p = _points(p, self.dim)
        return np.full(p.shape[:-1], float(self.c))

    def grad(self, p):
        return np.zeros_like(_points(p, self.dim))


@dataclass(frozen=True)
class LinearScalar:
    """``a . x + b``"""

    a: tuple[float, ...]
    b: float = 0.0

    @property
    def dim(self):
        return len(self.a)

    def value(self, p):
        p = _points(p, self.dim)
        return p @ np.asarray(self.a) + self.b

    def grad(self, p):
        p = _points(p, self.dim)
        return np.broadcast_to(np.asarray(self.a, dtype=float), p.shape).copy()


@dataclass(frozen=True)
class QuadraticScalar:
    """``(x - c)^T B (x - c) / 2`` for a symmetric matrix ``B``."""

    matrix: tuple[tuple[float, ...], ...]
    center: tuple[float, ...] | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise UsageError("quadratic form needs a square matrix")
        if not np.array_equal(m, m.T):
            raise UsageError("quadratic form matrix must be symmetric")
        if self.center is not None and len(self.center) != m.shape[0]:
            raise UsageError("center dimension does not match matrix")

    @classmethod
    def isotropic(cls, k: float, dim: int, center=None):
        m = tuple(tuple(float(k) if i == j else 0.0 for j in range(dim)) for i in range(dim))
        return cls(m, None if center is None else tuple(float(c) for c in center))

    @property
    def dim(self):
        return len(self.matrix)

    def _shifted(self, p):
        p = _points(p, self.dim)
        return p if self.center is None else p - np.asarray(self.center)

    def value(self, p):
        q = self._shifted(p)
        return 0.5 * np.einsum("...i,ij,...j->...", q, np.asarray(self.matrix), q)

    def grad(self, p):
        return self._shifted(p) @ np.asarray(self.matrix).T


@dataclass(frozen=True)
class SineScalar:
    """``amplitude * sin(k . x + phase)``"""

    amplitude: float
    k: tuple[float, ...]
    phase: float = 0.0

    @property
    def dim(self):
        return len(self.k)

    def value(self, p):
        p = _points(p, self.dim)
        return self.amplitude * np.sin(p @ np.asarray(self.k) + self.phase)

    def grad(self, p):
        p = _points(p, self.dim)
        c = self.amplitude * np.cos(p @ np.asarray(self.k) + self.phase)
        return c[..., None] * np.asarray(self.k)


ScalarField = ZeroScalar | ConstantScalar | LinearScalar | QuadraticScalar | SineScalar
