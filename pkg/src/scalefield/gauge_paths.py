"""Real gauge fields and the scale factors they induce along paths.

A link from ``x`` to ``x + u dx`` carries the factor ``exp(A(x) . u dx)``.
Factors along a path are commuting positive reals, so a path factor is the
exponential of the line integral of ``A``, evaluated here with the
composite midpoint rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import UsageError
from .fields import ScalarField

DEFAULT_STEPS_PER_UNIT = 64

KINDS = ("zero", "constant", "gradient", "rotational")


@dataclass(frozen=True)
class GaugeFieldSpec:
    """Closed-form real vector field ``A`` times a coupling ``g_r``.

    Use the ``zero``, ``constant``, ``gradient`` and ``rotational``
    constructors rather than filling fields by hand.
    """

    kind: str
    dim: int
    coupling: float = 1.0
    vector: Optional[tuple[float, ...]] = None
    potential: Optional[ScalarField] = None
    strength: float = 0.0
    plane: tuple[int, int] = (0, 1)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown field kind {self.kind!r}")
        if self.dim not in (1, 2, 3):
            raise UsageError(f"dimension must be 1, 2 or 3, got {self.dim}")
        if not (math.isfinite(self.coupling) and self.coupling >= 0):
            raise UsageError("coupling must be finite and non-negative")
        if self.kind == "constant" and (self.vector is None or len(self.vector) != self.dim):
            raise UsageError("constant field needs a vector of matching dimension")
        if self.kind == "gradient" and (self.potential is None or self.potential.dim != self.dim):
            raise UsageError("gradient field needs a scalar potential of matching dimension")
        if self.kind == "rotational":
            i, j = self.plane
            if self.dim < 2 or i == j or not (0 <= i < self.dim and 0 <= j < self.dim):
                raise UsageError(f"rotational field needs two distinct axes below dim={self.dim}")

    @classmethod
    def zero(cls, dim, coupling=1.0):
        return cls("zero", dim, coupling)

    @classmethod
    def constant(cls, vector, coupling=1.0):
        v = tuple(float(c) for c in vector)
        return cls("constant", len(v), coupling, vector=v)

    @classmethod
    def gradient(cls, potential, coupling=1.0):
        return cls("gradient", potential.dim, coupling, potential=potential)

    @classmethod
    def rotational(cls, strength, dim=3, plane=(0, 1), coupling=1.0):
        """``A = c (-x_j, x_i)`` in the ``(i, j)`` plane; its curl is ``2c``."""
        return cls("rotational", dim, coupling, strength=float(strength), plane=tuple(plane))

    def with_coupling(self, g):
        return GaugeFieldSpec(self.kind, self.dim, g, self.vector, self.potential, self.strength, self.plane)


def _as_points(spec, p):
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (spec.dim,):
        raise UsageError(f"point of dimension {p.shape[-1:]} used with a {spec.dim}-d field")
    return p


def field_eval(spec: GaugeFieldSpec, p) -> np.ndarray:
    """``g_r * A(p)`` for one point or an array of points (axis last)."""
    p = _as_points(spec, p)
    if spec.kind == "zero" or spec.coupling == 0:
        return np.zeros_like(p)
    if spec.kind == "constant":
        a = np.broadcast_to(np.asarray(spec.vector), p.shape).copy()
    elif spec.kind == "gradient":
        a = spec.potential.grad(p)
    else:
        i, j = spec.plane
        a = np.zeros_like(p)
        a[..., i] = -spec.strength * p[..., j]
        a[..., j] = spec.strength * p[..., i]
    return spec.coupling * a


@dataclass(frozen=True)
class LinkFactor:
    value: float
    start: tuple[float, ...]
    end: tuple[float, ...]
    exponent: float = field(default=0.0, compare=False)


def _tuple(p):
    return tuple(float(c) for c in np.asarray(p, dtype=float).ravel())


def link_scale(spec: GaugeFieldSpec, x, direction, dx: float) -> LinkFactor:
    """Exact link factor ``exp(A(x) . direction dx)``."""
    x = _as_points(spec, x)
    u = _as_points(spec, direction)
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise UsageError("direction must be a unit vector")
    if not dx > 0:
        raise UsageError("dx must be positive")
    e = float(field_eval(spec, x) @ u) * dx
    return LinkFactor(math.exp(e), _tuple(x), _tuple(x + u * dx), e)


def first_order_link(spec: GaugeFieldSpec, x, direction, dx: float) -> float:
    """Linearized link factor ``1 + A(x) . direction dx``."""
    return 1.0 + link_scale(spec, x, direction, dx).exponent


@dataclass(frozen=True, eq=False)
class PolylinePath:
    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] < 2:
            raise UsageError("a path needs at least two vertices")
        if v.shape[1] not in (1, 2, 3):
            raise UsageError("vertices must be 1-, 2- or 3-dimensional")
        if not np.all(np.isfinite(v)):
            raise UsageError("vertices must be finite")
        if np.any(np.all(np.diff(v, axis=0) == 0, axis=1)):
            raise UsageError("consecutive vertices must be distinct")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self):
        return self.vertices.shape[1]

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def is_closed(self):
        return bool(np.array_equal(self.vertices[0], self.vertices[-1]))

    def reversed(self) -> PolylinePath:
        return PolylinePath(self.vertices[::-1])

    def then(self, other: PolylinePath) -> PolylinePath:
        """Concatenation: this path followed by ``other``."""
        if not np.array_equal(self.end, other.start):
            raise UsageError("paths do not join")
        return PolylinePath(np.vstack([self.vertices, other.vertices[1:]]))

    def lengths(self):
        return np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)


def _steps_for(length, steps):
    if steps is None:
        return max(1, math.ceil(DEFAULT_STEPS_PER_UNIT * length))
    if steps < 1:
        raise UsageError("steps must be at least 1")
    return int(steps)


def segment_integrals(spec: GaugeFieldSpec, a, b, steps: int) -> np.ndarray:
    """Midpoint-rule ``integral of A . dl`` along straight segments ``a -> b``.

    ``a`` and ``b`` broadcast against each other (axis last); the result has
    their broadcast shape without the coordinate axis.
    """
    a = _as_points(spec, a)
    b = _as_points(spec, b)
    d = b - a
    acc = np.zeros(np.broadcast_shapes(a.shape, b.shape)[:-1])
    for k in range(steps):
        t = (k + 0.5) / steps
        acc += np.einsum("...i,...i->...", field_eval(spec, a + t * d), d)
    return acc / steps


def path_integral(spec: GaugeFieldSpec, path: PolylinePath, steps_per_segment: int | None = None) -> float:
    if path.dim != spec.dim:
        raise UsageError(f"{path.dim}-d path used with a {spec.dim}-d field")
    total = 0.0
    for a, b, length in zip(path.vertices[:-1], path.vertices[1:], path.lengths()):
        total += float(segment_integrals(spec, a, b, _steps_for(length, steps_per_segment)))
    return total


def path_scale(spec: GaugeFieldSpec, path: PolylinePath, steps_per_segment: int | None = None) -> LinkFactor:
    """Scale factor ``exp(integral of A along path)``.

    ``steps_per_segment=None`` uses 64 midpoint steps per unit length.
    """
    e = path_integral(spec, path, steps_per_segment)
    return LinkFactor(math.exp(e), _tuple(path.start), _tuple(path.end), e)


def straight_line_scale(spec: GaugeFieldSpec, x, y, steps: int | None = None) -> LinkFactor:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if np.array_equal(x, y):
        raise UsageError("straight line needs distinct end points")
    return path_scale(spec, PolylinePath([x, y]), steps)


def axis_factors(spec: GaugeFieldSpec, x, y, steps: int | None = None) -> list[float]:
    """Per-axis factors along the staircase path that moves one axis at a time.

    For an integrable field their product is the straight-line factor; for a
    constant field the factor of axis ``i`` is ``exp(c_i (y_i - x_i))``.
    """
    x = _as_points(spec, x).copy()
    y = _as_points(spec, y)
    out = []
    for i in range(spec.dim):
        if x[i] == y[i]:
            out.append(1.0)
            continue
        nxt = x.copy()
        nxt[i] = y[i]
        out.append(path_scale(spec, PolylinePath([x, nxt]), steps).value)
        x = nxt
    return out


def straight_line_exponents(spec: GaugeFieldSpec, x, y, steps: int = DEFAULT_STEPS_PER_UNIT) -> np.ndarray:
    """Log of the straight-line factor from each ``x`` to each ``y`` (broadcast).

    Coincident end points give exactly ``0``.
    """
    if spec.kind == "zero" or spec.coupling == 0:
        return np.zeros(np.broadcast_shapes(np.shape(x), np.shape(y))[:-1])
    return segment_integrals(spec, x, y, steps)


def loop_residual(spec: GaugeFieldSpec, loop: PolylinePath, steps: int | None = None) -> float:
    """``|r - 1|`` for the factor around a closed loop."""
    if not loop.is_closed:
        raise UsageError("loop must end at its first vertex")
    return abs(math.expm1(path_integral(spec, loop, steps)))


def _levels(lo, hi, s, cells, cap):
    n = int(math.floor((hi - lo) / s + 1e-9))
    count = n if cells else n + 1
    idx = np.arange(count)
    if cap is not None and count > cap:
        idx = np.unique(np.round(np.linspace(0, count - 1, cap)).astype(int))
    return lo + idx * s


def plaquette_residuals(spec, region, plaquette_size, steps=64, max_per_axis=None) -> np.ndarray:
    """Loop residuals of square plaquettes tiling every coordinate plane of a box."""
    lo = np.asarray(region[0], dtype=float)
    hi = np.asarray(region[1], dtype=float)
    s = float(plaquette_size)
    if lo.shape != (spec.dim,) or hi.shape != (spec.dim,):
        raise UsageError("region corners must match the field dimension")
    if not s > 0 or np.any(hi - lo < s * (1 - 1e-12)):
        raise UsageError("plaquette must be positive and fit inside the region")
    out = []
    for i in range(spec.dim):
        for j in range(i + 1, spec.dim):
            axes = [
                _levels(lo[k], hi[k], s, k in (i, j), max_per_axis) for k in range(spec.dim)
            ]
            origins = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, spec.dim)
            ei = np.zeros(spec.dim)
            ej = np.zeros(spec.dim)
            ei[i] = s
            ej[j] = s
            corners = [origins, origins + ei, origins + ei + ej, origins + ej, origins]
            total = sum(segment_integrals(spec, a, b, steps) for a, b in zip(corners[:-1], corners[1:]))
            out.append(np.abs(np.expm1(total)))
    return np.concatenate(out) if out else np.zeros(0)


def integrability_check(spec, region, plaquette_size, tol, steps=64, max_per_axis=None) -> tuple[bool, float]:
    """Sweep square plaquettes through ``region = (lo, hi)``; pass iff every residual is within ``tol``."""
    res = plaquette_residuals(spec, region, plaquette_size, steps, max_per_axis)
    worst = float(res.max()) if res.size else 0.0
    return worst <= tol, worst


def exact_scale_factor(spec: GaugeFieldSpec, x, y) -> np.ndarray:
    """Closed-form factor from ``x`` to ``y`` for integrable kinds (gradient theorem).

    Independent of the quadrature; used as a reference.  Rotational fields
    have no path-independent factor and raise.
    """
    x = _as_points(spec, x)
    y = _as_points(spec, y)
    if spec.kind == "zero" or spec.coupling == 0:
        e = np.zeros(np.broadcast_shapes(x.shape, y.shape)[:-1])
    elif spec.kind == "constant":
        e = (y - x) @ np.asarray(spec.vector)
    elif spec.kind == "gradient":
        e = spec.potential.value(y) - spec.potential.value(x)
    else:
        raise UsageError("rotational fields have no path-independent scale factor")
    return np.exp(spec.coupling * e)


def straight_line_exact(spec: GaugeFieldSpec, x, y) -> np.ndarray:
    """Closed-form factor along the straight segment ``x -> y`` for every field kind.

    For the rotational field the integrand is constant along a straight
    line, giving ``c (x_i y_j - x_j y_i)``.
    """
    if spec.kind != "rotational" or spec.coupling == 0:
        return exact_scale_factor(spec, x, y)
    x = _as_points(spec, x)
    y = _as_points(spec, y)
    i, j = spec.plane
    e = spec.strength * (x[..., i] * y[..., j] - x[..., j] * y[..., i])
    return np.exp(spec.coupling * e)


def stokes_residual(spec: GaugeFieldSpec, area: float) -> float:
    """Reference ``|exp(flux) - 1|`` for a planar loop of ``area`` in the field's plane."""
    if spec.kind != "rotational":
        return 0.0
    return abs(math.expm1(2.0 * spec.coupling * spec.strength * area))
