"""Wave packets on periodic grids and the effect of number scaling on them.

Amplitudes are complex numbers in the base structure.  Carrying an
amplitude from ``y`` to a reference point by parallel transport leaves it
unchanged; carrying it by correspondence multiplies it by the straight-line
scale factor ``r_{y,x}``.  Expectation values weight ``|psi(y)|^2`` by one
factor of ``r`` (the other cancels against the scaled multiplication).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional

import numpy as np

from .errors import IntegrabilityError, UsageError
from .fields import ScalarField, ZeroScalar
from .gauge_paths import GaugeFieldSpec, exact_scale_factor, field_eval, integrability_check, straight_line_exponents

DEFAULT_PATH_STEPS = 64
MAX_POINTS_1D = 4096
MAX_POINTS_3D = 64
MAX_TWO_PARTICLE = 128


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid; points are ``lo + k h`` for ``k = 0 .. n-1`` on each axis."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]
    n: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in np.atleast_1d(self.lo))
        hi = tuple(float(v) for v in np.atleast_1d(self.hi))
        n = tuple(int(v) for v in np.atleast_1d(self.n))
        if not (len(lo) == len(hi) == len(n)) or len(n) not in (1, 2, 3):
            raise UsageError("grid needs 1 to 3 axes with matching lo, hi and n")
        if any(k < 4 for k in n):
            raise UsageError("each axis needs at least 4 points")
        if any(not (b > a) for a, b in zip(lo, hi)):
            raise UsageError("each axis needs hi > lo")
        cap = MAX_POINTS_1D if len(n) == 1 else MAX_POINTS_3D
        if any(k > cap for k in n):
            raise UsageError(f"at most {cap} points per axis in {len(n)}-d")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "n", n)

    @classmethod
    def cube(cls, lo, hi, n, dim):
        return cls((lo,) * dim, (hi,) * dim, (n,) * dim)

    @property
    def dim(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def h(self) -> tuple[float, ...]:
        return tuple((b - a) / k for a, b, k in zip(self.lo, self.hi, self.n))

    @property
    def extent(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.h)

    def axes(self) -> list[np.ndarray]:
        return [a + np.arange(k) * h for a, k, h in zip(self.lo, self.n, self.h)]

    @cached_property
    def points(self) -> np.ndarray:
        """Array of shape ``n + (dim,)`` holding every grid point."""
        p = np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)
        p.flags.writeable = False
        return p

    def wave_vectors(self) -> list[np.ndarray]:
        return [2 * np.pi * np.fft.fftfreq(k, d=h) for k, h in zip(self.n, self.h)]

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= np.asarray(self.lo)) and np.all(p <= np.asarray(self.hi)))


@dataclass(frozen=True, eq=False)
class WavePacket:
    grid: Grid
    amp: np.ndarray

    def __post_init__(self):
        a = np.array(self.amp, dtype=complex)
        if a.shape != self.grid.shape:
            raise UsageError(f"amplitude shape {a.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(a)):
            raise UsageError("amplitudes must be finite")
        a.flags.writeable = False
        object.__setattr__(self, "amp", a)

    def density(self) -> np.ndarray:
        return self.amp.real**2 + self.amp.imag**2

    def norm(self) -> float:
        """Standard norm ``sum |amp|^2 h^d``."""
        return float(self.density().sum() * self.grid.cell_volume)

    def inner(self, other: WavePacket) -> complex:
        return complex(np.vdot(self.amp, other.amp) * self.grid.cell_volume)

    def with_amp(self, amp) -> WavePacket:
        return WavePacket(self.grid, amp)


@dataclass(frozen=True)
class DetectorPartition:
    """Cubes of side ``delta`` tiling the grid box from its lower corner.

    ``anchor`` picks the surface point each cube scales from: ``"corner"``
    (the minimal corner) or ``"face_center"`` (center of the cube face
    normal to axis 0 at its minimal side).
    """

    delta: float
    anchor: str = "corner"

    def __post_init__(self):
        if not self.delta > 0:
            raise UsageError("cube side must be positive")
        if self.anchor not in ("corner", "face_center"):
            raise UsageError(f"unknown anchor rule {self.anchor!r}")

    def points_per_side(self, grid: Grid) -> tuple[int, ...]:
        out = []
        for ext, h, n in zip(grid.extent, grid.h, grid.n):
            m = self.delta / h
            k = round(m)
            if k < 1 or abs(m - k) > 1e-9 * m or n % k:
                raise UsageError(f"cube side {self.delta} does not tile an axis of extent {ext} with spacing {h}")
            out.append(k)
        return tuple(out)

    def anchors(self, grid: Grid) -> np.ndarray:
        """Anchor point of the cube containing each grid point, shape ``n + (dim,)``."""
        per = self.points_per_side(grid)
        comps = []
        for axis, (lo, k, n) in enumerate(zip(grid.lo, per, grid.n)):
            z = lo + (np.arange(n) // k) * self.delta
            if self.anchor == "face_center" and axis > 0:
                z = z + 0.5 * self.delta
            comps.append(z)
        return np.stack(np.meshgrid(*comps, indexing="ij"), axis=-1)


@dataclass(frozen=True)
class HamiltonianParams:
    """``momentum_sign = -1`` gives ``p = -i hbar D``; ``+1`` gives ``p = +i hbar D``."""

    hbar: float = 1.0
    mass: float = 1.0
    potential: ScalarField = ZeroScalar()
    momentum_sign: int = -1

    def __post_init__(self):
        if not (self.hbar > 0 and self.mass > 0):
            raise UsageError("hbar and mass must be positive")
        if self.momentum_sign not in (-1, 1):
            raise UsageError("momentum_sign must be +1 or -1")


def gaussian_packet(grid: Grid, mu, sigma: float, k0=None) -> WavePacket:
    """``exp(-|y-mu|^2 / 4 sigma^2) exp(i k0 . y)`` normalized to unit standard norm."""
    mu = np.asarray(mu, dtype=float).reshape(grid.dim)
    k0 = np.zeros(grid.dim) if k0 is None else np.asarray(k0, dtype=float).reshape(grid.dim)
    if not sigma > 2 * max(grid.h):
        raise UsageError(f"sigma={sigma} is not resolved by spacing {max(grid.h)}")
    if not grid.contains(mu):
        raise UsageError("packet center lies outside the grid")
    y = grid.points
    r2 = np.sum((y - mu) ** 2, axis=-1)
    amp = np.exp(-r2 / (4 * sigma**2)) * np.exp(1j * (y @ k0))
    amp /= math.sqrt(np.sum(np.abs(amp) ** 2) * grid.cell_volume)
    return WavePacket(grid, amp)


def parallel_packet(psi: WavePacket) -> WavePacket:
    """Packet carried to a common point by parallel transport: amplitudes unchanged."""
    return WavePacket(psi.grid, psi.amp)


@lru_cache(maxsize=256)
def _integrability(A: GaugeFieldSpec, grid: Grid) -> tuple[bool, float]:
    if A.dim != grid.dim:
        raise UsageError(f"{A.dim}-d field used on a {grid.dim}-d grid")
    if A.dim == 1 or A.kind == "zero" or A.coupling == 0:
        return True, 0.0
    s = min(0.25, min(grid.extent) / 4)
    return integrability_check(A, (grid.lo, grid.hi), s, 1e-6, steps=256, max_per_axis=5)


def require_integrable(A: GaugeFieldSpec, grid: Grid) -> None:
    ok, worst = _integrability(A, grid)
    if not ok:
        raise IntegrabilityError(
            f"gauge field is not integrable on the grid (plaquette residual {worst:.3g}); "
            "point-to-point scale factors would depend on the path"
        )


def scale_factors(A: GaugeFieldSpec, grid: Grid, anchor, steps: int = DEFAULT_PATH_STEPS) -> np.ndarray:
    """``r_{y, anchor}`` at every grid point ``y``; ``anchor`` may vary per point."""
    return np.exp(straight_line_exponents(A, np.asarray(anchor, dtype=float), grid.points, steps))


def scaled_packet(psi: WavePacket, A: GaugeFieldSpec, x0, steps: int = DEFAULT_PATH_STEPS) -> WavePacket:
    """Packet carried to ``x0`` by correspondence: ``r_{y,x0} psi(y)``."""
    require_integrable(A, psi.grid)
    return psi.with_amp(scale_factors(A, psi.grid, x0, steps) * psi.amp)


def _box(V, dim):
    lo = np.asarray(V[0], dtype=float).reshape(dim)
    hi = np.asarray(V[1], dtype=float).reshape(dim)
    if np.any(hi <= lo):
        raise UsageError("volume needs hi > lo on every axis")
    return lo, hi


def _on_surface(z, lo, hi) -> bool:
    tol = 1e-12 * max(1.0, float(np.max(np.abs(np.concatenate([lo, hi])))))
    inside = np.all(z >= lo - tol) and np.all(z <= hi + tol)
    on_face = np.any(np.abs(z - lo) <= tol) or np.any(np.abs(z - hi) <= tol)
    return bool(inside and on_face)


def _volume_mask(grid, lo, hi):
    y = grid.points
    return np.all((y >= lo) & (y <= hi), axis=-1)


def _volume_packet(psi, A, lo, hi, z, steps):
    if not _on_surface(z, lo, hi):
        raise UsageError(f"anchor {z.tolist()} is not on the surface of the volume")
    mask = _volume_mask(psi.grid, lo, hi)
    return psi.with_amp(np.where(mask, scale_factors(A, psi.grid, z, steps) * psi.amp, 0))


def volume_scaled_packet(psi: WavePacket, A: GaugeFieldSpec, V, z, x0, steps: int = DEFAULT_PATH_STEPS) -> WavePacket:
    """Packet restricted to box ``V = (lo, hi)`` and scaled from surface point ``z``.

    The result is parallel transported to ``x0`` (outside ``V``), which leaves
    amplitudes unchanged; ``x0`` is only validated.
    """
    require_integrable(A, psi.grid)
    lo, hi = _box(V, psi.grid.dim)
    z = np.asarray(z, dtype=float).reshape(psi.grid.dim)
    x0 = np.asarray(x0, dtype=float).reshape(psi.grid.dim)
    if np.all(x0 >= lo) and np.all(x0 <= hi):
        raise UsageError("reference point must lie outside the volume")
    return _volume_packet(psi, A, lo, hi, z, steps)


def anchor_relation_check(psi: WavePacket, A: GaugeFieldSpec, V, z, w, steps: int = DEFAULT_PATH_STEPS) -> float:
    """``max |psi_w - r_{z,w} psi_z|`` for two surface anchors of ``V``."""
    require_integrable(A, psi.grid)
    lo, hi = _box(V, psi.grid.dim)
    z = np.asarray(z, dtype=float).reshape(psi.grid.dim)
    w = np.asarray(w, dtype=float).reshape(psi.grid.dim)
    psi_z = _volume_packet(psi, A, lo, hi, z, steps)
    psi_w = _volume_packet(psi, A, lo, hi, w, steps)
    r_zw = math.exp(float(straight_line_exponents(A, w, z, steps)))
    return float(np.max(np.abs(psi_w.amp - r_zw * psi_z.amp)))


def detector_factors(psi: WavePacket, A: GaugeFieldSpec, partition: DetectorPartition, steps: int = DEFAULT_PATH_STEPS):
    require_integrable(A, psi.grid)
    return scale_factors(A, psi.grid, partition.anchors(psi.grid), steps)


def detector_packet(
    psi: WavePacket, A: GaugeFieldSpec, partition: DetectorPartition, x0=None, steps: int = DEFAULT_PATH_STEPS
) -> WavePacket:
    """Scale each amplitude from its own cube's anchor, then sum the cubes at ``x0``.

    Carrying cube contributions to ``x0`` is parallel transport, so ``x0``
    does not enter the amplitudes.
    """
    return psi.with_amp(detector_factors(psi, A, partition, steps) * psi.amp)


def _moments(grid: Grid, weights: np.ndarray, normalized: bool) -> np.ndarray:
    hv = grid.cell_volume
    y = grid.points
    out = np.array([np.sum(y[..., i] * weights) * hv for i in range(grid.dim)])
    if normalized:
        total = np.sum(weights) * hv
        if total == 0:
            raise UsageError("packet has zero norm")
        out = out / total
    return out


def standard_expectation(psi: WavePacket, normalized: bool = False) -> np.ndarray:
    """Textbook ``sum y |psi|^2 h^d`` without any scaling."""
    if psi.norm() == 0:
        raise UsageError("packet has zero norm")
    return _moments(psi.grid, psi.density(), normalized)


def position_expectation_scaled(
    psi: WavePacket, A: GaugeFieldSpec, x0, normalized: bool = False, steps: int = DEFAULT_PATH_STEPS
) -> np.ndarray:
    """``sum r_{y,x0} y |psi|^2 h^d``; ``normalized`` divides by ``sum r_{y,x0} |psi|^2 h^d``."""
    require_integrable(A, psi.grid)
    if psi.norm() == 0:
        raise UsageError("packet has zero norm")
    return _moments(psi.grid, scale_factors(A, psi.grid, x0, steps) * psi.density(), normalized)


def position_expectation_exact(psi: WavePacket, A: GaugeFieldSpec, x0, normalized: bool = False) -> np.ndarray:
    """Reference for :func:`position_expectation_scaled` using closed-form factors instead of quadrature."""
    if psi.norm() == 0:
        raise UsageError("packet has zero norm")
    r = exact_scale_factor(A, np.asarray(x0, dtype=float), psi.grid.points)
    return _moments(psi.grid, r * psi.density(), normalized)


def detector_expectation(
    psi: WavePacket, A: GaugeFieldSpec, partition: DetectorPartition, normalized: bool = False,
    steps: int = DEFAULT_PATH_STEPS,
) -> np.ndarray:
    """Position expectation with scaling confined to each detector cube."""
    if psi.norm() == 0:
        raise UsageError("packet has zero norm")
    return _moments(psi.grid, detector_factors(psi, A, partition, steps) * psi.density(), normalized)


def _link_factors(psi: WavePacket, A: GaugeFieldSpec, axis: int) -> np.ndarray:
    if A.dim != psi.grid.dim:
        raise UsageError(f"{A.dim}-d field used on a {psi.grid.dim}-d grid")
    if not 0 <= axis < psi.grid.dim:
        raise UsageError(f"axis {axis} out of range")
    return np.exp(field_eval(A, psi.grid.points)[..., axis] * psi.grid.h[axis])


def forward_difference(psi: WavePacket, axis: int) -> WavePacket:
    """Plain periodic forward difference."""
    h = psi.grid.h[axis]
    return psi.with_amp((np.roll(psi.amp, -1, axis) - psi.amp) / h)


def backward_difference(psi: WavePacket, axis: int) -> WavePacket:
    h = psi.grid.h[axis]
    return psi.with_amp((psi.amp - np.roll(psi.amp, 1, axis)) / h)


def scaled_derivative(psi: WavePacket, A: GaugeFieldSpec, axis: int) -> WavePacket:
    """``(r_{y+h,y} psi(y+h) - psi(y)) / h`` with the exact link factor, periodic."""
    r = _link_factors(psi, A, axis)
    h = psi.grid.h[axis]
    return psi.with_amp((r * np.roll(psi.amp, -1, axis) - psi.amp) / h)


def scaled_backward_derivative(psi: WavePacket, A: GaugeFieldSpec, axis: int) -> WavePacket:
    """Backward partner of :func:`scaled_derivative`, using ``r_{y-h,y} = 1 / r_{y,y-h}``."""
    r = _link_factors(psi, A, axis)
    h = psi.grid.h[axis]
    return psi.with_amp((psi.amp - np.roll(psi.amp, 1, axis) / np.roll(r, 1, axis)) / h)


def momentum_apply(psi: WavePacket, A: GaugeFieldSpec, params: HamiltonianParams, axis: int) -> WavePacket:
    d = scaled_derivative(psi, A, axis)
    return d.with_amp(params.momentum_sign * 1j * params.hbar * d.amp)


def standard_momentum(psi: WavePacket, params: HamiltonianParams, axis: int) -> WavePacket:
    d = forward_difference(psi, axis)
    return d.with_amp(params.momentum_sign * 1j * params.hbar * d.amp)


def hamiltonian_apply(psi: WavePacket, A: GaugeFieldSpec, params: HamiltonianParams) -> WavePacket:
    """``-(hbar^2 / 2m) sum_j D-_j D+_j psi + V psi``.

    ``D+`` is the scaled forward derivative and ``D-`` its backward partner,
    which at ``A = 0`` compose to the 3-point Laplacian.
    """
    lap = np.zeros(psi.grid.shape, dtype=complex)
    for j in range(psi.grid.dim):
        lap = lap + scaled_backward_derivative(scaled_derivative(psi, A, j), A, j).amp
    return _finish_hamiltonian(psi, lap, params)


def standard_hamiltonian(psi: WavePacket, params: HamiltonianParams) -> WavePacket:
    lap = np.zeros(psi.grid.shape, dtype=complex)
    for j in range(psi.grid.dim):
        lap = lap + backward_difference(forward_difference(psi, j), j).amp
    return _finish_hamiltonian(psi, lap, params)


def _finish_hamiltonian(psi, lap, params):
    v = params.potential.value(psi.grid.points)
    return psi.with_amp(-(params.hbar**2 / (2 * params.mass)) * lap + v * psi.amp)


def operator_expectation(psi: WavePacket, applied: WavePacket) -> complex:
    """``<psi|O psi> / <psi|psi>`` given ``applied = O psi``."""
    return psi.inner(applied) / psi.norm()


def hermiticity_defect(apply, phi: WavePacket, psi: WavePacket) -> float:
    """``|<phi|O psi> - <O phi|psi>|``; zero for a Hermitian ``O``."""
    return abs(phi.inner(apply(psi)) - apply(phi).inner(psi))


@dataclass(frozen=True, eq=False)
class MomentumAmplitudes:
    """Amplitudes on the discrete wave-vector lattice in numpy FFT order."""

    grid: Grid
    amp: np.ndarray

    @property
    def k(self) -> list[np.ndarray]:
        return self.grid.wave_vectors()

    @property
    def dk(self) -> tuple[float, ...]:
        return tuple(2 * np.pi / e for e in self.grid.extent)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amp) ** 2) * math.prod(self.dk))


def _lo_phase(grid: Grid) -> np.ndarray:
    ks = np.meshgrid(*grid.wave_vectors(), indexing="ij")
    return np.exp(-1j * sum(k * lo for k, lo in zip(ks, grid.lo)))


def momentum_amplitudes(psi: WavePacket) -> MomentumAmplitudes:
    """``phi(k) = (h / sqrt(2 pi))^d sum_y psi(y) exp(-i k . y)``, unitary between the two measures."""
    g = psi.grid
    pref = math.prod(h / math.sqrt(2 * math.pi) for h in g.h)
    return MomentumAmplitudes(g, pref * _lo_phase(g) * np.fft.fftn(psi.amp))


def position_amplitudes(phi: MomentumAmplitudes) -> WavePacket:
    """Inverse of :func:`momentum_amplitudes`."""
    g = phi.grid
    pref = math.prod(math.sqrt(2 * math.pi) / h for h in g.h)
    return WavePacket(g, np.fft.ifftn(pref * phi.amp / _lo_phase(g)))


def two_particle_scaled(
    phi1: MomentumAmplitudes,
    phi2: MomentumAmplitudes,
    A: GaugeFieldSpec,
    x0,
    steps: int = DEFAULT_PATH_STEPS,
) -> np.ndarray:
    """Zero-total-momentum pair state on ``grid1 x grid2`` with both positions scaled to ``x0``.

    ``amp[z1, z2] = r_{z1,x0} r_{z2,x0} sum_p exp(i p z1) phi1(p) exp(-i p z2) phi2(-p) dp``.
    """
    g1, g2 = phi1.grid, phi2.grid
    if g1.dim != 1 or g2.dim != 1 or A.dim != 1:
        raise UsageError("two-particle states are one-dimensional")
    if g1.n[0] > MAX_TWO_PARTICLE or g2.n[0] > MAX_TWO_PARTICLE:
        raise UsageError(f"two-particle grids are limited to {MAX_TWO_PARTICLE} points")
    if g1.n != g2.n or not math.isclose(g1.h[0], g2.h[0], rel_tol=1e-12):
        raise UsageError("both particles need the same momentum lattice")
    require_integrable(A, g1)
    require_integrable(A, g2)
    n = g1.n[0]
    p = g1.wave_vectors()[0]
    minus = (-np.arange(n)) % n
    weight = phi1.amp * phi2.amp[minus] * phi1.dk[0]
    z1 = g1.axes()[0]
    z2 = g2.axes()[0]
    base = (np.exp(1j * np.outer(z1, p)) * weight) @ np.exp(-1j * np.outer(p, z2))
    x0 = np.asarray(x0, dtype=float).reshape(1)
    r1 = scale_factors(A, g1, x0, steps)
    r2 = scale_factors(A, g2, x0, steps)
    return r1[:, None] * r2[None, :] * base
