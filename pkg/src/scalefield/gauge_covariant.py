"""Covariant derivatives of internal-space fields.

The neighbour value ``psi(x + h e_mu)`` is brought back to ``x`` by the
real scale factor ``r = exp(g_r A_mu(x) h)`` and by the unitary link
``V = exp(i g1 Xi_mu h) exp(i g2 Omega^j_mu tau_j h)``.  For ``n = 2`` the
generators are ``tau_j = sigma_j / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import UsageError
from .fields import ScalarField, ZeroScalar, increment
from .gauge_paths import GaugeFieldSpec, field_eval
from .quantum_scaling import Grid

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
TAU = PAULI / 2


@dataclass(frozen=True, eq=False)
class SampledVectorField:
    """Real vector field known only at the points of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != self.grid.shape + (self.grid.dim,):
            raise UsageError("sampled field shape does not match its grid")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def dim(self):
        return self.grid.dim

    def at(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        g = self.grid
        idx = np.rint((x - np.asarray(g.lo)) / np.asarray(g.h)).astype(int)
        if not np.allclose(np.asarray(g.lo) + idx * np.asarray(g.h), x, rtol=0, atol=1e-9 * max(g.h)):
            raise UsageError("sampled field evaluated off its grid")
        idx = idx % np.asarray(g.n)
        return self.values[tuple(np.moveaxis(idx, -1, 0))]


VectorField = Union[GaugeFieldSpec, SampledVectorField]


def _vec_at(f: VectorField, x) -> np.ndarray:
    if isinstance(f, SampledVectorField):
        return f.at(x)
    return field_eval(f, x)


def _vec_on_grid(f: VectorField, grid: Grid) -> np.ndarray:
    if isinstance(f, SampledVectorField):
        if f.grid != grid:
            raise UsageError("sampled field lives on a different grid")
        return f.values
    return field_eval(f, grid.points)


@dataclass(frozen=True, eq=False)
class GaugePotentials:
    """Scaling field ``A`` plus U(1) potential ``xi`` and, for ``n = 2``, three SU(2) potentials."""

    A: GaugeFieldSpec
    xi: VectorField
    omega: Optional[tuple[VectorField, VectorField, VectorField]] = None
    g1: float = 1.0
    g2: float = 1.0
    n: int = 1

    def __post_init__(self):
        if self.n not in (1, 2):
            raise UsageError("internal dimension must be 1 or 2")
        if self.g1 < 0 or self.g2 < 0:
            raise UsageError("couplings must be non-negative")
        if self.omega is not None and len(self.omega) != 3:
            raise UsageError("SU(2) needs three potentials")
        dims = {self.A.dim, self.xi.dim} | ({o.dim for o in self.omega} if self.omega else set())
        if len(dims) != 1:
            raise UsageError("all potentials must share one dimension")

    @property
    def dim(self):
        return self.A.dim

    def replace(self, **kw) -> GaugePotentials:
        d = dict(A=self.A, xi=self.xi, omega=self.omega, g1=self.g1, g2=self.g2, n=self.n)
        d.update(kw)
        return GaugePotentials(**d)


@dataclass(frozen=True)
class U1Transform:
    """Local phase ``Lambda(x) = exp(i phi(x))``."""

    phi: ScalarField = ZeroScalar()

    def phase(self, x) -> np.ndarray:
        return np.exp(1j * self.phi.value(x))


@dataclass(frozen=True, eq=False)
class InternalField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        if self.grid.dim not in (1, 2):
            raise UsageError("internal fields live on 1-d or 2-d grids")
        v = np.array(self.values, dtype=complex)
        if v.ndim == self.grid.dim:
            v = v[..., None]
        if v.shape[:-1] != self.grid.shape or v.shape[-1] not in (1, 2):
            raise UsageError(f"values of shape {v.shape} do not fit grid {self.grid.shape} with n in (1, 2)")
        if not np.all(np.isfinite(v)):
            raise UsageError("field values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[-1]


def _su2_exp(theta: np.ndarray) -> np.ndarray:
    """``exp(i theta . sigma / 2)`` for real 3-vectors ``theta`` (axis last)."""
    t = np.linalg.norm(theta, axis=-1)
    half_sinc = 0.5 * np.sinc(t / (2 * np.pi))  # sin(t/2) / t
    out = np.cos(t / 2)[..., None, None] * np.eye(2)
    out = out + 1j * half_sinc[..., None, None] * np.einsum("...j,jab->...ab", theta, PAULI)
    return out


def _links(xi_mu, omega_mu, pot: GaugePotentials, dx):
    phase = np.exp(1j * pot.g1 * xi_mu * dx)
    if pot.n == 1:
        return phase[..., None, None]
    if omega_mu is None:
        su2 = np.broadcast_to(np.eye(2, dtype=complex), phase.shape + (2, 2))
    else:
        su2 = _su2_exp(pot.g2 * omega_mu * dx)
    return phase[..., None, None] * su2


def v_link(pot: GaugePotentials, x, axis: int, dx: float) -> np.ndarray:
    """Unitary link ``exp(i g1 Xi_mu(x) dx) exp(i g2 Omega^j_mu(x) tau_j dx)``, shape ``(..., n, n)``."""
    if not dx > 0:
        raise UsageError("dx must be positive")
    x = np.asarray(x, dtype=float)
    xi_mu = _vec_at(pot.xi, x)[..., axis]
    omega_mu = None
    if pot.n == 2 and pot.omega is not None:
        omega_mu = np.stack([_vec_at(o, x)[..., axis] for o in pot.omega], axis=-1)
    return _links(xi_mu, omega_mu, pot, dx)


def _grid_links(pot: GaugePotentials, grid: Grid, axis: int):
    xi_mu = _vec_on_grid(pot.xi, grid)[..., axis]
    omega_mu = None
    if pot.n == 2 and pot.omega is not None:
        omega_mu = np.stack([_vec_on_grid(o, grid)[..., axis] for o in pot.omega], axis=-1)
    return xi_mu, omega_mu


def covariant_derivative(field: InternalField, pot: GaugePotentials, axis: int, form: str = "exact") -> InternalField:
    """Forward covariant derivative along ``axis`` with periodic wrap.

    ``form="exact"`` uses the full link factors; ``form="first_order"`` uses
    ``d'psi + g_r A_mu psi + i (g1 Xi_mu + g2 Omega^j_mu tau_j) psi``.
    """
    g = field.grid
    if pot.dim != g.dim:
        raise UsageError(f"{pot.dim}-d potentials used on a {g.dim}-d grid")
    if field.n != pot.n:
        raise UsageError(f"field has n={field.n} but potentials are for n={pot.n}")
    if not 0 <= axis < g.dim:
        raise UsageError(f"axis {axis} out of range")
    h = g.h[axis]
    psi = field.values
    nxt = np.roll(psi, -1, axis)
    a_mu = field_eval(pot.A, g.points)[..., axis]
    xi_mu, omega_mu = _grid_links(pot, g, axis)
    if form == "exact":
        r = np.exp(a_mu * h)
        V = _links(xi_mu, omega_mu, pot, h)
        out = (r[..., None] * np.einsum("...ab,...b->...a", V, nxt) - psi) / h
    elif form == "first_order":
        out = (nxt - psi) / h + a_mu[..., None] * psi + 1j * pot.g1 * xi_mu[..., None] * psi
        if pot.n == 2 and omega_mu is not None:
            gen = np.einsum("...j,jab->...ab", omega_mu, TAU)
            out = out + 1j * pot.g2 * np.einsum("...ab,...b->...a", gen, psi)
    else:
        raise UsageError(f"unknown form {form!r}")
    return InternalField(g, out)


def discrete_phase_gradient(t: U1Transform, grid: Grid) -> np.ndarray:
    """``(phi(x + h e_mu) - phi(x)) / h`` for every axis, shape ``grid.shape + (dim,)``."""
    x = grid.points
    cols = []
    for mu, h in enumerate(grid.h):
        step = np.zeros(grid.dim)
        step[mu] = h
        cols.append(increment(t.phi, x, step) / h)
    return np.stack(cols, axis=-1)


def u1_transform(field: InternalField, pot: GaugePotentials, t: U1Transform):
    """Local U(1) transformation: ``psi -> Lambda psi``, ``Xi -> Xi - d'phi / g1``; ``A`` and ``Omega`` unchanged."""
    g = field.grid
    grad = discrete_phase_gradient(t, g)
    if pot.g1 == 0:
        if np.any(grad != 0):
            raise UsageError("a varying phase cannot be absorbed with g1 = 0")
        shift = grad
    else:
        shift = grad / pot.g1
    new_field = InternalField(g, t.phase(g.points)[..., None] * field.values)
    xi = _vec_on_grid(pot.xi, g) - shift
    return new_field, pot.replace(xi=SampledVectorField(g, xi))


def gauge_invariance_residual(
    field: InternalField, pot: GaugePotentials, t: U1Transform, axis: int, form: str = "first_order"
) -> float:
    """``max |D'(Lambda psi) - Lambda D psi|`` over the grid."""
    new_field, new_pot = u1_transform(field, pot, t)
    lhs = covariant_derivative(new_field, new_pot, axis, form).values
    rhs = t.phase(field.grid.points)[..., None] * covariant_derivative(field, pot, axis, form).values
    return float(np.max(np.abs(lhs - rhs)))
