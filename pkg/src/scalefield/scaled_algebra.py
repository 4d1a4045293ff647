"""Scaled complex number structures.

Every value is stored by its representation on the base structure: a value
of the structure with scale ``r`` whose "same" base value is ``a`` is stored
with ``rep == r * a``.  Under that convention addition and subtraction are
the base operations, multiplication is ``x * y / r``, division is
``r * x / y``, the additive identity is ``0`` and the multiplicative
identity is ``r``.

With ``r == 1`` every operation reduces bit-for-bit to plain complex
arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, StructureMismatch

BaseValue = complex

__all__ = [
    "BaseValue",
    "ScaledStructure",
    "ScaledValue",
    "BASE",
    "make_structure",
    "add",
    "sub",
    "neg",
    "mul_scaled",
    "div_scaled",
    "to_base",
    "from_base",
    "correspond",
    "same_value",
    "parallel_transport_value",
    "power_ratio_scaled",
    "eval_analytic_scaled",
    "isclose",
    "format_value",
    "law_errors",
    "analytic_scaling_errors",
    "power_ratio_errors",
    "base_collapse_mismatches",
]


def _finite_complex(v) -> complex:
    z = complex(v)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite value {v!r}")
    return z


@dataclass(frozen=True, slots=True)
class ScaledStructure:
    """Complex number structure whose values are scaled by ``r`` relative to the base."""

    r: float

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, (int, float, np.floating, np.integer)):
            raise DomainError(f"scale must be a real number, got {self.r!r}")
        r = float(self.r)
        if not math.isfinite(r) or r <= 0.0:
            raise DomainError(f"scale must be positive and finite, got {self.r!r}")
        object.__setattr__(self, "r", r)

    @property
    def is_base(self) -> bool:
        return self.r == 1.0

    def zero(self) -> ScaledValue:
        return ScaledValue(self, 0j)

    def one(self) -> ScaledValue:
        return ScaledValue(self, complex(self.r))

    def value(self, v) -> ScaledValue:
        """The value of this structure that is the same as ``v`` is in the base."""
        return correspond(v, self)


BASE = ScaledStructure(1.0)


@dataclass(frozen=True, slots=True)
class ScaledValue:
    structure: ScaledStructure
    rep: complex

    def __post_init__(self):
        object.__setattr__(self, "rep", _finite_complex(self.rep))

    @property
    def r(self) -> float:
        return self.structure.r

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul_scaled(self, other)

    def __truediv__(self, other):
        return div_scaled(self, other)

    def __repr__(self):
        return f"ScaledValue(r={self.r!r}, rep={self.rep!r})"


def make_structure(r) -> ScaledStructure:
    return ScaledStructure(r)


def _check_same(a: ScaledValue, b: ScaledValue) -> ScaledStructure:
    if a.structure != b.structure:
        raise StructureMismatch(f"values from structures r={a.r} and r={b.r} cannot be combined")
    return a.structure


def add(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _check_same(a, b)
    return ScaledValue(s, a.rep + b.rep)


def sub(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _check_same(a, b)
    return ScaledValue(s, a.rep - b.rep)


def neg(a: ScaledValue) -> ScaledValue:
    return ScaledValue(a.structure, -a.rep)


def mul_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _check_same(a, b)
    return ScaledValue(s, a.rep * b.rep / s.r)


def div_scaled(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    s = _check_same(a, b)
    if b.rep == 0:
        raise ZeroDivisionError("division by the additive identity")
    return ScaledValue(s, s.r * a.rep / b.rep)


def to_base(a: ScaledValue) -> complex:
    """Base value that ``a`` corresponds to (its stored representation)."""
    return a.rep


def from_base(v, s: ScaledStructure) -> ScaledValue:
    """Value of ``s`` that corresponds to base value ``v``; inverse of :func:`to_base`."""
    return ScaledValue(s, v)


def correspond(v, s: ScaledStructure) -> ScaledValue:
    """Map base value ``v`` to the same value in ``s`` (representation ``r * v``)."""
    return ScaledValue(s, s.r * _finite_complex(v))


def same_value(a: ScaledValue) -> complex:
    """Base value that is the same value in the base as ``a`` is in its structure."""
    return a.rep / a.r


def parallel_transport_value(v, *points) -> complex:
    """Carry a base value to another point, or along a chain of points.

    Sameness is representation identity, so the result equals ``v`` no
    matter which points or how many are given.
    """
    return _finite_complex(v)


def power_ratio_scaled(a: ScaledValue, n: int, b: ScaledValue, m: int) -> ScaledValue:
    """``a**n / b**m`` evaluated with the structure's own multiplication and division."""
    s = _check_same(a, b)
    if n < 0 or m < 0:
        raise DomainError("exponents must be natural numbers")
    num = s.one() if n == 0 else a
    for _ in range(n - 1):
        num = mul_scaled(num, a)
    den = s.one() if m == 0 else b
    for _ in range(m - 1):
        den = mul_scaled(den, b)
    return div_scaled(num, den)


def eval_analytic_scaled(coeffs: Sequence[ScaledValue], a: ScaledValue) -> ScaledValue:
    """Evaluate ``sum(coeffs[k] * a**k)`` by Horner's rule inside the scaled structure."""
    if not coeffs:
        return a.structure.zero()
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = add(mul_scaled(acc, a), c)
    return acc


def isclose(a: ScaledValue, b: ScaledValue, rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
    return a.structure == b.structure and cmath.isclose(a.rep, b.rep, rel_tol=rel_tol, abs_tol=abs_tol)


def format_value(v) -> str:
    """Decimal text with 17 significant digits; complex values as ``re+imj``."""
    z = complex(v)
    if z.imag == 0:
        return format(z.real, ".17g")
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _rel(lhs: complex, rhs: complex, scale: float) -> float:
    err = abs(lhs - rhs)
    if err == 0:
        return 0.0
    return err / max(scale, abs(lhs), abs(rhs))


def _random_complex(rng: np.random.Generator, lo: float, hi: float) -> complex:
    mag = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return cmath.rect(mag, rng.uniform(-math.pi, math.pi))


def law_errors(
    rng: np.random.Generator,
    n_cases: int,
    r_range: tuple[float, float] = (0.1, 10.0),
    mag_range: tuple[float, float] = (1e-3, 1e3),
) -> dict[str, float]:
    """Maximum relative error of every field axiom and isomorphism law over random cases.

    Scales ``r`` are drawn log-uniformly from ``r_range`` and representations
    log-uniformly in magnitude from ``mag_range`` with uniform phase.  Errors
    are relative to the largest magnitude among the terms each law combines,
    so near-cancelling sums do not inflate them.
    """
    worst: dict[str, float] = {}

    def note(law, lhs, rhs, scale=0.0):
        e = _rel(lhs, rhs, scale)
        if e > worst.get(law, 0.0):
            worst[law] = e
        else:
            worst.setdefault(law, 0.0)

    lr0, lr1 = math.log(r_range[0]), math.log(r_range[1])
    for _ in range(n_cases):
        s = ScaledStructure(math.exp(rng.uniform(lr0, lr1)))
        r = s.r
        a, b, c = (ScaledValue(s, _random_complex(rng, *mag_range)) for _ in range(3))
        zero, one = s.zero(), s.one()

        note("add_assoc", ((a + b) + c).rep, (a + (b + c)).rep, abs(a.rep) + abs(b.rep) + abs(c.rep))
        note("add_comm", (a + b).rep, (b + a).rep)
        note("add_identity", (a + zero).rep, a.rep)
        note("add_inverse", (a + (-a)).rep, zero.rep, abs(a.rep))
        note("sub_inverse", ((a - b) + b).rep, a.rep, abs(a.rep) + abs(b.rep))
        note("mul_assoc", ((a * b) * c).rep, (a * (b * c)).rep)
        note("mul_comm", (a * b).rep, (b * a).rep)
        note("mul_identity", (a * one).rep, a.rep)
        note("mul_inverse", (a * (one / a)).rep, one.rep)
        note(
            "distributive",
            (a * (b + c)).rep,
            (a * b + a * c).rep,
            abs(a.rep) * (abs(b.rep) + abs(c.rep)) / r,
        )
        note("div_mul_inverse", ((a / b) * b).rep, a.rep)

        # W: base values carried to the same values of s
        x, y = _random_complex(rng, *mag_range), _random_complex(rng, *mag_range)
        wx, wy = correspond(x, s), correspond(y, s)
        note("iso_add", correspond(x + y, s).rep, (wx + wy).rep, r * (abs(x) + abs(y)))
        note("iso_sub", correspond(x - y, s).rep, (wx - wy).rep, r * (abs(x) + abs(y)))
        note("iso_mul", correspond(x * y, s).rep, (wx * wy).rep)
        note("iso_div", correspond(x / y, s).rep, (wx / wy).rep)
        note("iso_roundtrip", same_value(wx), x)
    return worst


def analytic_scaling_errors(
    rng: np.random.Generator,
    n_cases: int,
    max_degree: int = 8,
    r_range: tuple[float, float] = (0.1, 10.0),
    arg_range: tuple[float, float] = (0.1, 10.0),
    coeff_range: tuple[float, float] = (1e-3, 1e3),
) -> float:
    """Largest relative gap between ``f_r(W a)`` and ``W f(a)`` over random polynomials.

    The base side uses ``numpy.polyval``.  The gap is measured against
    ``r * sum |c_k| |a|^k``, the natural rounding scale of the polynomial.
    """
    lr0, lr1 = math.log(r_range[0]), math.log(r_range[1])
    worst = 0.0
    for _ in range(n_cases):
        s = ScaledStructure(math.exp(rng.uniform(lr0, lr1)))
        deg = int(rng.integers(0, max_degree + 1))
        c = [_random_complex(rng, *coeff_range) for _ in range(deg + 1)]
        a = _random_complex(rng, *arg_range)
        got = eval_analytic_scaled([correspond(ck, s) for ck in c], correspond(a, s)).rep
        want = s.r * complex(np.polyval(c[::-1], a))
        scale = s.r * sum(abs(ck) * abs(a) ** k for k, ck in enumerate(c))
        worst = max(worst, abs(got - want) / scale)
    return worst


def power_ratio_errors(
    rng: np.random.Generator,
    n_cases: int,
    max_power: int = 6,
    r_range: tuple[float, float] = (0.1, 10.0),
    arg_range: tuple[float, float] = (0.1, 10.0),
) -> float:
    """Largest relative gap between ``power_ratio_scaled(W a, n, W b, m)`` and ``W(a**n / b**m)``."""
    lr0, lr1 = math.log(r_range[0]), math.log(r_range[1])
    worst = 0.0
    for _ in range(n_cases):
        s = ScaledStructure(math.exp(rng.uniform(lr0, lr1)))
        n, m = (int(k) for k in rng.integers(0, max_power + 1, size=2))
        a, b = _random_complex(rng, *arg_range), _random_complex(rng, *arg_range)
        got = power_ratio_scaled(correspond(a, s), n, correspond(b, s), m).rep
        want = s.r * a**n / b**m
        worst = max(worst, _rel(got, want, 0.0))
    return worst


def base_collapse_mismatches(rng: np.random.Generator, n_cases: int) -> int:
    """Count cases where an ``r == 1`` operation differs in any bit from plain complex arithmetic."""
    bad = 0
    for _ in range(n_cases):
        x, y = _random_complex(rng, 1e-3, 1e3), _random_complex(rng, 1e-3, 1e3)
        a, b = ScaledValue(BASE, x), ScaledValue(BASE, y)
        pairs = [
            ((a + b).rep, x + y),
            ((a - b).rep, x - y),
            ((a * b).rep, x * y),
            ((a / b).rep, x / y),
            (correspond(x, BASE).rep, x),
            (same_value(a), x),
        ]
        bad += sum(1 for got, want in pairs if got != want)
    return bad
