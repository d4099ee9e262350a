"""Finite Blaschke products: construction, evaluation, Taylor jets, level sets.

A finite Blaschke product of degree d is

    b(z) = u * prod_k (z - a_k) / (1 - conj(a_k) z)

with every zero a_k in the open unit disk and |u| = 1.  The function is
analytic across the unit circle; its only singularities are poles at the
reflected points 1 / conj(a_k), all of modulus greater than one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ConstantNotUnimodular,
    PoleEvaluation,
    RootFindingFailure,
    ZeroOnOrOutsideDisk,
)
from .series import divide_trunc, mul_trunc

INTERIOR_MARGIN = 1e-12
UNIMODULAR_TOL = 1e-12
POLE_TOL = 1e-12
LEVEL_SET_RESIDUAL = 1e-8
CIRCLE_TOL = 1e-9


def _require_finite(z: complex, what: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class BlaschkeProduct:
    """Zeros listed with multiplicity plus a unimodular constant.

    Use :func:`make_blaschke` for ordinary construction; the constructor
    itself validates, so invalid instances cannot exist.
    """

    zeros: tuple[complex, ...]
    unimodular_constant: complex

    def __post_init__(self):
        zs = tuple(_require_finite(a, "zero") for a in self.zeros)
        for a in zs:
            if abs(a) > 1.0 - INTERIOR_MARGIN:
                raise ZeroOnOrOutsideDisk(
                    f"zero {a!r} has modulus {abs(a)!r}, not strictly inside the disk"
                )
        u = _require_finite(self.unimodular_constant, "constant")
        if abs(abs(u) - 1.0) > UNIMODULAR_TOL:
            raise ConstantNotUnimodular(f"constant {u!r} has modulus {abs(u)!r}")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "unimodular_constant", u)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients w_j = w^(j)(center) / j! of a function at a point."""

    center: complex
    coefficients: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "center", _require_finite(self.center, "center"))
        cs = tuple(_require_finite(c, "coefficient") for c in self.coefficients)
        if not cs:
            raise ValueError("a jet needs at least one coefficient")
        object.__setattr__(self, "coefficients", cs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def make_blaschke(zeros: Sequence[complex], unimodular_constant: complex = 1.0) -> BlaschkeProduct:
    """Validated construction from a zero list (with multiplicity) and a constant.

    Raises ZeroOnOrOutsideDisk when some |a_k| > 1 - 1e-12 and
    ConstantNotUnimodular when | |u| - 1 | > 1e-12.
    """
    return BlaschkeProduct(tuple(complex(a) for a in zeros), complex(unimodular_constant))


def _check_not_pole(b: BlaschkeProduct, z: complex) -> None:
    for a in b.zeros:
        if a != 0 and abs(z - 1.0 / a.conjugate()) < POLE_TOL:
            raise PoleEvaluation(f"{z!r} lies within {POLE_TOL} of the pole at {1.0 / a.conjugate()!r}")


def evaluate(b: BlaschkeProduct, z: complex) -> complex:
    """Value b(z), for z away from the poles.

    Raises PoleEvaluation when z lies within 1e-12 of some 1 / conj(a_k).
    """
    z = _require_finite(z, "z")
    _check_not_pole(b, z)
    value = complex(b.unimodular_constant)
    for a in b.zeros:
        value *= (z - a) / (1.0 - a.conjugate() * z)
    return value


def poles(b: BlaschkeProduct) -> list[complex]:
    """Reflected points 1 / conj(a_k) for the nonzero zeros, with multiplicity."""
    return [1.0 / a.conjugate() for a in b.zeros if a != 0]


def modulus_defect(b: BlaschkeProduct, z: complex, complement: float | None = None) -> float:
    """1 - |b(z)|**2, evaluated without cancellation.

    Near the circle |b(z)| is close to one and the direct subtraction loses
    every digit past |1 - |z|**2|.  Each factor instead satisfies

        1 - |(z - a)/(1 - conj(a) z)|**2 = (1 - |a|**2)(1 - |z|**2) / |1 - conj(a) z|**2,

    so the defect is 1 - prod(1 - x_k) with the x_k given by the right hand
    side, accumulated as acc += x_k * (1 - acc).  Every quantity involved is
    a product of well-determined factors, so the result keeps full relative
    accuracy however close z is to the circle.  The unimodular constant
    drops out of the modulus and is ignored.

    `complement` substitutes a caller-supplied value of 1 - |z|**2; passing
    the exact same value used elsewhere in a computation keeps tiny
    quantities consistent with each other, which matters when they are
    later divided.
    """
    z = _require_finite(z, "z")
    m = complement if complement is not None else 1.0 - (z.real * z.real + z.imag * z.imag)
    acc = 0.0
    for a in b.zeros:
        den = 1.0 - a.conjugate() * z
        scale = (1.0 - abs(a)) * (1.0 + abs(a)) / (den.real * den.real + den.imag * den.imag)
        acc += scale * m * (1.0 - acc)
    return acc


def taylor_jet(b: BlaschkeProduct, z0: complex, order: int) -> Jet:
    """Jet of coefficients w_0 .. w_order of b at z0.

    Computed with truncated series arithmetic on the factored form, one
    division per zero, so the result stays accurate on the unit circle
    where finite differencing would not.
    """
    z0 = _require_finite(z0, "z0")
    if order < 0:
        raise ValueError("order must be nonnegative")
    _check_not_pole(b, z0)
    n = order + 1
    series = np.zeros(n, dtype=complex)
    series[0] = b.unimodular_constant
    for a in b.zeros:
        num = np.array([z0 - a, 1.0], dtype=complex)
        den = np.array([1.0 - a.conjugate() * z0, -a.conjugate()], dtype=complex)
        series = mul_trunc(series, divide_trunc(num, den, n), n)
    return Jet(center=z0, coefficients=tuple(series))


def level_set(b: BlaschkeProduct, tau: complex) -> list[complex]:
    """All d solutions of b(z) = tau on the unit circle, sorted by angle.

    The solutions are the roots of u * prod(z - a_k) - tau * prod(1 - conj(a_k) z),
    found from the companion matrix and polished with one Newton step each.
    For |tau| = 1 those d roots are simple and lie on the circle.

    Raises RootFindingFailure when a polished root leaves |b(root) - tau|
    above 1e-8.
    """
    tau = _require_finite(tau, "tau")
    if abs(abs(tau) - 1.0) > CIRCLE_TOL:
        raise ValueError(f"tau must have modulus one, got |tau| = {abs(tau)!r}")
    if b.degree < 1:
        raise ValueError("level sets need degree at least one")
    num = np.array([1.0], dtype=complex)
    den = np.array([1.0], dtype=complex)
    for a in b.zeros:
        num = np.convolve(num, np.array([-a, 1.0], dtype=complex))
        den = np.convolve(den, np.array([1.0, -a.conjugate()], dtype=complex))
    p = np.zeros(b.degree + 1, dtype=complex)
    p[: num.shape[0]] += b.unimodular_constant * num
    p[: den.shape[0]] -= tau * den
    p_desc = p[::-1]
    dp_desc = np.polyder(p_desc)
    roots = np.roots(p_desc)
    polished = []
    for r in roots:
        slope = np.polyval(dp_desc, r)
        if slope != 0:
            r = r - np.polyval(p_desc, r) / slope
        polished.append(complex(r))
    for r in polished:
        residual = abs(evaluate(b, r) - tau)
        if residual > LEVEL_SET_RESIDUAL:
            raise RootFindingFailure(
                f"root {r!r} has residual {residual!r} above {LEVEL_SET_RESIDUAL}"
            )
    return sorted(polished, key=cmath.phase)


def blaschke_to_json(b: BlaschkeProduct) -> dict:
    """JSON-ready dict: {"zeros": [[re, im], ...], "u": [re, im]}."""
    return {
        "zeros": [[a.real, a.imag] for a in b.zeros],
        "u": [b.unimodular_constant.real, b.unimodular_constant.imag],
    }


def blaschke_from_json(obj: dict) -> BlaschkeProduct:
    """Inverse of :func:`blaschke_to_json`, with full validation."""
    zeros = [complex(re, im) for re, im in obj["zeros"]]
    u = complex(obj["u"][0], obj["u"][1])
    return make_blaschke(zeros, u)
