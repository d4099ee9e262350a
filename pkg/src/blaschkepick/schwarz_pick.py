"""Schwarz-Pick matrices: kernel-series, structured-boundary and radial routes.

For a function w analytic near the evaluation points, the Schwarz-Pick
matrix over points z_1 .. z_n with derivative orders k_1 .. k_n has block
(i, j) holding the mixed Taylor coefficients, through orders
(k_i - 1, k_j - 1), of the kernel

    K(z, u) = (1 - w(z) wh(u)) / (1 - z u)

expanded at (z_i, conj(z_j)).  Here wh is w with conjugated coefficients,
so that wh(conj(s)) = conj(w(s)); substituting u = conj(zeta) turns K into
the familiar two-variable Schwarz-Pick kernel of w.  For w in the Schur
class the matrix is positive semidefinite at interior points, and for a
finite Blaschke product it extends continuously to the circle.

Three independent computations of the boundary matrix live here and in
:mod:`blaschkepick.realization`:

* ``sp_interior``           the kernel series itself, usable up to |z| < 1,
* ``sp_boundary_structured`` closed Hankel x Psi x Toeplitz formulas in the
                             boundary Taylor coefficients,
* ``sp_boundary_radial``     the radial limit of ``sp_interior`` along a
                             schedule of radii.

Agreement between the routes is the package's main internal consistency
check; they share no code beyond Taylor jets of w itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blaschke import (
    CIRCLE_TOL,
    BlaschkeProduct,
    Jet,
    _require_finite,
    modulus_defect,
    taylor_jet,
)
from .errors import CoincidentPoints, DegenerateDenominator, InsufficientJet
from .series import mul_trunc2, recip_trunc2

DEGENERATE_DENOMINATOR_TOL = 1e-13
DISTINCT_POINT_TOL = 1e-12
DEFAULT_RADIAL_SCHEDULE: tuple[float, ...] = tuple(1.0 - 2.0 ** -m for m in range(4, 21))
RADIAL_CONVERGENCE_TOL = 1e-3


@dataclass(frozen=True, eq=False)
class BivariateJet:
    """Mixed Taylor coefficients of a function of (z, u) at (center_z, center_u).

    coefficients[i, j] multiplies (z - center_z)**i (u - center_u)**j and
    equals the (i, j) mixed derivative divided by i! j!.
    """

    center_z: complex
    center_u: complex
    coefficients: np.ndarray


@dataclass(frozen=True, eq=False)
class SchwarzPickMatrix:
    """Flat Hermitian-by-construction matrix plus its block layout.

    Row block i spans offsets[i] .. offsets[i] + orders[i] - 1 and holds the
    derivative directions at points[i].
    """

    flat: np.ndarray
    points: tuple[complex, ...]
    orders: tuple[int, ...]

    @property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for k in self.orders:
            out.append(acc)
            acc += k
        return tuple(out)

    def block(self, i: int, j: int) -> np.ndarray:
        off = self.offsets
        return self.flat[
            off[i] : off[i] + self.orders[i], off[j] : off[j] + self.orders[j]
        ]


@dataclass(frozen=True, eq=False)
class RadialDiagnostics:
    """Convergence record of the radial route.

    step_deltas[m] is the max-abs entrywise change between schedule steps m
    and m+1; final_delta is the last per-entry change; `converged` states
    whether the last step moved every entry by less than `tol` relative to
    max(1, largest entry magnitude of the final iterate).
    """

    radii: tuple[float, ...]
    step_deltas: tuple[float, ...]
    final_delta: np.ndarray
    converged: bool
    tol: float


def kernel_jet(
    w_jet_z: Jet,
    w_conj_jet_u: Jet,
    orders: tuple[int, int],
    constants: tuple[float, float] | None = None,
) -> BivariateJet:
    """Truncated expansion of (1 - w(z) wh(u)) / (1 - z u).

    Args:
        w_jet_z: coefficients of w at the z-center.
        w_conj_jet_u: coefficients of the conjugated function wh at the
            u-center; for u0 = conj(s0) these are the conjugates of the
            coefficients of w at s0.
        orders: highest retained powers (l_max, r_max) of (z - z0), (u - u0).
        constants: optional pair (1 - z0 u0, 1 - w(z0) wh(u0)) replacing the
            constant terms of the denominator and the numerator.  Both
            quantities shrink together as a conjugate pair of centers
            approaches the circle; forming them by direct subtraction then
            leaves only absolute accuracy, which the division blows up by
            roughly |1 - z0 u0|**-(l + r).  Callers that can evaluate the
            pair in a cancellation-free way, and from one shared value of
            1 - |z0|**2, should pass it here.

    The quotient is evaluated as numerator times reciprocal-of-denominator
    series; see :func:`blaschkepick.series.recip_trunc2` for why that order
    of operations is the stable one against this denominator.  Raises
    DegenerateDenominator when |1 - z0 u0| < 1e-13, and InsufficientJet when
    a jet is shorter than the requested order needs.
    """
    lmax, rmax = int(orders[0]), int(orders[1])
    if lmax < 0 or rmax < 0:
        raise ValueError("orders must be nonnegative")
    if len(w_jet_z.coefficients) < lmax + 1:
        raise InsufficientJet(
            f"z-jet has {len(w_jet_z.coefficients)} coefficients, need {lmax + 1}"
        )
    if len(w_conj_jet_u.coefficients) < rmax + 1:
        raise InsufficientJet(
            f"u-jet has {len(w_conj_jet_u.coefficients)} coefficients, need {rmax + 1}"
        )
    z0 = w_jet_z.center
    u0 = w_conj_jet_u.center
    c = (1.0 - z0 * u0) if constants is None else complex(constants[0])
    if abs(c) < DEGENERATE_DENOMINATOR_TOL:
        raise DegenerateDenominator(f"1 - z0*u0 = {c!r} at centers ({z0!r}, {u0!r})")
    w = np.asarray(w_jet_z.coefficients[: lmax + 1], dtype=complex)
    v = np.asarray(w_conj_jet_u.coefficients[: rmax + 1], dtype=complex)
    num = -np.outer(w, v)
    num[0, 0] = 1.0 - w[0] * v[0] if constants is None else complex(constants[1])
    den = np.array([[c, -z0], [-u0, -1.0]], dtype=complex)
    shape = (lmax + 1, rmax + 1)
    coeffs = mul_trunc2(num, recip_trunc2(den, shape), shape)
    return BivariateJet(center_z=z0, center_u=u0, coefficients=coeffs)


def _validate_orders(orders) -> tuple[int, ...]:
    ks = tuple(int(k) for k in orders)
    if not ks:
        raise ValueError("need at least one point")
    for k in ks:
        if k < 1:
            raise ValueError(f"derivative orders must be positive, got {k}")
    return ks


def _validate_distinct(points) -> tuple[complex, ...]:
    pts = tuple(_require_finite(z, "point") for z in points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i] - pts[j]) < DISTINCT_POINT_TOL:
                raise CoincidentPoints(
                    f"points {pts[i]!r} and {pts[j]!r} coincide within {DISTINCT_POINT_TOL}"
                )
    return pts


def _conjugate_pair_constants(b: BlaschkeProduct, z0: complex) -> tuple[float, float]:
    """Constant terms (1 - |z0|**2, 1 - |b(z0)|**2) for a diagonal kernel jet.

    Both come from the same evaluation of 1 - |z0|**2, so their ratio stays
    accurate to relative rounding error arbitrarily close to the circle.
    """
    m = 1.0 - (z0.real * z0.real + z0.imag * z0.imag)
    return m, modulus_defect(b, z0, complement=m)


def sp_interior(b: BlaschkeProduct, points, orders) -> SchwarzPickMatrix:
    """Schwarz-Pick matrix at points of the open disk, via kernel series.

    Block (i, j) is the kernel jet at (z_i, conj(z_j)) through orders
    (k_i - 1, k_j - 1).  Diagonal blocks get their constant terms through
    :func:`_conjugate_pair_constants`, which keeps them accurate as the
    points approach the circle.
    """
    ks = _validate_orders(orders)
    pts = _validate_distinct(points)
    if len(pts) != len(ks):
        raise ValueError("points and orders must have equal length")
    for z in pts:
        if abs(z) >= 1.0:
            raise ValueError(f"interior route needs |z| < 1, got |z| = {abs(z)!r}")
    jets = [taylor_jet(b, z, k - 1) for z, k in zip(pts, ks)]
    conj_jets = [
        Jet(center=z.conjugate(), coefficients=tuple(c.conjugate() for c in jet.coefficients))
        for z, jet in zip(pts, jets)
    ]
    total = sum(ks)
    offsets = np.concatenate([[0], np.cumsum(ks)]).astype(int)
    flat = np.zeros((total, total), dtype=complex)
    for i in range(len(pts)):
        for j in range(len(pts)):
            constants = _conjugate_pair_constants(b, pts[i]) if i == j else None
            kj = kernel_jet(jets[i], conj_jets[j], (ks[i] - 1, ks[j] - 1), constants)
            flat[offsets[i] : offsets[i + 1], offsets[j] : offsets[j + 1]] = kj.coefficients
    return SchwarzPickMatrix(flat=flat, points=pts, orders=ks)


def psi_matrix(t: complex, k: int) -> np.ndarray:
    """Upper triangular k x k matrix with entries (-1)^l binom(l, r) t^(l+r+1).

    Rows r and columns l are 0-based and the entry vanishes for r > l.  For
    |t| = 1 the determinant has modulus one, so the matrix is always
    invertible on the circle.
    """
    t = _require_finite(t, "t")
    if abs(abs(t) - 1.0) > CIRCLE_TOL:
        raise ValueError(f"t must lie on the unit circle, got |t| = {abs(t)!r}")
    if k < 1:
        raise ValueError("k must be positive")
    psi = np.zeros((k, k), dtype=complex)
    for ell in range(k):
        sign = -1.0 if ell % 2 else 1.0
        for r in range(ell + 1):
            psi[r, ell] = sign * math.comb(ell, r) * t ** (ell + r + 1)
    return psi


def _toeplitz_lower(coeffs: np.ndarray, k: int) -> np.ndarray:
    t = np.zeros((k, k), dtype=complex)
    for i in range(k):
        for j in range(i + 1):
            t[i, j] = coeffs[i - j]
    return t


def _hankel(coeffs: np.ndarray, k: int) -> np.ndarray:
    h = np.zeros((k, k), dtype=complex)
    for r in range(k):
        for c in range(k):
            h[r, c] = coeffs[r + c + 1]
    return h


def _cross_matrix(ci, cj, ti, tj, ki, kj) -> np.ndarray:
    """Two-point block combining the jets at t_i and t_j.

    Entry (r, l) is
        sum_{a=0}^{r} (-1)^(r-a) binom(l+r-a, l) ci[a] / (ti-tj)^(l+r-a+1)
      - sum_{b=0}^{l} (-1)^r     binom(l+r-b, r) cj[b] / (ti-tj)^(l+r-b+1).
    """
    h = np.zeros((ki, kj), dtype=complex)
    dt = ti - tj
    for r in range(ki):
        sign_r = -1.0 if r % 2 else 1.0
        for ell in range(kj):
            acc = 0.0 + 0.0j
            for a in range(r + 1):
                sign = -1.0 if (r - a) % 2 else 1.0
                acc += sign * math.comb(ell + r - a, ell) * ci[a] / dt ** (ell + r - a + 1)
            for bb in range(ell + 1):
                acc -= sign_r * math.comb(ell + r - bb, r) * cj[bb] / dt ** (ell + r - bb + 1)
            h[r, ell] = acc
    return h


def sp_boundary_structured(jets: Sequence[Jet], points, orders) -> SchwarzPickMatrix:
    """Boundary Schwarz-Pick matrix from boundary Taylor coefficients alone.

    Block (i, j) is H_ij Psi_{k_j}(t_j) T_j^*, where T_j is the lower
    triangular Toeplitz matrix of coefficients 0 .. k_j - 1 at t_j, the
    diagonal H_ii is the Hankel matrix of coefficients 1 .. 2 k_i - 1, and
    off-diagonal H_ij is the two-point form of :func:`_cross_matrix`.  The
    formula looks one-sided but produces a Hermitian PSD matrix whenever the
    coefficients really are boundary jets of a Schur-class function.

    Requires distinct points on the circle and jet i of length >= 2 k_i.
    """
    ks = _validate_orders(orders)
    pts = _validate_distinct(points)
    if not (len(jets) == len(pts) == len(ks)):
        raise ValueError("jets, points and orders must have equal length")
    coeff = []
    for i, (jet, k) in enumerate(zip(jets, ks)):
        if len(jet.coefficients) < 2 * k:
            raise InsufficientJet(
                f"jet {i} has {len(jet.coefficients)} coefficients, need {2 * k}"
            )
        coeff.append(np.asarray(jet.coefficients, dtype=complex))
    psis = [psi_matrix(t, k) for t, k in zip(pts, ks)]
    tstars = [_toeplitz_lower(c, k).conj().T for c, k in zip(coeff, ks)]
    total = sum(ks)
    offsets = np.concatenate([[0], np.cumsum(ks)]).astype(int)
    flat = np.zeros((total, total), dtype=complex)
    for i in range(len(pts)):
        for j in range(len(pts)):
            if i == j:
                h = _hankel(coeff[i], ks[i])
            else:
                h = _cross_matrix(coeff[i], coeff[j], pts[i], pts[j], ks[i], ks[j])
            flat[offsets[i] : offsets[i + 1], offsets[j] : offsets[j + 1]] = h @ psis[j] @ tstars[j]
    return SchwarzPickMatrix(flat=flat, points=pts, orders=ks)


def _validate_schedule(schedule) -> tuple[float, ...]:
    if schedule is None:
        return DEFAULT_RADIAL_SCHEDULE
    rs = tuple(float(r) for r in schedule)
    if not rs:
        raise ValueError("schedule must be nonempty")
    for r in rs:
        if not 0.0 < r < 1.0:
            raise ValueError(f"schedule radii must lie in (0, 1), got {r}")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError("schedule must be strictly increasing")
    return rs


def sp_boundary_radial(
    b: BlaschkeProduct, points, orders, schedule=None
) -> tuple[SchwarzPickMatrix, RadialDiagnostics]:
    """Boundary matrix as a radial limit of interior matrices.

    Evaluates :func:`sp_interior` at r * t_i for each radius r of the
    schedule (default r_m = 1 - 2^-m, m = 4 .. 20) and returns the final
    iterate together with the successive-difference diagnostics.
    Convergence means the last step changed no entry by more than 1e-3
    relative to max(1, largest entry magnitude); the iterates approach the
    limit linearly in 1 - r, so an absolute reading of the final step would
    say more about the matrix scale than about the route.

    The truncation error of an iterate shrinks linearly in 1 - r, but the
    rounding error of a diagonal block grows like (1 - r**2)**-(2k - 2), so
    orders k >= 3 hit a noise floor partway down the schedule (around
    r = 1 - 2^-10 in double precision) and the deeper iterates move away
    again.  The diagnostics report that honestly: `converged` stays False
    whenever the last step still moved more than `tol`.  Orders one and two
    converge through the whole default schedule.
    """
    ks = _validate_orders(orders)
    pts = _validate_distinct(points)
    for t in pts:
        if abs(abs(t) - 1.0) > CIRCLE_TOL:
            raise ValueError(f"radial route needs |t| = 1, got |t| = {abs(t)!r}")
    rs = _validate_schedule(schedule)
    iterates = [sp_interior(b, [r * t for t in pts], ks).flat for r in rs]
    deltas = [float(np.max(np.abs(cur - prev))) for prev, cur in zip(iterates, iterates[1:])]
    if len(iterates) >= 2:
        final_delta = np.abs(iterates[-1] - iterates[-2])
        scale = max(1.0, float(np.max(np.abs(iterates[-1]))))
        converged = deltas[-1] < RADIAL_CONVERGENCE_TOL * scale
    else:
        final_delta = np.full_like(np.abs(iterates[-1]), np.inf)
        converged = False
    estimate = SchwarzPickMatrix(flat=iterates[-1], points=pts, orders=ks)
    diags = RadialDiagnostics(
        radii=rs,
        step_deltas=tuple(deltas),
        final_delta=final_delta,
        converged=converged,
        tol=RADIAL_CONVERGENCE_TOL,
    )
    return estimate, diags


def membership_probe(b: BlaschkeProduct, t: complex, k: int, schedule=None) -> list[float]:
    """Diagonal Caratheodory-Julia quantity along the radius toward t.

    Value m is the (k-1, k-1) mixed kernel coefficient at z = r_m * t, the
    quantity whose boundedness as r -> 1 characterizes order-k boundary
    regularity at t.  For a finite Blaschke product it increases to the
    bottom diagonal entry of the order-k boundary block.
    """
    t = _require_finite(t, "t")
    if abs(abs(t) - 1.0) > CIRCLE_TOL:
        raise ValueError(f"t must lie on the unit circle, got |t| = {abs(t)!r}")
    if k < 1:
        raise ValueError("k must be positive")
    rs = _validate_schedule(schedule)
    values = []
    for r in rs:
        z0 = r * t
        jet = taylor_jet(b, z0, k - 1)
        cjet = Jet(
            center=z0.conjugate(),
            coefficients=tuple(c.conjugate() for c in jet.coefficients),
        )
        kj = kernel_jet(jet, cjet, (k - 1, k - 1), _conjugate_pair_constants(b, z0))
        values.append(float(kj.coefficients[k - 1, k - 1].real))
    return values
