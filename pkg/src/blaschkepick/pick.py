"""Pick matrices from raw boundary jet data: feasibility, extension, completion.

The data is a list of Taylor-type coefficients prescribed at distinct
points of the unit circle.  ``build_pick`` assembles the same
Hankel x Psi x Toeplitz matrix as the structured boundary route, but from
the raw numbers instead of a function, which is what turns it into a
feasibility object: data read off an actual Schur-class function always
has unimodular leading values and a positive semidefinite matrix, a
positive definite matrix guarantees infinitely many interpolants, and a
singular PSD matrix leaves room for at most one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .blaschke import CIRCLE_TOL, BlaschkeProduct, Jet, _require_finite, taylor_jet
from .errors import CoincidentPoints, InsufficientJet, ZeroLeadingValue
from .hermitian import HermitianReport, eigen_h, make_hermitian, make_report, schur_complement
from .schwarz_pick import DISTINCT_POINT_TOL, psi_matrix, sp_boundary_structured

SUPPLEMENTARY_RESIDUAL_TOL = 1e-10
LEADING_VALUE_FLOOR = 0.5


@dataclass(frozen=True)
class JetData:
    """Prescribed coefficients values[i][j] at circle points[i]."""

    points: tuple[complex, ...]
    values: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        pts = tuple(_require_finite(t, "point") for t in self.points)
        for t in pts:
            if abs(abs(t) - 1.0) > CIRCLE_TOL:
                raise ValueError(f"data points must lie on the unit circle, got |t| = {abs(t)!r}")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if abs(pts[i] - pts[j]) < DISTINCT_POINT_TOL:
                    raise CoincidentPoints(f"data points {pts[i]!r} and {pts[j]!r} coincide")
        if len(self.values) != len(pts):
            raise ValueError("points and values must have equal length")
        vals = tuple(
            tuple(_require_finite(v, "value") for v in row) for row in self.values
        )
        for row in vals:
            if not row:
                raise ValueError("every point needs at least one prescribed value")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True, eq=False)
class PickMatrix:
    """Flat Hermitian-structured matrix with its (point, derivative) row map."""

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

    def row_index(self, point_index: int, derivative: int) -> int:
        if not 0 <= derivative < self.orders[point_index]:
            raise IndexError(
                f"derivative {derivative} out of range for order {self.orders[point_index]}"
            )
        return self.offsets[point_index] + derivative

    def block(self, i: int, j: int) -> np.ndarray:
        off = self.offsets
        return self.flat[
            off[i] : off[i] + self.orders[i], off[j] : off[j] + self.orders[j]
        ]


@dataclass(frozen=True, eq=False)
class AdmissibilityReport:
    """Outcome of the feasibility check, truthiness being the verdict."""

    ok: bool
    modulus_ok: bool
    psd_ok: bool
    modulus_defects: tuple[float, ...]
    pick: HermitianReport
    tol: float

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class Completion:
    """Record of a positive definite completion.

    `shift` was added to the diagonal entries listed in `complementary`
    (flat indices); everything else is unchanged.  `corner_targets` maps
    point indices to the completed corner values when the caller knows the
    block layout; :func:`complete_to_pd` itself leaves it empty.
    """

    original: object
    modified: object
    shift: float
    complementary: tuple[int, ...]
    margin: float
    min_eigenvalue: float
    corner_targets: tuple[tuple[int, complex], ...] = field(default=())


def extract_data(b: BlaschkeProduct, points, max_orders) -> JetData:
    """Read jets of b at the given circle points, through order max_orders[i]."""
    pts = tuple(points)
    values = []
    for t, j in zip(pts, max_orders, strict=True):
        if j < 0:
            raise ValueError("max_orders must be nonnegative")
        values.append(taylor_jet(b, t, j).coefficients)
    return JetData(points=pts, values=tuple(values))


def build_pick(data: JetData, orders) -> PickMatrix:
    """Pick matrix of the data at derivative orders k_i.

    Identical formulas to the structured boundary route; requires
    values[i] of length >= 2 k_i.
    """
    ks = tuple(int(k) for k in orders)
    jets = [Jet(center=t, coefficients=row) for t, row in zip(data.points, data.values, strict=True)]
    sp = sp_boundary_structured(jets, data.points, ks)
    return PickMatrix(flat=sp.flat, points=data.points, orders=ks)


def admissible(data: JetData, orders, tol: float = 1e-8) -> AdmissibilityReport:
    """Feasibility check: unimodular leading values and a PSD Pick matrix.

    The matrix from raw data need not be Hermitian; it is symmetrized with
    the defect recorded in the report, and the eigenvalue test reads
    lambda_min >= -tol * max(1, lambda_max).
    """
    p = build_pick(data, orders)
    defects = tuple(abs(abs(row[0]) - 1.0) for row in data.values)
    modulus_ok = all(d <= tol for d in defects)
    report = make_report(p.flat, rank_tol=tol, pd_tol=tol, strict=False)
    scale = max(1.0, report.lambda_max)
    psd_ok = bool(report.eigenvalues.size == 0 or report.lambda_min >= -tol * scale)
    return AdmissibilityReport(
        ok=modulus_ok and psd_ok,
        modulus_ok=modulus_ok,
        psd_ok=psd_ok,
        modulus_defects=defects,
        pick=report,
        tol=tol,
    )


def extend_pick(data: JetData, orders, extend_set) -> PickMatrix:
    """Pick matrix with orders raised by one on the points in extend_set.

    Extended points need values through index 2 k_i + 1.
    """
    ks = list(int(k) for k in orders)
    extend = set(int(i) for i in extend_set)
    for i in extend:
        if not 0 <= i < len(ks):
            raise ValueError(f"extend index {i} out of range")
        ks[i] += 1
    return build_pick(data, ks)


def corner_value(values: Sequence[complex], point: complex, order: int) -> complex:
    """Bottom diagonal entry of the one-step-extended diagonal block.

    With k = order and values b_0 .. b_{2k+1}, the entry is

        [b_{k+1} .. b_{2k+1}]  Psi_{k+1}(t)  [b_k .. b_0]^*

    which is affine in b_{2k+1} with slope (-1)^k t^(2k+1) conj(b_0).
    """
    k = int(order)
    if k < 0:
        raise ValueError("order must be nonnegative")
    vals = [complex(v) for v in values]
    if len(vals) < 2 * k + 2:
        raise InsufficientJet(f"need {2 * k + 2} values for order {k}, got {len(vals)}")
    row = np.array(vals[k + 1 : 2 * k + 2], dtype=complex)
    col = np.conj(np.array(vals[k::-1], dtype=complex))
    psi = psi_matrix(point, k + 1)
    return complex(row @ psi @ col)


def solve_supplementary(
    values: Sequence[complex], point: complex, order: int, target: complex
) -> complex:
    """The unique top coefficient b_{2k+1} that makes the corner equal `target`.

    values must supply b_0 .. b_{2k} (a provided b_{2k+1} is ignored).  The
    corner is affine in b_{2k+1} with a slope of modulus |b_0|, so the
    solve is a single division; it refuses data with |b_0| < 0.5 and checks
    its own residual against 1e-10 in the scale of the target.
    """
    k = int(order)
    vals = [complex(v) for v in values]
    if len(vals) < 2 * k + 1:
        raise InsufficientJet(f"need {2 * k + 1} values for order {k}, got {len(vals)}")
    if abs(vals[0]) < LEADING_VALUE_FLOOR:
        raise ZeroLeadingValue(f"|b_0| = {abs(vals[0])!r} is below {LEADING_VALUE_FLOOR}")
    base = vals[: 2 * k + 1]
    gamma0 = corner_value(base + [0.0], point, k)
    gamma1 = corner_value(base + [1.0], point, k)
    slope = gamma1 - gamma0
    supplement = (complex(target) - gamma0) / slope
    achieved = corner_value(base + [supplement], point, k)
    residual = abs(achieved - complex(target))
    bound = SUPPLEMENTARY_RESIDUAL_TOL * max(1.0, abs(complex(target)), abs(gamma0))
    if residual > bound:
        raise ValueError(f"affine solve residual {residual} exceeds {bound}")
    return supplement


def complete_to_pd(p_tilde, principal, margin: float = 1.0) -> Completion:
    """Raise the complementary diagonal until the whole matrix is PD.

    Args:
        p_tilde: PickMatrix or plain square array.
        principal: flat indices of the block that must already be PD.
        margin: extra slack beyond the minimal shift; the shift is
            max(0, -lambda_min(S)) + margin with S the Schur complement of
            the principal block.

    Only the diagonal entries outside `principal` change.  Raises
    PrincipalNotPD when the principal block is not positive definite.
    """
    is_pick = isinstance(p_tilde, PickMatrix)
    flat = p_tilde.flat if is_pick else np.asarray(p_tilde, dtype=complex)
    n = flat.shape[0]
    head = list(dict.fromkeys(int(i) for i in principal))
    comp = [i for i in range(n) if i not in set(head)]
    if comp:
        s = schur_complement(make_hermitian(flat, strict=False), head)
        w, _ = eigen_h(s)
        shift = max(0.0, -float(w[0])) + float(margin)
        modified_flat = flat.copy()
        for i in comp:
            modified_flat[i, i] += shift
    else:
        # Nothing to complete; the matrix must already be PD on its own.
        schur_complement(make_hermitian(flat, strict=False), head)
        shift = 0.0
        modified_flat = flat.copy()
    wmod, _ = eigen_h(make_hermitian(modified_flat, strict=False))
    modified = (
        PickMatrix(flat=modified_flat, points=p_tilde.points, orders=p_tilde.orders)
        if is_pick
        else modified_flat
    )
    return Completion(
        original=p_tilde,
        modified=modified,
        shift=shift,
        complementary=tuple(comp),
        margin=float(margin),
        min_eigenvalue=float(wmod[0]) if wmod.size else 0.0,
    )


def jet_data_to_json(data: JetData) -> dict:
    """JSON-ready dict {"points": [[re, im], ...], "values": [[[re, im], ...], ...]}."""
    return {
        "points": [[t.real, t.imag] for t in data.points],
        "values": [[[v.real, v.imag] for v in row] for row in data.values],
    }


def jet_data_from_json(obj: dict) -> JetData:
    """Inverse of :func:`jet_data_to_json`, with full validation."""
    points = tuple(complex(re, im) for re, im in obj["points"])
    values = tuple(tuple(complex(re, im) for re, im in row) for row in obj["values"])
    return JetData(points=points, values=values)
