"""Dense Hermitian linear algebra with explicit tolerance semantics.

Everything downstream (Schwarz-Pick matrices, Pick matrices, completions)
funnels its eigenvalue questions through this module so that rank and
definiteness always mean the same thing: a numerical rank counts
eigenvalues above tol * max(1, lambda_max), and definiteness tests compare
lambda_min against the same scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, PrincipalNotPD

HERMITIAN_DEFECT_TOL = 1e-9
DEFAULT_RANK_TOL = 1e-8
DEFAULT_PD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """A symmetrized matrix together with the asymmetry it arrived with.

    `defect` is the max-abs entry of M - M* before symmetrization.
    """

    matrix: np.ndarray
    defect: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def make_hermitian(m, *, strict: bool = True, defect_tol: float = HERMITIAN_DEFECT_TOL) -> HermitianMatrix:
    """Symmetrize (M + M*) / 2, recording the defect.

    With strict=True (the default) a defect above defect_tol * max(1, |M|_inf)
    raises ValueError; strict=False records the defect and carries on, which
    is what feasibility checks on raw user data need.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size == 0:
        return HermitianMatrix(matrix=m.copy(), defect=0.0)
    defect = float(np.max(np.abs(m - m.conj().T)))
    scale = max(1.0, float(np.max(np.abs(m))))
    if strict and defect > defect_tol * scale:
        raise ValueError(f"matrix is not Hermitian: defect {defect} exceeds {defect_tol * scale}")
    return HermitianMatrix(matrix=0.5 * (m + m.conj().T), defect=defect)


def _as_hermitian(m) -> HermitianMatrix:
    return m if isinstance(m, HermitianMatrix) else make_hermitian(m)


def eigen_h(m) -> tuple[np.ndarray, np.ndarray]:
    """Ascending real eigenvalues and an orthonormal eigenbasis."""
    h = _as_hermitian(m)
    try:
        w, v = np.linalg.eigh(h.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigh did not converge: {exc}") from exc
    return w, v


def numerical_rank(m, tol: float = DEFAULT_RANK_TOL) -> int:
    """Count of eigenvalues above tol * max(1, lambda_max)."""
    h = _as_hermitian(m)
    if h.n == 0:
        return 0
    w, _ = eigen_h(h)
    cutoff = tol * max(1.0, float(w[-1]))
    return int(np.count_nonzero(w > cutoff))


def schur_complement(m, head: Sequence[int]) -> HermitianMatrix:
    """Complement D - R P^{-1} R* of the principal block on `head`.

    `head` selects the rows/columns of the leading block P in the partition
    [[P, R*], [R, D]]; the complement lives on the remaining indices in
    ascending order.  P must be positive definite (Cholesky is the test).
    """
    h = _as_hermitian(m)
    n = h.n
    head = list(dict.fromkeys(int(i) for i in head))
    for i in head:
        if not 0 <= i < n:
            raise ValueError(f"index {i} out of range for a {n} x {n} matrix")
    tail = [i for i in range(n) if i not in set(head)]
    mat = h.matrix
    if not head:
        return make_hermitian(mat[np.ix_(tail, tail)])
    p = mat[np.ix_(head, head)]
    try:
        chol = np.linalg.cholesky(p)
    except np.linalg.LinAlgError as exc:
        raise PrincipalNotPD(f"principal block on {head} is not positive definite") from exc
    if not tail:
        return HermitianMatrix(matrix=np.zeros((0, 0), dtype=complex), defect=0.0)
    r = mat[np.ix_(tail, head)]
    x = scipy.linalg.cho_solve((chol, True), r.conj().T)
    s = mat[np.ix_(tail, tail)] - r @ x
    return make_hermitian(s)


@dataclass(frozen=True, eq=False)
class HermitianReport:
    """Eigenvalue evidence for one matrix, with the tolerances that read it."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    numerical_rank: int
    psd: bool
    pd: bool
    rank_tol: float
    pd_tol: float
    defect: float

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0


def make_report(
    m,
    rank_tol: float = DEFAULT_RANK_TOL,
    pd_tol: float = DEFAULT_PD_TOL,
    *,
    strict: bool = True,
) -> HermitianReport:
    """Full eigenvalue report: rank at rank_tol, definiteness at pd_tol."""
    h = make_hermitian(m, strict=strict) if not isinstance(m, HermitianMatrix) else m
    w, _ = eigen_h(h)
    if w.size:
        scale = max(1.0, float(w[-1]))
        rank = int(np.count_nonzero(w > rank_tol * scale))
        psd = bool(w[0] >= -pd_tol * scale)
        pd = bool(w[0] > pd_tol * scale)
    else:
        rank, psd, pd = 0, True, True
    return HermitianReport(
        matrix=h.matrix,
        eigenvalues=w,
        numerical_rank=rank,
        psd=psd,
        pd=pd,
        rank_tol=rank_tol,
        pd_tol=pd_tol,
        defect=h.defect,
    )
