"""Truncated power series arithmetic, univariate and bivariate.

Conventions: a 1-D array c represents sum_j c[j] h**j, a 2-D array c
represents sum_{i,j} c[i, j] h**i g**j.  Every operation truncates to the
requested length or shape, and division requires a nonzero constant term.
"""

from __future__ import annotations

import numpy as np


def mul_trunc(a, b, n: int) -> np.ndarray:
    """Product of two coefficient arrays, truncated to length n."""
    full = np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
    out = np.zeros(n, dtype=complex)
    m = min(n, full.shape[0])
    out[:m] = full[:m]
    return out


def divide_trunc(num, den, n: int) -> np.ndarray:
    """Quotient num/den as a series, truncated to length n.

    Coefficients come from the recursion
    q[m] = (num[m] - sum_{j>=1} den[j] q[m-j]) / den[0].
    """
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    if den.shape[0] == 0 or den[0] == 0.0:
        raise ZeroDivisionError("series division needs a nonzero constant term")
    q = np.zeros(n, dtype=complex)
    for m in range(n):
        acc = num[m] if m < num.shape[0] else 0.0 + 0.0j
        top = min(m, den.shape[0] - 1)
        for j in range(1, top + 1):
            acc -= den[j] * q[m - j]
        q[m] = acc / den[0]
    return q


def mul_trunc2(a, b, shape: tuple[int, int]) -> np.ndarray:
    """Product of two bivariate coefficient arrays, truncated to `shape`."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.zeros(shape, dtype=complex)
    for i in range(shape[0]):
        for j in range(shape[1]):
            acc = 0.0 + 0.0j
            for p in range(min(i, a.shape[0] - 1) + 1):
                for q in range(min(j, a.shape[1] - 1) + 1):
                    ii, jj = i - p, j - q
                    if ii < b.shape[0] and jj < b.shape[1]:
                        acc += a[p, q] * b[ii, jj]
            out[i, j] = acc
    return out


def divide_trunc2(num, den, shape: tuple[int, int]) -> np.ndarray:
    """Bivariate quotient num/den, truncated to `shape`.

    Solved coefficient by coefficient in row-major order; each q[i, j]
    depends only on entries with strictly smaller index in at least one
    coordinate, so the traversal order is valid.

    When the constant term of `den` is small, rounding error in each solved
    coefficient is divided by it again at every later index it feeds, so the
    error of q[i, j] can grow like |den[0, 0]|**-(i + j + 1).  Computing
    `mul_trunc2(num, recip_trunc2(den, shape), shape)` instead keeps one
    division per output entry and is the preferred form in that regime.
    """
    num = np.asarray(num, dtype=complex)
    den = np.asarray(den, dtype=complex)
    if den.size == 0 or den[0, 0] == 0.0:
        raise ZeroDivisionError("series division needs a nonzero constant term")
    d00 = den[0, 0]
    q = np.zeros(shape, dtype=complex)
    for i in range(shape[0]):
        for j in range(shape[1]):
            acc = num[i, j] if i < num.shape[0] and j < num.shape[1] else 0.0 + 0.0j
            for p in range(min(i, den.shape[0] - 1) + 1):
                for r in range(min(j, den.shape[1] - 1) + 1):
                    if p == 0 and r == 0:
                        continue
                    acc -= den[p, r] * q[i - p, j - r]
            q[i, j] = acc / d00
    return q


def recip_trunc2(den, shape: tuple[int, int]) -> np.ndarray:
    """Reciprocal series 1/den, truncated to `shape`.

    Same recursion as :func:`divide_trunc2` with numerator 1.  For a
    denominator of the form c - u0 h - z0 g - h g with z0 u0 = 1 - c, the
    recursion accumulates terms of a single phase, so every reciprocal
    coefficient comes out with relative error of order (i + j) eps even when
    c is tiny; that makes reciprocal-then-multiply the stable evaluation
    order for quotients against such denominators.
    """
    den = np.asarray(den, dtype=complex)
    if den.size == 0 or den[0, 0] == 0.0:
        raise ZeroDivisionError("series reciprocal needs a nonzero constant term")
    d00 = den[0, 0]
    out = np.zeros(shape, dtype=complex)
    out[0, 0] = 1.0 / d00
    for i in range(shape[0]):
        for j in range(shape[1]):
            if i == 0 and j == 0:
                continue
            acc = 0.0 + 0.0j
            for p in range(min(i, den.shape[0] - 1) + 1):
                for r in range(min(j, den.shape[1] - 1) + 1):
                    if p == 0 and r == 0:
                        continue
                    acc -= den[p, r] * out[i - p, j - r]
            out[i, j] = acc / d00
    return out
