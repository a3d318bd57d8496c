"""Exact rational vectors and small dense matrices.

Rational scalars are ``fractions.Fraction`` (always stored in lowest terms
with positive denominator, which gives hashability and exact equality for
free).  Vectors and matrices are plain tuples, so every value is immutable
and safe to share between workers.

Matrices may also carry float/complex entries; in that case rank and
elimination use the pivot threshold ``EPS`` instead of exact zero tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

# Comparison tolerance for float/complex pivots, shared across the package.
EPS = 1e-9

Rat = Union[Fraction, int]
QVector = tuple
QMatrix = tuple


def qvector(entries: Sequence) -> QVector:
    """Build an immutable vector of Fractions."""
    return tuple(Fraction(e) for e in entries)


def qmatrix(rows: Sequence[Sequence]) -> QMatrix:
    """Build an immutable matrix of Fractions; rows must have equal length."""
    out = tuple(tuple(Fraction(e) for e in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows")
    return out


def mat_vec(a: QMatrix, x: QVector) -> QVector:
    if a and len(x) != len(a[0]):
        raise ValueError("dimension mismatch")
    return tuple(sum(row[j] * x[j] for j in range(len(x))) for row in a)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


class NoSolution:
    """Tag: the system A x = b is inconsistent."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoSolution"


class Underdetermined:
    """Tag: the system is consistent but the solution is not unique."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Underdetermined"


NO_SOLUTION = NoSolution()
UNDERDETERMINED = Underdetermined()


def _is_exact(value) -> bool:
    return isinstance(value, (Fraction, int))


def _nonzero(value, eps: float) -> bool:
    if _is_exact(value):
        return value != 0
    return abs(value) > eps


def solve_linear(a: QMatrix, b: QVector, eps: float = EPS):
    """Solve A x = b exactly.

    Returns the unique solution vector, or NO_SOLUTION / UNDERDETERMINED.
    A may be square or rectangular; entries Fraction (exact elimination) or
    float/complex (eps pivots).
    """
    m = len(a)
    if m == 0:
        return UNDERDETERMINED
    n = len(a[0])
    if len(b) != m:
        raise ValueError("dimension mismatch")
    rows = [list(a[i]) + [b[i]] for i in range(m)]
    exact = all(_is_exact(e) for row in rows for e in row)

    pivot_cols = []
    r = 0
    for col in range(n):
        pivot = None
        if exact:
            for i in range(r, m):
                if rows[i][col] != 0:
                    pivot = i
                    break
        else:
            best, best_val = None, eps
            for i in range(r, m):
                v = abs(rows[i][col])
                if v > best_val:
                    best, best_val = i, v
            pivot = best
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        rows[r] = [e / pv for e in rows[r]]
        for i in range(m):
            if i != r and _nonzero(rows[i][col], eps):
                factor = rows[i][col]
                rows[i] = [e - factor * p for e, p in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if _nonzero(rows[i][n], eps):
            return NO_SOLUTION
    if len(pivot_cols) < n:
        return UNDERDETERMINED
    x = [None] * n
    for i, col in enumerate(pivot_cols):
        x[col] = rows[i][n]
    return tuple(x)


def rank(a: QMatrix, eps: float = EPS) -> int:
    """Row rank; exact over Fractions, eps-pivoted over float/complex."""
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    rows = [list(row) for row in a]
    exact = all(_is_exact(e) for row in rows for e in row)
    r = 0
    for col in range(n):
        pivot = None
        if exact:
            for i in range(r, m):
                if rows[i][col] != 0:
                    pivot = i
                    break
        else:
            scale = max((abs(e) for row in rows for e in row), default=0.0)
            tol = eps * max(1.0, scale)
            best, best_val = None, tol
            for i in range(r, m):
                v = abs(rows[i][col])
                if v > best_val:
                    best, best_val = i, v
            pivot = best
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        for i in range(r + 1, m):
            if _nonzero(rows[i][col], eps):
                factor = rows[i][col] / pv
                rows[i] = [e - factor * p for e, p in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return r


def transpose(a: QMatrix) -> QMatrix:
    if not a:
        return ()
    return tuple(tuple(row[j] for row in a) for j in range(len(a[0])))
