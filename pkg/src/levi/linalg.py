"""Small exact linear algebra over the rationals.

Vectors are tuples of Fraction, matrices are lists of row lists. Everything
here is dense and tiny (dimensions at most ~10), so plain Gaussian
elimination suffices. No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(coords: Iterable) -> Vec:
    return tuple(Fraction(c) for c in coords)


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dimension mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), ZERO)


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def scale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form, in place. Returns (rows, pivot columns)."""
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[Vec]:
    """Canonical basis of {x : A x = 0}, from the RREF free columns."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return [tuple(ONE if j == i else ZERO for j in range(ncols)) for i in range(ncols)]
    work, pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [ZERO] * ncols
        x[free] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -work[r][free]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of A x = b (free variables 0), or None if inconsistent."""
    work = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    work, pivots = rref(work)
    for r in range(len(work)):
        if (r >= len(pivots) or pivots[r] == ncols) and work[r][ncols] != 0:
            return None
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = work[r][ncols]
    return x


def invert(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square nonsingular matrix (Gauss-Jordan)."""
    n = len(rows)
    work = [[Fraction(x) for x in row] + [ONE if j == i else ZERO for j in range(n)]
            for i, row in enumerate(rows)]
    work, pivots = rref(work)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in work]


def matvec(rows: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, x)), ZERO) for row in rows]
