"""Exact linear algebra over Q.

Elimination is fraction-free (Bareiss): rows are cleared to integers first
and every update divides exactly by the previous pivot, which keeps entry
growth polynomial.  Fractions only appear during back substitution.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = list[Fraction]
Matrix = Sequence[Sequence]


def _integer_rows(rows: Matrix, ncols: int) -> list[list[int]]:
    out = []
    for row in rows:
        if len(row) != ncols:
            raise ValueError("matrix is not rectangular")
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def echelon(rows: Matrix, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    m = _integer_rows(rows, ncols)
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(piv * row[j] - f * prow[j], prev)
                assert rem == 0, "Bareiss division must be exact"
                row[j] = q
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Matrix, ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(echelon(rows, ncols)[1])


def _primitive(v: list[Fraction]) -> Vector:
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [Fraction(x // g) for x in ints] if g else [Fraction(0)] * len(v)


def nullspace(rows: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel ``{v : rows . v = 0}``.

    One vector per free column; each is scaled to a primitive integer
    vector with +1-normalized free coordinate sign.  Empty iff injective.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ech, pivots = echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = ech[k]
            s = sum((row[j] * v[j] for j in range(pc + 1, ncols) if row[j] and v[j]), Fraction(0))
            v[pc] = -s / row[pc]
        v = _primitive(v)
        if v[f] < 0:
            v = [-x for x in v]
        basis.append(v)
    return basis


def determinant(square: Matrix) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    n = len(square)
    if any(len(r) != n for r in square):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    fr = [[Fraction(x) for x in r] for r in square]
    dens = [lcm(*(x.denominator for x in r)) for r in fr]
    m = [[int(x * d) for x in r] for r, d in zip(fr, dens)]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * m[n - 1][n - 1], scale)


def matmul(a: Matrix, b: Matrix) -> list[list[Fraction]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((Fraction(a[i][k]) * b[k][j] for k in range(inner)), Fraction(0)) for j in range(cols)]
            for i in range(len(a))]


def apply(a: Matrix, v: Sequence) -> Vector:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Matrix, ncols: int | None = None) -> list[list]:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def rref(vectors: Matrix, ncols: int | None = None) -> list[Vector]:
    """Reduced row echelon basis of the row span (canonical form of a subspace)."""
    if not vectors:
        return []
    ech, pivots = echelon(vectors, ncols)
    rows = [[Fraction(x) for x in r] for r in ech]
    for k, pc in enumerate(pivots):
        piv = rows[k][pc]
        rows[k] = [x / piv for x in rows[k]]
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        for i in range(k):
            f = rows[i][pc]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
    return rows


def same_span(a: Matrix, b: Matrix, ncols: int) -> bool:
    """Exact equality of row spans."""
    return rref(a, ncols) == rref(b, ncols)


def in_span(v: Sequence, basis: Matrix, ncols: int) -> bool:
    return rank(list(basis) + [list(v)], ncols) == rank(basis, ncols)


def intersect(a: Matrix, b: Matrix, ncols: int) -> list[Vector]:
    """Basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    cols = [list(x) for x in a] + [[-Fraction(y) for y in x] for x in b]
    # kernel of [A^T | -B^T]
    system = transpose(cols)
    ker = nullspace(system, len(cols))
    out = []
    for k in ker:
        v = [sum((k[i] * Fraction(a[i][j]) for i in range(len(a))), Fraction(0)) for j in range(ncols)]
        out.append(v)
    return rref(out, ncols)
