"""Fraction-free exact elimination over Q or a number field.

Rational matrices are scaled row-wise to integers and reduced with Bareiss'
algorithm, so every intermediate entry stays an integer.  Number-field
matrices run the same recurrence with exact field division.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .exactpoly import NFElem


def _is_rational(rows) -> bool:
    return all(not isinstance(x, NFElem) for row in rows for x in row)


def _integer_rows(rows) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Row-echelon form by one-step fraction-free elimination.

    Returns the reduced rows and the pivot column of each nonzero row.
    Entries are ints for rational input.
    """
    if _is_rational(rows):
        m = _integer_rows(rows)

        def div(a, b):
            q, r = divmod(a, b)
            assert r == 0, "Bareiss division must be exact"
            return q
    else:
        m = [list(r) for r in rows]

        def div(a, b):
            return a / b

    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c + 1, ncols):
                row_i[j] = div(p * row_i[j] - a * row_r[j], prev)
            row_i[c] = 0 * a
        # rows above the active block keep their scale; entries left of c are already zero
        pivots.append(c)
        prev = p
        r += 1
    return m[: len(pivots)], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(bareiss(rows)[1])


def determinant(rows: Sequence[Sequence]):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if _is_rational(rows):
        dens = []
        for row in rows:
            d = 1
            for x in row:
                d = lcm(d, Fraction(x).denominator)
            dens.append(d)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    rational = _is_rational(rows)
    if rational:
        m = _integer_rows(rows)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        p = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                num = p * m[i][j] - m[i][c] * m[c][j]
                m[i][j] = num // prev if rational else num / prev
            m[i][c] = 0
        prev = p
    det = sign * m[n - 1][n - 1]
    if rational:
        scale = 1
        for d in dens:
            scale *= d
        return Fraction(det, scale)
    return det


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{x : A x = 0}``.

    Each basis vector has a 1 in its free column; the rest is obtained by
    back substitution on the Bareiss echelon form.
    """
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ech, piv = bareiss(rows)
    rational = _is_rational(rows)
    one = Fraction(1)
    zero = Fraction(0)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        x: list = [zero] * ncols
        x[f] = one
        for r in range(len(piv) - 1, -1, -1):
            c = piv[r]
            acc = zero
            row = ech[r]
            for j in range(c + 1, ncols):
                if row[j] != 0 and x[j] != 0:
                    acc = acc + row[j] * x[j]
            x[c] = -(Fraction(acc) / row[c]) if rational else -(acc / row[c])
        basis.append(x)
    return basis
