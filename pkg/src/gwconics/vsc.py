"""Virtual structure constants of degree-k hypersurfaces in P^(N-1) and the
degree-2 three-point Gromov-Witten formula built from them.

``L(d, m)`` below always means the constant with degree ``d`` and index ``m``;
it vanishes unless ``0 <= m <= N - 1 + (k - N) d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .exactpoly import UniPoly, rat, rat_str


class RangeError(ValueError):
    """Parameters outside the admissible range."""


class MissingDegreeError(ValueError):
    """A lower-degree table entry needed by the recursion is absent."""


def check_range(N: int, k: int, allow_out_of_range: bool = False) -> None:
    """Enforce ``2N - 5 >= k >= N - 2 >= 2`` unless overridden."""
    if allow_out_of_range:
        if N < 2 or k < 2:
            raise RangeError(f"need N >= 2 and k >= 2, got N={N}, k={k}")
        return
    if not (2 * N - 5 >= k >= N - 2 >= 2):
        raise RangeError(f"(N, k) = ({N}, {k}) violates 2N-5 >= k >= N-2 >= 2")


def support_top(N: int, k: int, d: int) -> int:
    """Largest index with possibly nonzero ``L(d, .)``."""
    return N - 1 + (k - N) * d


@dataclass(frozen=True)
class VSCTable:
    N: int
    k: int
    entries: dict = field(default_factory=dict)  # (d, m) -> Fraction

    @property
    def d_max(self) -> int:
        return max((d for d, _ in self.entries), default=0)

    def get(self, d: int, m: int) -> Fraction:
        if d > self.d_max:
            raise MissingDegreeError(f"degree {d} not in table (d_max={self.d_max})")
        if m < 0 or m > support_top(self.N, self.k, d):
            return Fraction(0)
        return self.entries.get((d, m), Fraction(0))

    def row(self, d: int) -> list[Fraction]:
        return [self.get(d, m) for m in range(support_top(self.N, self.k, d) + 1)]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "L": {f"{d}:{m}": rat_str(c) for (d, m), c in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VSCTable":
        entries = {}
        for key, val in obj["L"].items():
            d, m = key.split(":")
            entries[(int(d), int(m))] = rat(val)
        return cls(int(obj["N"]), int(obj["k"]), entries)


def vsc_d1(N: int, k: int, allow_out_of_range: bool = False) -> list[Fraction]:
    """Coefficients of ``k * prod_{j=1}^{k-1} (j w + (k - j))`` in ``w``."""
    check_range(N, k, allow_out_of_range)
    p = UniPoly([k])
    for j in range(1, k):
        p = p * UniPoly([k - j, j])
    return [p[n] for n in range(k)]


def _chains(d: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """Yield ``(l, (i_0, ..., i_l))`` with ``0 = i_0 < ... < i_l = d`` and ``l >= 2``."""
    for l in range(2, d + 1):
        for inner in combinations(range(1, d), l - 1):
            yield l, (0, *inner, d)


def vsc_d(N: int, k: int, d: int, table: VSCTable) -> list[Fraction]:
    """Degree-``d`` constants from the lower-degree rows of ``table``.

    Sum over chains ``0 = i_0 < ... < i_l = d`` (``l >= 2``, sign ``(-1)^l``)
    and weakly increasing ``0 <= j_1 <= ... <= j_l <= top`` with ``j_0 = 0``
    of ``prod_n ((i_{n-1} + (d - i_{n-1}) z)/d)^(j_n - j_{n-1})
    * L(i_n - i_{n-1}, j_n + (N - k) i_{n-1})``.
    """
    if d < 2:
        raise ValueError("recursion applies to d >= 2; use vsc_d1 for d = 1")
    if table.d_max < d - 1:
        raise MissingDegreeError(f"table has degrees up to {table.d_max}, need {d - 1}")
    top = support_top(N, k, d)
    total = UniPoly()
    affine_pows: dict[tuple[int, int], UniPoly] = {}

    def affine_pow(i: int, e: int) -> UniPoly:
        key = (i, e)
        if key not in affine_pows:
            base = UniPoly([Fraction(i, d), Fraction(d - i, d)])
            affine_pows[key] = base ** e
        return affine_pows[key]

    for l, chain in _chains(d):
        sign = -1 if l % 2 else 1
        steps = [(chain[n - 1], chain[n] - chain[n - 1]) for n in range(1, l + 1)]

        def walk(n: int, j_prev: int, acc: UniPoly) -> UniPoly:
            if n == l:
                return acc
            i_prev, deg = steps[n]
            out = UniPoly()
            for j in range(j_prev, top + 1):
                idx = j + (N - k) * i_prev
                if idx < 0:
                    continue
                if idx > support_top(N, k, deg):
                    break  # idx grows with j
                coeff = table.get(deg, idx)
                if coeff == 0:
                    continue
                out = out + walk(n + 1, j, acc * affine_pow(i_prev, j - j_prev).scale(coeff))
            return out

        total = total + walk(0, 0, UniPoly([1])).scale(sign)

    if total.degree > top:
        raise AssertionError(f"degree-{d} polynomial exceeds its support bound {top}")
    return [total[m] for m in range(top + 1)]


def build_table(N: int, k: int, d_max: int, allow_out_of_range: bool = False) -> VSCTable:
    entries = {(1, m): c for m, c in enumerate(vsc_d1(N, k, allow_out_of_range))}
    table = VSCTable(N, k, dict(entries))
    for d in range(2, d_max + 1):
        row = vsc_d(N, k, d, table)
        entries.update({(d, m): c for m, c in enumerate(row)})
        table = VSCTable(N, k, dict(entries))
    return table


def gw2_range(N: int, k: int) -> range:
    """Admissible ``m`` for :func:`gw2_3pt`."""
    return range(1 + 2 * (k - N), N - 1)


def gw2_3pt(N: int, k: int, m: int, table: VSCTable | None = None,
            allow_out_of_range: bool = False) -> Fraction:
    """``<O_e O_{e^{N-2-m}} O_{e^{m-1-2(k-N)}}>_{0,2}``.

    ``k (L(2,m) - L(2,1+2(k-N)) - 2 L(1,1+(k-N)) sum_{j=0}^{k-N}
    (L(1,m-j) - L(1,1+2(k-N)-j)))``.
    """
    if m not in gw2_range(N, k):
        raise RangeError(f"m={m} outside [{1 + 2 * (k - N)}, {N - 2}] for (N, k)=({N}, {k})")
    if table is None or table.d_max < 2:
        table = build_table(N, k, 2, allow_out_of_range)
    r = k - N
    base = 1 + 2 * r
    s = sum((table.get(1, m - j) - table.get(1, base - j) for j in range(r + 1)), Fraction(0))
    return k * (table.get(2, m) - table.get(2, base) - 2 * table.get(1, 1 + r) * s)


def gw2_insertions(N: int, k: int, m: int) -> tuple[int, int, int]:
    """Codimensions ``(1, b, c)`` of the three insertions computed by ``gw2_3pt``."""
    return (1, N - 2 - m, m - 1 - 2 * (k - N))


def m_for_insertions(N: int, k: int, b: int, c: int) -> int:
    """Inverse of :func:`gw2_insertions` for the ``(1, b, c)`` case."""
    m = N - 2 - b
    if m - 1 - 2 * (k - N) != c:
        raise RangeError(f"(1, {b}, {c}) does not satisfy the degree-2 dimension constraint")
    return m
