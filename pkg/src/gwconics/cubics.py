"""Degree 3 for ``k = N + 1``: the conjectural triple-cover class, nodal-conic
terms from (2+1) -> (1+1) covers, and decomposition of a supplied degree-3
three-point invariant.

The degree-3 invariant itself is never computed here; it must be supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .dcover import DimensionError, degree1_invariant
from .exactpoly import rat_str
from .grassmann import SymClass
from .vsc import RangeError


class ScopeError(ValueError):
    """Degree-3 formulas are only available for ``k - N = 1``."""


@dataclass(frozen=True)
class CubicContributionClass:
    k: int
    value: SymClass

    @property
    def N(self) -> int:
        return self.k - 1


def cubic_contribution_class(k: int) -> CubicContributionClass:
    if k < 5:
        raise RangeError("need k >= 5 so that N = k - 1 >= 4")
    k_ = Fraction(k)
    c11 = (Fraction(1, 24) * (27 * k_ ** 2 - 55 * k_ + 26) * k_ * (k_ - 1) + Fraction(2, 9)) / 27
    c2 = (Fraction(7, 6) * (k_ + 1) * k_ * (k_ - 1) + Fraction(1, 9)) / 27
    return CubicContributionClass(k, SymClass({(2, 0): c11, (0, 1): c2}))


def _check_scope(N: int, k: int, a: int, b: int, c: int) -> None:
    if k != N + 1:
        raise ScopeError(f"degree-3 decomposition needs k = N + 1, got (N, k) = ({N}, {k})")
    if N < 6:
        raise RangeError("the one-point factor needs sigma_{N-6}; N must be >= 6")
    if a + b + c != N - 5:
        raise DimensionError(f"a+b+c = {a + b + c}, need N - 5 = {N - 5}")
    for x in (a, b, c):
        if x < 1:
            raise RangeError("insertions of codimension 0 are not supported")


def _bracket(N: int, k: int, *codims: int) -> Fraction:
    return degree1_invariant(N, k, codims)


def nodal_term(N: int, k: int, a: int, b: int, c: int) -> Fraction:
    """Contribution of double covers of one component of a nodal conic."""
    _check_scope(N, k, a, b, c)
    four = _bracket(N, k, a, b, c, 3) * _bracket(N, k, N - 5)
    cyc = Fraction(0)
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        cyc += _bracket(N, k, x, y, z + 2) * _bracket(N, k, N - z - 4, z)
    return (Fraction(9, 4) * four + Fraction(3, 2) * cyc) / k


def nodal_term_expanded(N: int, k: int, a: int, b: int, c: int) -> Fraction:
    """Same quantity summed over the eight weighted insertion patterns, pattern by pattern.

    Independent evaluation order used as a determinism/consistency check.
    """
    _check_scope(N, k, a, b, c)
    total = Fraction(0)
    for pat in am_patterns(N, a, b, c):
        host, other = pat["brackets"]
        total += pat["weight"] * _bracket(N, k, *host) * _bracket(N, k, *other)
    return total / k


def am_patterns(N: int, a: int = 1, b: int = 1, c: int = 1) -> list[dict]:
    """The eight placements of the degree-2 cover on a nodal conic.

    Each pattern is a pair of degree-1 brackets (the doubly covered component
    first) with Aspinwall-Morrison weight ``1 / 2^(3 - n)``, ``n`` the number
    of points on the doubly covered component.
    """
    pats = []

    # string labels are accepted so the weight bookkeeping can run symbolically
    def shift(x, n):
        return f"{x}{n:+d}" if isinstance(x, str) else x + n

    def partner(z):
        return f"{N}-{z}-4" if isinstance(z, str) else N - z - 4

    def add(group, host, other):
        n = len(host)
        pats.append({"group": group, "brackets": (host, other), "n": n,
                     "weight": Fraction(2) ** (n - 3)})

    four, one = (a, b, c, 3), (shift(N, -5),)
    add("four-point", four, one)
    cyclic = ((a, b, c), (b, c, a), (c, a, b))
    for x, y, z in cyclic:
        add(f"cyclic-{z}", (x, y, shift(z, 2)), (partner(z), z))
    for x, y, z in cyclic:
        add(f"cyclic-{z}", (partner(z), z), (x, y, shift(z, 2)))
    add("four-point", one, four)
    return pats


def am_weight_check() -> dict:
    """Collapse the weighted patterns per group and check the coefficients 9/4 and 3/2.

    Uses distinct symbolic labels for a, b, c so the three cyclic groups do
    not merge.
    """
    pats = am_patterns("N", "a", "b", "c")  # type: ignore[arg-type]
    groups: dict[str, Fraction] = {}
    for p in pats:
        groups[p["group"]] = groups.get(p["group"], Fraction(0)) + p["weight"]
    expected = {"four-point": Fraction(9, 4), "cyclic-a": Fraction(3, 2),
                "cyclic-b": Fraction(3, 2), "cyclic-c": Fraction(3, 2)}
    ok = len(pats) == 8 and groups == expected
    return {"patterns": len(pats), "coefficients": {g: rat_str(v) for g, v in groups.items()},
            "ok": ok}


@dataclass(frozen=True)
class CubicReport:
    N: int
    k: int
    a: int
    b: int
    c: int
    gw3: Fraction
    nodal_term: Fraction
    triple_cover_term: Fraction
    twisted_cubic_count: Fraction

    def to_json(self) -> dict:
        return {
            "N": self.N, "k": self.k, "abc": [self.a, self.b, self.c],
            "gw3": rat_str(self.gw3),
            "nodal": rat_str(self.nodal_term),
            "triple_cover": rat_str(self.triple_cover_term),
            "twisted_cubics": rat_str(self.twisted_cubic_count),
            "provenance": {"gw_source": "user-supplied",
                           "note": "triple-cover class is conjectural (k - N = 1)"},
        }


def decompose3(N: int, k: int, a: int, b: int, c: int, gw3) -> CubicReport:
    _check_scope(N, k, a, b, c)
    gw3 = Fraction(gw3)
    nodal = nodal_term(N, k, a, b, c)
    triple = 27 * degree1_invariant(N, k, (a, b, c), cubic_contribution_class(k).value)
    return CubicReport(N, k, a, b, c, gw3, nodal, triple, gw3 - nodal - triple)


def cubic_triples(N: int) -> list[tuple[int, int, int]]:
    """Sorted admissible ``(a, b, c)`` for ``k = N + 1``."""
    out = []
    for a in range(1, N - 4):
        for b in range(a, N - 4):
            c = N - 5 - a - b
            if c >= b:
                out.append((a, b, c))
    return out


def permutation_invariant(N: int, k: int, a: int, b: int, c: int, gw3) -> bool:
    base = decompose3(N, k, a, b, c, gw3)
    key = (base.nodal_term, base.triple_cover_term, base.twisted_cubic_count)
    return all(
        (r.nodal_term, r.triple_cover_term, r.twisted_cubic_count) == key
        for r in (decompose3(N, k, *p, gw3) for p in permutations((a, b, c)))
    )
