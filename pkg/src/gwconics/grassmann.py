"""Intersection theory on the Grassmannian G(2, N).

Classes are stored as polynomials in ``e1 = c1(Q)`` and ``e2 = c2(Q)`` of the
rank-2 universal quotient bundle ``Q`` with Chern roots ``alpha, beta``.  The
ring relations of ``H^*(G(2, N))`` are never imposed on products; they enter
only at integration time, where a class is expanded in two-row Schur
functions and the coefficient of the top partition ``(N-2, N-2)`` is read off.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactpoly import rat, rat_str

Monomial = tuple[int, int]  # (i, j) -> e1^i e2^j


class NonUnitError(ValueError):
    """Series inversion of a class without invertible constant term."""


class SymClass:
    """A cohomology class ``sum c_ij e1^i e2^j`` with exact rational coefficients.

    Codimension of ``e1^i e2^j`` is ``i + 2j``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + rat(c)
        object.__setattr__(self, "terms", {m: c for m, c in acc.items() if c})

    def __setattr__(self, *_):
        raise AttributeError("SymClass is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def one(cls) -> "SymClass":
        return cls({(0, 0): 1})

    @classmethod
    def zero(cls) -> "SymClass":
        return cls()

    @classmethod
    def e1(cls) -> "SymClass":
        return cls({(1, 0): 1})

    @classmethod
    def e2(cls) -> "SymClass":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c) -> "SymClass":
        return cls({(0, 0): c})

    # structure ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def codims(self) -> set[int]:
        return {i + 2 * j for i, j in self.terms}

    def max_codim(self) -> int:
        return max(self.codims(), default=-1)

    def homogeneous_codim(self) -> int | None:
        """The codimension if homogeneous and nonzero, else ``None``."""
        cs = self.codims()
        return cs.pop() if len(cs) == 1 else None

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def graded_part(self, r: int) -> "SymClass":
        return graded_part(self, r)

    def truncate(self, cutoff: int) -> "SymClass":
        return SymClass({m: c for m, c in self.terms.items() if m[0] + 2 * m[1] <= cutoff})

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _as_class(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SymClass(out)

    __radd__ = __add__

    def __neg__(self):
        return SymClass({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_class(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def mul(self, other: "SymClass", cutoff: int | None = None) -> "SymClass":
        out: dict[Monomial, Fraction] = {}
        for (i, j), a in self.terms.items():
            ca = i + 2 * j
            for (k, l), b in other.terms.items():
                if cutoff is not None and ca + k + 2 * l > cutoff:
                    continue
                key = (i + k, j + l)
                out[key] = out.get(key, Fraction(0)) + a * b
        return SymClass(out)

    def __mul__(self, other):
        if isinstance(other, SymClass):
            return self.mul(other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SymClass({m: c * other for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int) -> "SymClass":
        out = SymClass.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _as_class(other)
        return other is not None and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "SymClass(0)"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0] + 2 * kv[0][1], -kv[0][0])):
            mono = "*".join(p for p in (
                "" if i == 0 else ("e1" if i == 1 else f"e1^{i}"),
                "" if j == 0 else ("e2" if j == 1 else f"e2^{j}"),
            ) if p)
            parts.append(f"{rat_str(c)}*{mono}" if mono else rat_str(c))
        return "SymClass(" + " + ".join(parts) + ")"

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [
            {"i": i, "j": j, "coeff": rat_str(c)}
            for (i, j), c in sorted(self.terms.items())
        ]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymClass":
        return cls({(int(t["i"]), int(t["j"])): rat(t["coeff"]) for t in obj["terms"]})


def _as_class(x) -> SymClass | None:
    if isinstance(x, SymClass):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return SymClass.constant(x)
    return None


def graded_part(P: SymClass, r: int) -> SymClass:
    """Homogeneous codimension-``r`` part."""
    if r < 0:
        return SymClass.zero()
    return SymClass({(i, j): c for (i, j), c in P.terms.items() if i + 2 * j == r})


# ---------------------------------------------------------------------------
# symmetric reduction from Chern roots

def from_roots(poly: Mapping[tuple[int, int], Fraction]) -> SymClass:
    """Rewrite a symmetric polynomial in ``alpha, beta`` via ``e1, e2``.

    ``poly`` maps ``(a, b)`` to the coefficient of ``alpha^a beta^b``.
    Raises ``ValueError`` if the input is not symmetric.
    """
    rem = {m: Fraction(c) for m, c in poly.items() if c}
    for (a, b), c in rem.items():
        if rem.get((b, a), Fraction(0)) != c:
            raise ValueError("polynomial in the Chern roots is not symmetric")
    out: dict[Monomial, Fraction] = {}
    while rem:
        # leading monomial: highest total degree, then highest alpha power
        a, b = max(rem, key=lambda m: (m[0] + m[1], m[0]))
        c = rem[(a, b)]
        # alpha^a beta^b with a >= b is the lead term of e1^(a-b) e2^b
        key = (a - b, b)
        out[key] = out.get(key, Fraction(0)) + c
        for m, v in _e_monomial_in_roots(a - b, b).items():
            nv = rem.get(m, Fraction(0)) - c * v
            if nv:
                rem[m] = nv
            else:
                rem.pop(m, None)
    return SymClass(out)


@lru_cache(maxsize=None)
def _e_monomial_in_roots_cached(i: int, j: int) -> tuple:
    # (alpha + beta)^i (alpha beta)^j
    from math import comb
    return tuple(((r + j, i - r + j), comb(i, r)) for r in range(i + 1))


def _e_monomial_in_roots(i: int, j: int) -> dict:
    return dict(_e_monomial_in_roots_cached(i, j))


def _roots_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a, b), x in p.items():
        for (c, d), y in q.items():
            k = (a + c, b + d)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


def to_roots(P: SymClass) -> dict:
    """Expand in ``alpha, beta``; inverse of :func:`from_roots`."""
    out: dict = {}
    for (i, j), c in P.terms.items():
        for m, v in _e_monomial_in_roots(i, j).items():
            out[m] = out.get(m, Fraction(0)) + c * v
    return {m: v for m, v in out.items() if v}


# ---------------------------------------------------------------------------
# characteristic classes

@lru_cache(maxsize=None)
def chern_sym_power(m: int) -> SymClass:
    """Total Chern class of ``S^m Q``: ``prod_i (1 + i alpha + (m - i) beta)``."""
    if m < 1:
        raise ValueError("symmetric power must be >= 1")
    acc: dict = {(0, 0): Fraction(1)}
    for i in range(m + 1):
        factor = {(0, 0): Fraction(1)}
        if i:
            factor[(1, 0)] = Fraction(i)
        if m - i:
            factor[(0, 1)] = Fraction(m - i)
        acc = _roots_mul(acc, factor)
    return from_roots(acc)


def c_top_sym_power(m: int) -> SymClass:
    """``c_{m+1}(S^m Q)``, the top Chern class."""
    return graded_part(chern_sym_power(m), m + 1)


def chern_dual() -> SymClass:
    """``c(Q^vee) = (1 - alpha)(1 - beta) = 1 - e1 + e2``."""
    return SymClass({(0, 0): 1, (1, 0): -1, (0, 1): 1})


def chern_q() -> SymClass:
    return SymClass({(0, 0): 1, (1, 0): 1, (0, 1): 1})


@lru_cache(maxsize=None)
def sigma(a: int) -> SymClass:
    """Special Schubert class, the codim-``a`` part of ``1/c(Q^vee)``.

    This is the complete homogeneous polynomial ``h_a(alpha, beta)``, built by
    ``h_a = e1 h_{a-1} - e2 h_{a-2}``.
    """
    if a < 0:
        return SymClass.zero()
    if a == 0:
        return SymClass.one()
    if a == 1:
        return SymClass.e1()
    return SymClass.e1() * sigma(a - 1) - SymClass.e2() * sigma(a - 2)


def inverse_series(P: SymClass, cutoff: int) -> SymClass:
    """``1/P`` truncated at codimension ``cutoff``."""
    c0 = P.coeff(0, 0)
    if c0 == 0:
        raise NonUnitError("series has no invertible constant term")
    parts = [graded_part(P, r) for r in range(cutoff + 1)]
    inv = [SymClass.constant(1 / c0)]
    for r in range(1, cutoff + 1):
        acc = SymClass.zero()
        for s in range(1, r + 1):
            if parts[s].terms and inv[r - s].terms:
                acc = acc + parts[s] * inv[r - s]
        inv.append(acc * (-1 / c0))
    out = SymClass.zero()
    for part in inv:
        out = out + part
    return out


def series_quotient(numer: SymClass, denom: SymClass, cutoff: int) -> SymClass:
    """Truncated power-series quotient ``numer / denom``."""
    return numer.mul(inverse_series(denom, cutoff), cutoff=cutoff)


def segre(chern: SymClass, rank: int | None = None, cutoff: int = 0) -> SymClass:
    """Total Segre class (inverse of the total Chern class) up to ``cutoff``.

    ``rank`` is accepted for symmetry with the Chern-class constructors; the
    inverse series does not depend on it.
    """
    if chern.coeff(0, 0) != 1:
        raise NonUnitError("total Chern class must start with 1")
    return inverse_series(chern, cutoff)


# ---------------------------------------------------------------------------
# Schur expansion and integration

Partition = tuple[int, int]


@lru_cache(maxsize=None)
def schur_class(a: int, b: int) -> SymClass:
    """``s_(a,b)`` by Jacobi-Trudi: ``h_a h_b - h_{a+1} h_{b-1}``."""
    if not a >= b >= 0:
        raise ValueError("need a >= b >= 0")
    return sigma(a) * sigma(b) - sigma(a + 1) * sigma(b - 1)


def schur_expand(P: SymClass) -> dict[Partition, Fraction]:
    """Coefficients ``c_lambda`` with ``P = sum c_lambda s_lambda(alpha, beta)``.

    In degree ``n`` the class ``s_(n-j, j)`` has leading monomial
    ``e1^(n-2j) e2^j`` and otherwise only monomials with more ``e2``; peeling
    off partitions in order of increasing ``j`` is a triangular solve.
    """
    rem = dict(P.terms)
    out: dict[Partition, Fraction] = {}
    while rem:
        (i, j) = min(rem, key=lambda m: (m[0] + 2 * m[1], m[1]))
        c = rem[(i, j)]
        n = i + 2 * j
        lam = (n - j, j)
        out[lam] = c
        for m, v in schur_class(*lam).terms.items():
            nv = rem.get(m, Fraction(0)) - c * v
            if nv:
                rem[m] = nv
            else:
                rem.pop(m, None)
    return out


def from_schur(expansion: Mapping[Partition, Fraction]) -> SymClass:
    out = SymClass.zero()
    for lam, c in expansion.items():
        out = out + schur_class(*lam) * c
    return out


def integrate(P: SymClass, N: int) -> Fraction:
    """``int_{G(2,N)} P``: the coefficient of ``s_(N-2, N-2)``.

    Only the codim-``2(N-2)`` part contributes; partitions with a row longer
    than ``N - 2`` vanish on ``G(2, N)`` and are ignored.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    top = graded_part(P, 2 * (N - 2))
    if top.is_zero():
        return Fraction(0)
    return schur_expand(top).get((N - 2, N - 2), Fraction(0))


def line_count(N: int, k: int) -> Fraction:
    """``int_{G(2,N)} c_top(S^k Q)``; zero unless ``k + 1 = 2(N - 2)``."""
    return integrate(c_top_sym_power(k), N)
