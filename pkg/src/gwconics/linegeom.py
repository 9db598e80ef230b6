"""Normal bundles of lines on explicit hypersurfaces, by exact linear algebra.

A line is put in the position ``x_j = 0 (j >= 3)`` and described by the
binary forms ``f_3, ..., f_N`` of degree ``k - 1`` with
``F = x_3 F_3 + ... + x_N F_N`` and ``f_j = F_j(s, t, 0, ..., 0)``.
Every cohomology dimension below is a kernel or cokernel dimension of the
multiplication map ``g (x) e_j -> g f_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactpoly import (BiForm, MPoly, NumberField, biform_compose, coeff_from_json, resultant,
                        common_field)
from .linalg import nullspace, rank


class InconsistentProfileError(ValueError):
    """Kernel dimensions do not come from any splitting type."""


class NotOnHypersurfaceError(ValueError):
    pass


class RankDeficientError(ValueError):
    pass


@dataclass(frozen=True)
class LineData:
    N: int
    k: int
    f: tuple[BiForm, ...]

    def __post_init__(self):
        if len(self.f) != self.N - 2:
            raise ValueError(f"need N-2 = {self.N - 2} forms, got {len(self.f)}")
        for g in self.f:
            if g.degree != self.k - 1:
                raise ValueError(f"forms must have degree k-1 = {self.k - 1}")
        common_field(c for g in self.f for c in g.coeffs)

    @property
    def field(self) -> NumberField | None:
        return common_field(c for g in self.f for c in g.coeffs)

    def to_json(self) -> dict:
        fld = self.field
        return {"N": self.N, "k": self.k,
                "f": [g.to_json() for g in self.f],
                "field": "Q" if fld is None else fld.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "LineData":
        fld = None if obj.get("field", "Q") == "Q" else NumberField(obj["field"]["modulus"])
        k = int(obj["k"])
        forms = tuple(BiForm(k - 1, [coeff_from_json(c, fld) for c in g]) for g in obj["f"])
        return cls(int(obj["N"]), k, forms)


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple[int, ...]  # descending

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    def h0(self, m: int) -> int:
        return sum(max(0, a + m + 1) for a in self.degrees)

    def h1(self, m: int) -> int:
        return sum(max(0, -(a + m) - 1) for a in self.degrees)

    @classmethod
    def generic(cls, N: int, k: int) -> "SplittingType":
        return cls((0,) * (2 * N - k - 5) + (-1,) * (k - N + 2))

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.degrees) + "}"


# ---------------------------------------------------------------------------

def _mult_matrix(forms: Sequence[BiForm], g_degree: int) -> list[list]:
    """Matrix of ``(g_j)_j -> sum_j g_j f_j`` with ``g_j`` of degree ``g_degree``.

    Columns are indexed by ``(j, i)`` meaning the monomial ``s^i t^(g_degree-i)``
    in slot ``j``; rows by the monomials of the target degree.
    """
    if not forms:
        return []
    out_deg = g_degree + forms[0].degree
    cols = []
    for f in forms:
        for i in range(g_degree + 1):
            col = [Fraction(0)] * (out_deg + 1)
            for a, c in enumerate(f.coeffs):
                col[a + i] = c
            cols.append(col)
    return [[cols[c][r] for c in range(len(cols))] for r in range(out_deg + 1)]


def twisted_kernel_dim(line: LineData, m: int) -> int:
    """``h^0(N_{L/M}(m))`` as the kernel of ``S^{m+1}W (x) (V/W)^vee -> S^{k+m}W``."""
    if m < -1:
        raise ValueError("twist must be >= -1")
    mat = _mult_matrix(line.f, m + 1)
    ncols = (m + 2) * (line.N - 2)
    return ncols - rank(mat)


def profile(line: LineData, m_max: int | None = None) -> dict[int, int]:
    if m_max is None:
        m_max = line.k
    return {m: twisted_kernel_dim(line, m) for m in range(-1, m_max + 1)}


def splitting_from_profile(h0: dict[int, int], rank_: int) -> SplittingType:
    """Recover ``{a_i}`` from ``h^0(E(m)) = sum max(0, a_i + m + 1)``.

    Summands are subbundles of ``O(1)^r``, so ``a_i <= 1`` and ``h^0(E(-2)) = 0``.
    The first difference ``h^0(E(m)) - h^0(E(m-1))`` counts summands with ``a_i >= -m``.
    """
    ms = sorted(h0)
    counts = {}
    prev_h = 0
    for m in ms:
        counts[m] = h0[m] - prev_h
        prev_h = h0[m]
    degrees: list[int] = []
    prev_count = 0
    for m in ms:
        new = counts[m] - prev_count
        if new < 0:
            raise InconsistentProfileError(f"profile not convex at m={m}: {h0}")
        degrees += [-m] * new
        prev_count = counts[m]
    if len(degrees) != rank_:
        raise InconsistentProfileError(
            f"profile {h0} accounts for {len(degrees)} summands, expected {rank_}")
    st = SplittingType(tuple(degrees))
    if any(st.h0(m) != h0[m] for m in ms):
        raise InconsistentProfileError(f"splitting {st} does not reproduce {h0}")
    return st


def splitting_type(line: LineData, h0: dict[int, int] | None = None) -> SplittingType:
    """Splitting type of ``N_{L/M}`` from twisted kernel dimensions, ``m = -1..k``."""
    st = splitting_from_profile(profile(line) if h0 is None else h0, line.N - 3)
    if sum(st.degrees) != line.N - 2 - line.k:
        raise InconsistentProfileError(
            f"degree {sum(st.degrees)} != N-2-k = {line.N - 2 - line.k}; "
            "line not on the hypersurface or M singular along it")
    return st


# ---------------------------------------------------------------------------

def _complement(p: Sequence, q: Sequence, n: int) -> list[list]:
    """Standard basis vectors completing ``p, q`` to a basis of ``K^n``."""
    chosen = [list(p), list(q)]
    if rank(chosen) != 2:
        raise RankDeficientError("line parametrization has rank < 2")
    out = []
    for i in range(n):
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(chosen + [e]) == len(chosen) + 1:
            chosen.append(e)
            out.append(e)
    return out


def adapt_line(F: MPoly, param: Sequence[Sequence], k: int | None = None) -> LineData:
    """Move the line ``x = s*param[0] + t*param[1]`` to standard position.

    With a complement ``u_3..u_N`` of the line's span, the normal forms are the
    directional derivatives ``f_j = sum_i (dF/dx_i)(s p + t q) u_j[i]``.
    """
    if len(param) != 2:
        raise ValueError("parametrization must be a 2 x N matrix")
    p, q = param
    n = F.nvars
    if k is None:
        k = F.degree()
    if not F.on_line(p, q).is_zero():
        raise NotOnHypersurfaceError("F does not vanish on the line")
    comp = _complement(p, q, n)
    grads = [F.diff(i).on_line(p, q) for i in range(n)]
    forms = []
    for u in comp:
        acc = BiForm(k - 1)
        for i in range(n):
            if u[i] != 0 and not grads[i].is_zero():
                acc = acc + grads[i] * u[i]
        forms.append(acc)
    return LineData(n, k, tuple(forms))


def random_line(N: int, k: int, seed: int) -> LineData:
    rng = random.Random(seed)
    forms = tuple(BiForm(k - 1, [rng.randint(-9, 9) for _ in range(k)]) for _ in range(N - 2))
    return LineData(N, k, forms)


def random_generic_splitting(N: int, k: int, seed: int) -> SplittingType:
    if not (2 * N - 5 >= k >= N - 2 >= 2):
        raise ValueError(f"(N, k) = ({N}, {k}) outside 2N-5 >= k >= N-2 >= 2")
    return splitting_type(random_line(N, k, seed))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverCohomology:
    h0: int
    h1: int
    kernel_basis: tuple[tuple[BiForm, ...], ...]  # each vector: one quadratic per e_j
    chain_geometry: bool = False  # common root: the cover degenerates to a chain


def _pencil_rank(phi1: BiForm, phi2: BiForm) -> int:
    return rank([list(phi1.coeffs), list(phi2.coeffs)])


def cover_cohomology(line: LineData, phi1: BiForm, phi2: BiForm) -> CoverCohomology:
    """``H^0, H^1`` of ``phi^* N_{L/M}`` for the pencil ``(phi1, phi2)``.

    Kernel and cokernel of ``S^2U (x) (V/W)^vee -> S^{2k}U``,
    ``g (x) e_j -> g * f_j(phi1, phi2)``.
    """
    if phi1.degree != 2 or phi2.degree != 2:
        raise ValueError("pencil members must be quadratic")
    if _pencil_rank(phi1, phi2) != 2:
        raise RankDeficientError("pencil has rank < 2")
    pulled = [biform_compose(f, phi1, phi2) for f in line.f]
    mat = _mult_matrix(pulled, 2)
    ncols = 3 * (line.N - 2)
    ker = nullspace(mat, ncols)
    h0 = len(ker)
    r = ncols - h0
    h1 = (2 * line.k + 1) - r
    basis = tuple(
        tuple(BiForm(2, vec[3 * j: 3 * j + 3]) for j in range(line.N - 2))
        for vec in ker
    )
    return CoverCohomology(h0, h1, basis, resultant(phi1, phi2) == 0)


def proportional(u: Sequence[BiForm], v: Sequence[BiForm]) -> bool:
    """True iff the two vectors of forms span the same line (both nonzero)."""
    flat_u = [c for g in u for c in g.coeffs]
    flat_v = [c for g in v for c in g.coeffs]
    if all(x == 0 for x in flat_u) or all(x == 0 for x in flat_v):
        return False
    return rank([flat_u, flat_v]) == 1


# ---------------------------------------------------------------------------
# the explicit examples

def quintic_examples() -> dict[str, LineData]:
    s4, t4 = BiForm.monomial(4, 0), BiForm.monomial(0, 4)
    zero = BiForm(4)
    return {
        "O(1)+O(-3)": LineData(5, 5, (zero, s4, t4)),
        "O+O(-2)": LineData(5, 5, (s4, BiForm.monomial(3, 1), t4)),
        "O(-1)+O(-1)": LineData(5, 5, (s4, BiForm.monomial(2, 2), t4)),
    }


def m87_polynomial(field: NumberField | None = None) -> MPoly:
    """``F = x3 F3 + ... + x7 F7 + x3^8 + ... + x7^8`` on ``P^6``."""
    one = Fraction(1) if field is None else field.one()
    terms = []

    def e(**kw):
        v = [0] * 7
        for name, p in kw.items():
            v[int(name[1:]) - 1] = p
        return tuple(v)

    terms.append((e(x3=1, x1=7), 8 * one))
    terms.append((e(x4=1, x1=6, x2=1), 8 * one))
    terms.append((e(x5=1, x1=4, x2=3), 8 * one))
    terms.append((e(x6=1, x1=2, x2=5), 8 * one))
    terms.append((e(x7=1, x2=7), 8 * one))
    for j in range(3, 8):
        terms.append((e(**{f"x{j}": 8}), one))
    return MPoly(7, terms)


def m87_standard_line() -> LineData:
    p = [Fraction(1)] + [Fraction(0)] * 6
    q = [Fraction(0), Fraction(1)] + [Fraction(0)] * 5
    return adapt_line(m87_polynomial(), (p, q), 8)


def m87_eps_line(power: int = 1) -> LineData:
    """The line ``eps x1 - x2 = x3 + eps x4 = x_j = 0 (j >= 5)`` over ``Q[eps]/(eps^8 + 1)``.

    ``power`` picks ``eps = t^power`` (odd powers give the eight primitive 16th roots).
    """
    K = NumberField([1, 0, 0, 0, 0, 0, 0, 0, 1], name="eps")
    eps = K.gen() ** power
    zero, one = K.zero(), K.one()
    p = [one, eps, zero, zero, zero, zero, zero]
    q = [zero, zero, -eps, one, zero, zero, zero]
    return adapt_line(m87_polynomial(K), (p, q), 8)


def line_from_coeff_lists(N: int, k: int, lists: Sequence[Sequence], field=None) -> LineData:
    return LineData(N, k, tuple(BiForm(k - 1, [coeff_from_json(c, field) for c in g]) for g in lists))
