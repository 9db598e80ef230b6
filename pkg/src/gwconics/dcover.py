"""Double covers of lines: the contribution class of a degree-2 cover, degree-1
Schubert integrals on G(2, N), and the split of a degree-2 three-point
invariant into conics plus the double-cover term.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from . import grassmann as gr
from .exactpoly import rat_str
from .grassmann import SymClass
from .vsc import RangeError, VSCTable, gw2_3pt, m_for_insertions


class DimensionError(ValueError):
    """The integrand does not have the dimension of G(2, N)."""


class MissingInvariantError(ValueError):
    """No divisor insertion and no supplied GW value: nothing to decompose."""


@dataclass(frozen=True)
class ContributionClass:
    N: int
    k: int
    value: SymClass

    @property
    def codim(self) -> int:
        return self.k - self.N


def contribution_class(N: int, k: int) -> ContributionClass:
    """``(1/8) [c(S^{k-1} Q) / (1 - c1(Q)/2)]_{k-N}``; zero when ``k < N``."""
    r = k - N
    if r < 0:
        return ContributionClass(N, k, SymClass.zero())
    denom = SymClass.one() - SymClass.e1() * Fraction(1, 2)
    q = gr.series_quotient(gr.chern_sym_power(k - 1), denom, r)
    return ContributionClass(N, k, gr.graded_part(q, r) * Fraction(1, 8))


def proof_form_class(N: int, k: int) -> SymClass:
    """``(1/8) sum_j c_{k-N-j}(S^{k-1}Q + Q^vee) s_j(S^2 Q) (-1/2)^j``.

    Whitney product for the direct sum, Segre classes from the inverse of
    ``c(S^2 Q)``; no series division by ``1 - c1/2`` is involved.
    """
    r = k - N
    if r < 0:
        return SymClass.zero()
    whitney = gr.chern_sym_power(k - 1).mul(gr.chern_dual(), cutoff=r)
    seg = gr.segre(gr.chern_sym_power(2), 3, r)
    acc = SymClass.zero()
    for j in range(r + 1):
        acc = acc + gr.graded_part(whitney, r - j) * gr.graded_part(seg, j) * Fraction(-1, 2) ** j
    return acc * Fraction(1, 8)


def degree1_invariant(N: int, k: int, insertions: Sequence[int],
                      extra: SymClass | None = None) -> Fraction:
    """``int_{G(2,N)} c_top(S^k Q) * extra * prod_i sigma_{a_i - 1}``.

    ``extra`` must be homogeneous (or zero, which integrates to 0 without a
    dimension check).  Insertion codimensions must lie in ``[1, N-2]``.
    """
    if extra is None:
        extra = SymClass.one()
    for a in insertions:
        if not 1 <= a <= N - 2:
            raise RangeError(f"insertion codimension {a} outside [1, {N - 2}]")
    if extra.is_zero():
        return Fraction(0)
    ec = extra.homogeneous_codim()
    if ec is None:
        raise DimensionError("extra class is not homogeneous")
    total = (k + 1) + ec + sum(a - 1 for a in insertions)
    if total != 2 * (N - 2):
        raise DimensionError(
            f"integrand has codim {total}, dim G(2,{N}) is {2 * (N - 2)}")
    integrand = gr.c_top_sym_power(k) * extra
    for a in insertions:
        integrand = integrand * gr.sigma(a - 1)
    return gr.integrate(integrand, N)


class GWSource(str, Enum):
    MIRROR = "mirror"
    USER = "user-supplied"


@dataclass(frozen=True)
class DecompositionReport:
    N: int
    k: int
    a: int
    b: int
    c: int
    gw: Fraction
    dcover_term: Fraction
    conic_count: Fraction
    gw_source: GWSource

    @property
    def unweighted_conics(self) -> Fraction | None:
        # only meaningful for three divisor insertions, where each conic is hit 2*2*2 times
        if (self.a, self.b, self.c) == (1, 1, 1):
            return self.conic_count / 8
        return None

    def to_json(self) -> dict:
        out = {
            "N": self.N, "k": self.k, "abc": [self.a, self.b, self.c],
            "gw": rat_str(self.gw),
            "dcover": rat_str(self.dcover_term),
            "conics": rat_str(self.conic_count),
            "provenance": {"gw_source": self.gw_source.value},
        }
        if self.unweighted_conics is not None:
            out["conics_unweighted"] = rat_str(self.unweighted_conics)
            out["provenance"]["note"] = (
                "conics_unweighted = conics/8 for three divisor insertions; "
                "a convenience normalization, not part of the decomposition")
        if self.gw_source is GWSource.MIRROR:
            out["provenance"]["formula_note"] = (
                "degree-2 mirror formula evaluated with its right-hand index read as m")
        return out


def degree2_dimension_ok(N: int, k: int, a: int, b: int, c: int) -> bool:
    return a + b + c == (N - 2) + 2 * (N - k)


def decompose2(N: int, k: int, a: int, b: int, c: int, gw: Fraction | None = None,
               table: VSCTable | None = None) -> DecompositionReport:
    """Split ``<O_{e^a} O_{e^b} O_{e^c}>_{0,2}`` into conics plus double covers."""
    if not degree2_dimension_ok(N, k, a, b, c):
        raise DimensionError(f"a+b+c = {a + b + c}, need {(N - 2) + 2 * (N - k)}")
    for x in (a, b, c):
        if not 1 <= x <= N - 2:
            raise RangeError(f"insertion codimension {x} outside [1, {N - 2}]")
    source = GWSource.USER
    if gw is None:
        ins = sorted((a, b, c))
        if ins[0] != 1:
            raise MissingInvariantError(
                "no divisor insertion: supply the GW value explicitly")
        m = m_for_insertions(N, k, ins[1], ins[2])
        gw = gw2_3pt(N, k, m, table=table, allow_out_of_range=True)
        source = GWSource.MIRROR
    else:
        gw = Fraction(gw)
    if k < N:
        dterm = Fraction(0)
    else:
        cls = contribution_class(N, k).value
        dterm = 8 * degree1_invariant(N, k, (a, b, c), cls)
    return DecompositionReport(N, k, a, b, c, gw, dterm, gw - dterm, source)


def divisor_triples(N: int, k: int) -> list[tuple[int, int, int]]:
    """All ``(1, b, c)`` with ``b <= c`` satisfying the degree-2 constraints."""
    out = []
    s = (N - 2) + 2 * (N - k) - 1
    for b in range(1, N - 1):
        c = s - b
        if b <= c <= N - 2:
            out.append((1, b, c))
    return out
