from __future__ import annotations

from fractions import Fraction

import pytest

from gwconics import dcover, grassmann as gr
from gwconics.dcover import DimensionError, GWSource, MissingInvariantError
from gwconics.grassmann import SymClass
from gwconics.vsc import RangeError, build_table

PAIRS = [(N, k) for N in range(4, 10) for k in range(N, 2 * N - 4)]


@pytest.mark.parametrize("N,k", PAIRS)
def test_class_equals_proof_form(N, k):
    assert dcover.contribution_class(N, k).value == dcover.proof_form_class(N, k)


def test_class_codim_and_small_cases():
    c = dcover.contribution_class(5, 5)
    assert c.codim == 0 and c.value == SymClass.constant(Fraction(1, 8))
    assert dcover.contribution_class(6, 5).value.is_zero()
    c67 = dcover.contribution_class(6, 7).value
    assert c67.homogeneous_codim() == 1
    # (1/8)(c1(S^6 Q) + c1/2) = (1/8)(21 + 1/2) e1
    assert c67 == SymClass.e1() * Fraction(43, 16)


def test_quintic_decomposition():
    rep = dcover.decompose2(5, 5, 1, 1, 1)
    assert rep.gw == 4876875
    assert rep.dcover_term == 2875
    assert rep.conic_count == 4874000
    assert rep.unweighted_conics == 609250
    assert rep.gw_source is GWSource.MIRROR


def test_degree1_matches_line_count():
    assert dcover.degree1_invariant(5, 5, (1, 1, 1)) == 2875
    assert dcover.degree1_invariant(4, 3, ()) == 27


@pytest.mark.parametrize("N,k", [(N, k) for N in range(5, 10) for k in range(N + 1, 2 * N - 4)])
def test_integrality_grid(N, k):
    t = build_table(N, k, 2)
    for abc in dcover.divisor_triples(N, k):
        rep = dcover.decompose2(N, k, *abc, table=t)
        assert (rep.gw * 2 ** (k - N)).denominator == 1
        assert rep.conic_count.denominator == 1
        assert rep.conic_count >= 0


def test_frozen_7_8():
    rep = dcover.decompose2(7, 8, 1, 1, 1)
    assert rep.conic_count == 172430273462272


@pytest.mark.parametrize("N,k", [(6, 7), (7, 9), (8, 10)])
def test_insertion_symmetry(N, k):
    for a, b, c in dcover.divisor_triples(N, k):
        base = dcover.decompose2(N, k, a, b, c)
        for perm in ((b, a, c), (c, b, a)):
            assert dcover.decompose2(N, k, *perm).to_json()["conics"] == base.to_json()["conics"]


def test_user_supplied_gw():
    rep = dcover.decompose2(7, 8, 1, 1, 1, gw=Fraction(7))
    assert rep.gw_source is GWSource.USER
    assert rep.conic_count == 7 - rep.dcover_term


def test_errors():
    with pytest.raises(DimensionError):
        dcover.decompose2(5, 5, 1, 1, 2)
    with pytest.raises(MissingInvariantError):
        dcover.decompose2(8, 8, 2, 2, 2)
    with pytest.raises(RangeError):
        dcover.degree1_invariant(5, 5, (0, 1, 1))
    with pytest.raises(DimensionError):
        dcover.degree1_invariant(5, 5, (2,))
    assert dcover.degree1_invariant(5, 5, (1,), SymClass.zero()) == 0


def test_report_json_keys():
    js = dcover.decompose2(5, 5, 1, 1, 1).to_json()
    assert {"gw", "dcover", "conics", "provenance", "conics_unweighted"} <= set(js)
    assert js["provenance"]["gw_source"] == "mirror"
    assert "read as m" in js["provenance"]["formula_note"]


def test_s2q_segre_route_matches_direct():
    # the (1 - c1/2)^-1 factor equals c(Q^vee)/c(S^2Q) twisted by (-1/2)^j up to codim 6
    cS2 = gr.chern_sym_power(2)
    lhs = SymClass.zero()
    seg = gr.segre(cS2, 3, 6)
    for j in range(7):
        lhs = lhs + gr.graded_part(seg, j) * Fraction(-1, 2) ** j
    lhs = lhs.mul(gr.chern_dual(), cutoff=6)
    assert lhs == gr.inverse_series(SymClass.one() - SymClass.e1() / 2, 6)
