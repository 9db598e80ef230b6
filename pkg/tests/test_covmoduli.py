from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from gwconics import covmoduli as cm
from gwconics.covmoduli import DiscriminantPoint, QuadraticPencil, StabilityClass, ZeroPencilError
from gwconics.exactpoly import BiForm

rats = st.fractions(min_value=-6, max_value=6, max_denominator=5)
triples = st.lists(rats, min_size=3, max_size=3)
pencils = st.tuples(triples, triples).map(lambda p: QuadraticPencil.from_triples(*p))
sl2 = st.tuples(rats, rats, rats).filter(lambda x: x[0] != 0).map(
    lambda x: (x[0], x[1], x[2], (1 + x[1] * x[2]) / x[0]))


def D(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.mark.parametrize("lam,nu", [(3, 2), (Fraction(9, 4), Fraction(5, 2)), (-1, 5)])
def test_discriminants_family(lam, nu):
    P = QuadraticPencil.from_triples((0, 2, 0), (lam, 2 * nu, 1))
    assert cm.discriminants(P).as_tuple() == D((nu + 1) ** 2 - lam, 1, nu * nu - lam)


def test_discriminants_semistable_example():
    assert cm.discriminants(QuadraticPencil.from_triples((1, 0, 0), (0, 1, 0))).as_tuple() \
        == D(Fraction(1, 4), 0, Fraction(1, 4))


@given(pencils)
def test_D0_identity(P):
    p1, p2, p3 = cm._pqr(P.phi1)
    q1, q2, q3 = cm._pqr(P.phi2)
    d = cm.discriminants(P)
    assert d.D0 == d.D1 + d.D2 + 2 * p2 * q2 - (p1 * q3 + p3 * q1)


@given(pencils, rats, rats)
def test_member_discriminant_vs_direct(P, x, y):
    A, B, C = cm.member_discriminant(P)
    m = P.phi1 * x + P.phi2 * y
    a, b, c = cm._pqr(m)
    assert b * b - a * c == A * x * x + B * x * y + C * y * y


@pytest.mark.parametrize("t1,t2,expected", [
    ((1, 0, 0), (0, 2, 0), StabilityClass.STRICTLY_SEMISTABLE),
    ((1, 0, 0), (1, 0, 0), StabilityClass.UNSTABLE),
    ((0, 2, 0), (1, 0, 1), StabilityClass.STABLE),
    ((1, 2, 1), (2, 4, 2), StabilityClass.UNSTABLE),
    ((1, 0, 0), (0, 0, 0), StabilityClass.UNSTABLE),
    ((1, 0, -1), (0, 0, 0), StabilityClass.STRICTLY_SEMISTABLE),
])
def test_classify_examples(t1, t2, expected):
    assert cm.classify(QuadraticPencil.from_triples(t1, t2)) is expected


def test_zero_pencil():
    with pytest.raises(ZeroPencilError):
        cm.classify(QuadraticPencil.from_triples((0, 0, 0), (0, 0, 0)))
    with pytest.raises(ZeroPencilError):
        cm.boundary_check(DiscriminantPoint(*D(0, 0, 0)))


@pytest.mark.parametrize("d,expected", [((Fraction(1, 4), 0, Fraction(1, 4)), True),
                                        ((1, 1, -1), False), ((4, 1, 1), True), ((1, 0, 0), False)])
def test_boundary_examples(d, expected):
    assert cm.boundary_check(DiscriminantPoint(*D(*d))) is expected


def test_boundary_quadric_is_discriminant_of_member_form():
    d0, d1, d2 = sympy.symbols("D0 D1 D2")
    quadric = d0**2 + d1**2 + d2**2 - 2*d0*d1 - 2*d1*d2 - 2*d2*d0
    assert sympy.expand((d0 - d1 - d2) ** 2 - 4 * d1 * d2 - quadric) == 0


@settings(max_examples=100)
@given(pencils, sl2)
def test_sl2_invariance(P, g):
    assume(not P.is_zero())
    Q = P.substitute(*g)
    assert cm.discriminants(Q) == cm.discriminants(P)
    assert cm.classify(Q) is cm.classify(P)


@given(pencils, st.tuples(rats, rats, rats, rats))
def test_gl2_scaling_by_det_squared(P, g):
    a, b, c, d = g
    det = a * d - b * c
    assume(det != 0)
    before = cm.discriminants(P).as_tuple()
    after = cm.discriminants(P.substitute(a, b, c, d)).as_tuple()
    assert after == tuple(x * det * det for x in before)


@given(pencils, st.tuples(rats, rats, rats, rats))
def test_w_side_basis_change_keeps_class(P, g):
    a, b, c, d = g
    assume(a * d - b * c != 0 and not P.is_zero())
    assert cm.classify(P.change_basis(a, b, c, d)) is cm.classify(P)


@settings(max_examples=100)
@given(st.tuples(rats, rats), triples, rats)
def test_boundary_iff_strictly_semistable(root, cofactor, lam):
    # pencils sharing the root (r1:r2) are never stable; random ones usually are
    r1, r2 = root
    assume((r1, r2) != (0, 0))
    lin = BiForm(1, [-r1, r2])  # vanishes at (s:t) = (r1:r2)
    other = BiForm(1, cofactor[:2])
    P = QuadraticPencil(lin * other, lin * BiForm(1, [cofactor[2], lam]))
    assume(not P.is_zero())
    cls = cm.classify(P)
    if cls is StabilityClass.UNSTABLE:
        return
    assert cls is StabilityClass.STRICTLY_SEMISTABLE
    assert cm.boundary_check(cm.discriminants(P))


@settings(max_examples=100)
@given(pencils)
def test_boundary_matches_class_random(P):
    assume(not P.is_zero())
    cls = cm.classify(P)
    if cls is StabilityClass.UNSTABLE:
        return
    assert cm.boundary_check(cm.discriminants(P)) == (cls is StabilityClass.STRICTLY_SEMISTABLE)


@pytest.mark.parametrize("a1,a2,b1,b2", [(a1, a2, b1, b2) for a1 in (-2, 1, 3) for a2 in (0, 1, Fraction(1, 2))
                                          for b1 in (0, 2) for b2 in (-1, Fraction(5, 3))])
def test_ramification_formulas(a1, a2, b1, b2):
    if a1 * b2 - a2 * b1 == 0:
        with pytest.raises(ValueError):
            cm.ramification_to_pencil((a1, a2), (b1, b2))
        return
    P = cm.ramification_to_pencil((a1, a2), (b1, b2))
    a1, a2, b1, b2 = (Fraction(x) for x in (a1, a2, b1, b2))
    assert cm.discriminants(P).as_tuple() == (
        (a1 + a2) * (b1 + b2), a1 * b1, a2 * b2)


def test_ramification_points_via_wronskian():
    P = cm.ramification_to_pencil((1, 0), (0, 1))
    assert cm.discriminants(P).as_tuple() == D(1, 0, 0)
    w = cm.wronskian(P)
    # branch (1:0), (0:1) in the w-line; ramification at s = 0 and t = 0
    assert w.coeff(1, 1) != 0 and w.coeff(2, 0) == 0 and w.coeff(0, 2) == 0


def test_ramification_symbolic():
    a1, a2, b1, b2, s, t = sympy.symbols("a1 a2 b1 b2 s t")
    phi1, phi2 = b1 * s**2 - a1 * t**2, b2 * s**2 - a2 * t**2
    phi0 = -(phi1 + phi2)

    def disc(f):
        p = sympy.Poly(f, s, t)
        return sympy.expand((p.coeff_monomial(s * t) / 2) ** 2
                            - p.coeff_monomial(s**2) * p.coeff_monomial(t**2))
    assert disc(phi1) == sympy.expand(a1 * b1)
    assert disc(phi0) == sympy.expand((a1 + a2) * (b1 + b2))


def test_coincident_points():
    with pytest.raises(ValueError):
        cm.ramification_to_pencil((1, 2), (2, 4))


@pytest.mark.parametrize("lam,nu", [(3, 2), (Fraction(9, 4), Fraction(5, 2)), (-3, 1), (8, 3),
                                    (Fraction(-3, 4), Fraction(1, 2)), (15, 4)])
def test_half_twist(lam, nu):
    r = cm.half_twist(lam, nu)
    assert r.holds
    lam, nu = Fraction(lam), Fraction(nu)
    assert r.p == lam / (nu * nu - lam) ** 2 and r.q == nu / (nu * nu - lam)


def test_half_twist_preconditions():
    with pytest.raises(ValueError):
        cm.half_twist(2, 1)  # nu^2 - lam = -1
    with pytest.raises(ValueError):
        cm.half_twist(4, 2)  # nu^2 - lam = 0
    with pytest.raises(ValueError):
        cm.half_twist(0, 1)


@settings(max_examples=25, deadline=None)
@given(rats, rats)
def test_half_twist_squared(lam, nu):
    assume(lam != 0 and nu * nu != lam)
    assert cm.half_twist_squared(lam, nu)


def test_half_twist_symbolic_oracle():
    lam, nu = sympy.Rational(3), sympy.Rational(2)
    u, v = sympy.symbols("u v")
    d = sympy.sqrt(nu**2 - lam)
    alpha, beta = -nu - d, -nu + d
    c2 = 2 * alpha / (beta - alpha) ** 4
    S = 2 * u - (beta - alpha) ** 2 / (2 * alpha) * v
    T = 2 * beta * u - (beta - alpha) ** 2 / 2 * v
    assert sympy.expand(c2 * (lam * S**2 + 2 * nu * S * T + T**2)) == 2 * u * v
    p = lam / (nu**2 - lam) ** 2
    assert sympy.expand(p * u**2 - v**2 + c2 * (lam * S**2 - T**2) / d) == 0


def test_json_shape():
    P = QuadraticPencil.from_triples((1, 0, 0), (0, 1, 0))
    assert P.to_json() == {"phi1": ["1", "0", "0"], "phi2": ["0", "1", "0"]}
    assert cm.discriminants(P).to_json() == ["1/4", "0", "1/4"]
