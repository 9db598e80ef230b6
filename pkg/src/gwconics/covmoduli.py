"""Double covers of a line: pencils of binary quadratics ``(phi1, phi2)``,
their discriminant coordinates, GIT stability, the boundary conic, branch
points, and the transition identity behind the half-twist sheaf.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .exactpoly import BiForm, NumberField, rat, rat_str, resultant
from .linalg import rank


class ZeroPencilError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticPencil:
    phi1: BiForm
    phi2: BiForm

    def __post_init__(self):
        if self.phi1.degree != 2 or self.phi2.degree != 2:
            raise ValueError("pencil members must be binary quadratics")

    @classmethod
    def from_triples(cls, t1: Sequence, t2: Sequence) -> "QuadraticPencil":
        """From ``(a, b, c)`` triples meaning ``a s^2 + b st + c t^2``."""
        return cls(BiForm.from_st_triple([rat(x) for x in t1]),
                   BiForm.from_st_triple([rat(x) for x in t2]))

    def is_zero(self) -> bool:
        return self.phi1.is_zero() and self.phi2.is_zero()

    @property
    def rank(self) -> int:
        return rank([list(self.phi1.coeffs), list(self.phi2.coeffs)])

    def substitute(self, a, b, c, d) -> "QuadraticPencil":
        """Act on ``U``: ``s -> a s + b t``, ``t -> c s + d t``."""
        s_new = BiForm(1, [b, a])
        t_new = BiForm(1, [d, c])
        return QuadraticPencil(self.phi1.compose(s_new, t_new), self.phi2.compose(s_new, t_new))

    def change_basis(self, a, b, c, d) -> "QuadraticPencil":
        """Act on ``W``: ``(phi1, phi2) -> (a phi1 + b phi2, c phi1 + d phi2)``."""
        return QuadraticPencil(self.phi1 * a + self.phi2 * b, self.phi1 * c + self.phi2 * d)

    def to_json(self) -> dict:
        return {"phi1": [rat_str(x) for x in self.phi1.st_triple()],
                "phi2": [rat_str(x) for x in self.phi2.st_triple()]}


@dataclass(frozen=True)
class DiscriminantPoint:
    D0: Fraction
    D1: Fraction
    D2: Fraction

    def is_zero(self) -> bool:
        return self.D0 == 0 and self.D1 == 0 and self.D2 == 0

    def as_tuple(self) -> tuple:
        return (self.D0, self.D1, self.D2)

    def projectively_equal(self, other: "DiscriminantPoint") -> bool:
        a, b = self.as_tuple(), other.as_tuple()
        return rank([list(a), list(b)]) <= 1 and (self.is_zero() == other.is_zero())

    def to_json(self) -> list[str]:
        return [rat_str(x) for x in self.as_tuple()]


class StabilityClass(str, Enum):
    UNSTABLE = "unstable"
    STRICTLY_SEMISTABLE = "strictly_semistable"
    STABLE = "stable"


def _pqr(f: BiForm) -> tuple:
    """``(p1, p2, p3)`` with ``f = p1 s^2 + 2 p2 st + p3 t^2``."""
    a, b, c = f.st_triple()
    return a, b / 2, c


def discriminants(pencil: QuadraticPencil) -> DiscriminantPoint:
    p1, p2, p3 = _pqr(pencil.phi1)
    q1, q2, q3 = _pqr(pencil.phi2)
    r1, r2, r3 = -(p1 + q1), -(p2 + q2), -(p3 + q3)
    return DiscriminantPoint(r2 * r2 - r1 * r3, p2 * p2 - p1 * p3, q2 * q2 - q1 * q3)


def member_discriminant(pencil: QuadraticPencil) -> tuple:
    """Coefficients ``(A, B, C)`` of ``disc(x phi1 + y phi2) = A x^2 + B xy + C y^2``."""
    D = discriminants(pencil)
    return D.D1, D.D0 - D.D1 - D.D2, D.D2


def base_point_free(pencil: QuadraticPencil) -> bool:
    return resultant(pencil.phi1, pencil.phi2) != 0


def classify(pencil: QuadraticPencil) -> StabilityClass:
    """GIT class under SL(U).

    Unstable iff every member has a double root, i.e. the member discriminant
    vanishes identically; stable iff semistable and base-point free.
    """
    if pencil.is_zero():
        raise ZeroPencilError("zero pencil")
    if all(x == 0 for x in member_discriminant(pencil)):
        return StabilityClass.UNSTABLE
    if base_point_free(pencil):
        return StabilityClass.STABLE
    return StabilityClass.STRICTLY_SEMISTABLE


def boundary_value(D: DiscriminantPoint) -> Fraction:
    D0, D1, D2 = D.as_tuple()
    return D0 * D0 + D1 * D1 + D2 * D2 - 2 * D0 * D1 - 2 * D1 * D2 - 2 * D2 * D0


def boundary_check(D: DiscriminantPoint) -> bool:
    """Is ``(D0:D1:D2)`` on the conic of strictly semistable covers?"""
    if D.is_zero():
        raise ZeroPencilError("discriminant triple is zero (unstable pencil)")
    return boundary_value(D) == 0


def ramification_to_pencil(P: Sequence, Q: Sequence) -> QuadraticPencil:
    """The double cover branched over ``P = (a1:a2)`` and ``Q = (b1:b2)``.

    ``phi1 = b1 s^2 - a1 t^2``, ``phi2 = b2 s^2 - a2 t^2``.
    """
    a1, a2 = (rat(x) for x in P)
    b1, b2 = (rat(x) for x in Q)
    if (a1 == 0 and a2 == 0) or (b1 == 0 and b2 == 0):
        raise ValueError("zero vector is not a point of P^1")
    if a1 * b2 - a2 * b1 == 0:
        raise ValueError("branch points coincide")
    return QuadraticPencil(BiForm.from_st_triple([b1, 0, -a1]),
                           BiForm.from_st_triple([b2, 0, -a2]))


def wronskian(pencil: QuadraticPencil) -> BiForm:
    """Jacobian determinant of ``(phi1, phi2)``; vanishes at the ramification points."""
    f, g = pencil.phi1, pencil.phi2
    return f.diff_s() * g.diff_t() - f.diff_t() * g.diff_s()


# ---------------------------------------------------------------------------
# half-twist transition identity

def _is_square(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class HalfTwistResult:
    holds: bool
    squared_holds: bool
    p: Fraction
    q: Fraction
    phi1_uv: BiForm
    phi2_uv: BiForm
    gen_uv: BiForm


def _half_twist_core(lam: Fraction, nu: Fraction, delta) -> HalfTwistResult:
    # delta is a square root of nu^2 - lam, rational or in a quadratic field
    alpha, beta = -nu - delta, -nu + delta
    gap = beta - alpha
    c2 = 2 * alpha / gap ** 4
    s_uv = BiForm(1, [-gap ** 2 / (2 * alpha), 2])  # coefficients of (v, u)
    t_uv = BiForm(1, [-gap ** 2 / 2, 2 * beta])

    def pull(f: BiForm) -> BiForm:
        return f.compose(s_uv, t_uv) * c2

    phi1 = BiForm.from_st_triple([0, 2, 0])
    phi2 = BiForm.from_st_triple([lam, 2 * nu, 1])
    gen = BiForm.from_st_triple([lam, 0, -1])
    p = lam / (nu * nu - lam) ** 2
    q = nu / (nu * nu - lam)
    phi1_uv, phi2_uv, gen_uv = pull(phi1), pull(phi2), pull(gen)
    target = BiForm.from_st_triple([p, 0, -1])
    D = discriminants(QuadraticPencil(phi1, phi2))
    pencil_ok = (phi2_uv - BiForm.from_st_triple([0, 2, 0])).is_zero() and (
        phi1_uv - BiForm.from_st_triple([p, 2 * q, 1])).is_zero()
    holds = pencil_ok and (target + gen_uv * (1 / delta)).is_zero()
    squared = pencil_ok and (target * target - gen_uv * gen_uv * (D.D1 / D.D2)).is_zero()
    return HalfTwistResult(holds, squared, p, q, phi1_uv, phi2_uv, gen_uv)


def half_twist(lam, nu) -> HalfTwistResult:
    """Change chart from ``phi1 = 2st`` to ``phi2 = 2uv`` for the pencil
    ``(2st, lam s^2 + 2 nu st + t^2)`` and compare the generators of the
    quotient line in both charts.

    With ``alpha, beta = -nu -+ d`` (``d^2 = nu^2 - lam``) the substitution
    ``s = c (2u - (beta-alpha)^2/(2 alpha) v)``, ``t = c (2 beta u - (beta-alpha)^2/2 v)``,
    ``c^2 = 2 alpha/(beta-alpha)^4`` sends ``phi2`` to ``2uv`` and ``phi1`` to
    ``p u^2 + 2q uv + v^2``.  Only ``c^2`` enters a quadratic form.

    ``holds`` checks ``p u^2 - v^2 = -(1/d) (lam s^2 - t^2)`` with ``1/d = sqrt(D1/D2)``.
    Requires ``d`` rational.
    """
    lam, nu = rat(lam), rat(nu)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    delta = _is_square(nu * nu - lam)
    if delta is None or delta == 0:
        raise ValueError("nu^2 - lambda must be a nonzero rational square")
    return _half_twist_core(lam, nu, delta)


def half_twist_identity(lam, nu) -> bool:
    return half_twist(lam, nu).holds


def half_twist_squared(lam, nu) -> bool:
    """``(p u^2 - v^2)^2 = (D1/D2) (lam s^2 - t^2)^2`` after the chart change.

    Works for any ``lam != 0``, ``nu^2 != lam``: the chart change is carried
    out over ``Q[d]/(d^2 - (nu^2 - lam))`` and the squared identity is rational.
    """
    lam, nu = rat(lam), rat(nu)
    disc = nu * nu - lam
    if lam == 0 or disc == 0:
        raise ValueError("need lambda != 0 and nu^2 != lambda")
    root = _is_square(disc)
    if root is not None:
        delta = root
    else:
        delta = NumberField([-disc, 0, 1], "d").gen()
    return _half_twist_core(lam, nu, delta).squared_holds
