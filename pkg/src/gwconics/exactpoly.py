"""Exact coefficient arithmetic: rationals, simple number fields, dense
univariate polynomials, binary forms and sparse multivariate polynomials.

Rationals are plain :class:`fractions.Fraction` values.  Everything else in
this module is immutable once constructed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    """Operands live over different coefficient fields."""


class ZeroDivisorError(ZeroDivisionError):
    """Inversion hit a zero divisor (modulus not irreducible, or element is 0)."""


# ---------------------------------------------------------------------------
# rationals

def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    """Serialize as ``"p/q"``, dropping ``q`` when it is 1."""
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_integer(x) -> bool:
    return Fraction(x).denominator == 1


# ---------------------------------------------------------------------------
# number fields Q[t]/(m(t))

def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _qpoly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    b = list(_trim(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = list(_trim(a))
    return q, a


class NumberField:
    """The quotient ring Q[t]/(m(t)) for a monic modulus ``m``.

    Irreducibility of ``m`` is not checked; inverting a zero divisor raises
    :class:`ZeroDivisorError`.
    """

    __slots__ = ("modulus", "name")

    def __init__(self, modulus: Sequence, name: str = "t"):
        m = tuple(rat(c) for c in _trim(rat(c) for c in modulus))
        if len(m) < 2:
            raise ValueError("modulus must have degree >= 1")
        if m[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = m
        self.name = name

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self):
        return f"NumberField({[rat_str(c) for c in self.modulus]})"

    def __call__(self, coeffs) -> "NFElem":
        if isinstance(coeffs, NFElem):
            if coeffs.field != self:
                raise FieldMismatchError("element belongs to another field")
            return coeffs
        if isinstance(coeffs, (int, Fraction, str)):
            coeffs = [coeffs]
        return NFElem(self, coeffs)

    def gen(self) -> "NFElem":
        return NFElem(self, [0, 1])

    def zero(self) -> "NFElem":
        return NFElem(self, [])

    def one(self) -> "NFElem":
        return NFElem(self, [1])

    def to_json(self) -> dict:
        return {"modulus": [rat_str(c) for c in self.modulus]}


class NFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable):
        c = [rat(x) for x in coeffs]
        if len(c) > field.degree:
            _, c = _qpoly_divmod(c, field.modulus)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _trim(c))

    def __setattr__(self, *_):
        raise AttributeError("NFElem is immutable")

    def _coerce(self, other) -> "NFElem | None":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatchError("elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return NFElem(self.field, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (n - len(o.coeffs))
        return NFElem(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, [-x for x in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, _qpoly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if not self.coeffs:
            raise ZeroDivisorError("inverse of zero")
        # extended Euclid: track s with s*self = r (mod m)
        r0, r1 = list(self.field.modulus), list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _qpoly_divmod(r0, r1)
            qs = _qpoly_mul(q, s1)
            n = max(len(s0), len(qs))
            s_next = [(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0) for i in range(n)]
            r0, r1 = r1, r
            s0, s1 = s1, list(_trim(s_next))
        if len(r0) != 1:
            raise ZeroDivisorError(f"{self!r} is a zero divisor modulo {self.field!r}")
        return NFElem(self.field, [x / r0[0] for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except FieldMismatchError:
            return False
        return o is not None and self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(rat_str(c) if i == 0 else f"{rat_str(c)}*{self.field.name}^{i}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"coeffs": [rat_str(c) for c in self.coeffs], **self.field.to_json()}


def field_of(x) -> NumberField | None:
    return x.field if isinstance(x, NFElem) else None


def common_field(values: Iterable) -> NumberField | None:
    """The single number field among ``values`` (``None`` for Q)."""
    found = None
    for v in values:
        f = field_of(v)
        if f is None:
            continue
        if found is None:
            found = f
        elif f != found:
            raise FieldMismatchError("mixed number fields")
    return found


def coeff_from_json(obj, field: NumberField | None = None):
    """Parse a coefficient: ``"p/q"``, an int, or a list of ``"p/q"`` for a field element."""
    if isinstance(obj, list):
        if field is None:
            raise ValueError("list coefficient requires a number field")
        return field([rat(c) for c in obj])
    if isinstance(obj, dict):
        fld = NumberField([rat(c) for c in obj["modulus"]])
        if field is not None and fld != field:
            raise FieldMismatchError("coefficient field differs from declared field")
        return fld([rat(c) for c in obj["coeffs"]])
    return rat(obj)


def coeff_to_json(x):
    return x.to_json()["coeffs"] if isinstance(x, NFElem) else rat_str(x)


# ---------------------------------------------------------------------------
# dense univariate polynomials

class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first.

    Coefficients are Fractions or elements of one :class:`NumberField`.
    The zero polynomial has degree ``-1``.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable = ()):
        c = []
        for x in coeffs:
            c.append(x if isinstance(x, NFElem) else rat(x))
        object.__setattr__(self, "field", common_field(c))
        object.__setattr__(self, "coeffs", _trim(c))

    def __setattr__(self, *_):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "UniPoly"):
        if self.field is not None and other.field is not None and self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    def _lift(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, NFElem)) and not isinstance(other, bool):
            return UniPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        return UniPoly(c * x for x in self.coeffs)

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = UniPoly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute(self, q: "UniPoly") -> "UniPoly":
        """Composition ``self(q(z))`` by Horner's rule."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, UniPoly) else other
        return isinstance(o, UniPoly) and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def __repr__(self):
        return f"UniPoly({[coeff_to_json(c) for c in self.coeffs]})"


def substitute(p: UniPoly, q: UniPoly) -> UniPoly:
    return p.substitute(q)


# ---------------------------------------------------------------------------
# binary forms in (s, t)

class BiForm:
    """Homogeneous form of fixed degree in ``(s, t)``.

    ``coeffs[i]`` is the coefficient of ``s**i * t**(degree - i)``.
    """

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree: int, coeffs: Iterable | None = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        c = [] if coeffs is None else [x if isinstance(x, NFElem) else rat(x) for x in coeffs]
        if len(c) > degree + 1:
            if any(x != 0 for x in c[degree + 1:]):
                raise ValueError(f"too many coefficients for degree {degree}")
            c = c[: degree + 1]
        c = c + [Fraction(0)] * (degree + 1 - len(c))
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "field", common_field(c))
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *_):
        raise AttributeError("BiForm is immutable")

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BiForm":
        """``c * s**i * t**j``."""
        coeffs = [Fraction(0)] * (i + j + 1)
        coeffs[i] = c if isinstance(c, NFElem) else rat(c)
        return cls(i + j, coeffs)

    @classmethod
    def s(cls) -> "BiForm":
        return cls.monomial(1, 0)

    @classmethod
    def t(cls) -> "BiForm":
        return cls.monomial(0, 1)

    @classmethod
    def from_st_triple(cls, triple: Sequence) -> "BiForm":
        """Quadratic ``a s^2 + b st + c t^2`` from ``(a, b, c)``."""
        a, b, c = triple
        return cls(2, [c, b, a])

    def st_triple(self) -> tuple:
        if self.degree != 2:
            raise ValueError("not a quadratic form")
        return (self.coeffs[2], self.coeffs[1], self.coeffs[0])

    def coeff(self, i: int, j: int):
        """Coefficient of ``s**i t**j``."""
        if i + j != self.degree or i < 0 or j < 0:
            return Fraction(0)
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def _check(self, other: "BiForm"):
        if self.field is not None and other.field is not None and self.field != other.field:
            raise FieldMismatchError("binary forms over different fields")

    def __add__(self, other: "BiForm") -> "BiForm":
        if not isinstance(other, BiForm):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError("adding binary forms of different degrees")
        return BiForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BiForm":
        return BiForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiForm):
            return biform_mul(self, other)
        if isinstance(other, (int, Fraction, NFElem)) and not isinstance(other, bool):
            return BiForm(self.degree, [other * c for c in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, NFElem)) and not isinstance(other, bool):
            return BiForm(self.degree, [other * c for c in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int) -> "BiForm":
        if n < 0:
            raise ValueError("negative power")
        out = BiForm(0, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, s, t):
        acc = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * s ** i * t ** (self.degree - i)
        return acc

    def diff_s(self) -> "BiForm":
        if self.degree == 0:
            return BiForm(0)
        return BiForm(self.degree - 1, [i * self.coeffs[i] for i in range(1, self.degree + 1)])

    def diff_t(self) -> "BiForm":
        if self.degree == 0:
            return BiForm(0)
        d = self.degree
        return BiForm(d - 1, [(d - i) * self.coeffs[i] for i in range(d)])

    def compose(self, phi1: "BiForm", phi2: "BiForm") -> "BiForm":
        return biform_compose(self, phi1, phi2)

    def dehomogenize(self) -> UniPoly:
        """Polynomial in ``x = s/t`` (i.e. ``t = 1``)."""
        return UniPoly(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("BiForm", self.degree, self.coeffs))

    def __repr__(self):
        terms = []
        d = self.degree
        for i in range(d, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "*".join(p for p in (
                "" if i == 0 else ("s" if i == 1 else f"s^{i}"),
                "" if d - i == 0 else ("t" if d - i == 1 else f"t^{d - i}"),
            ) if p)
            cs = coeff_to_json(c) if not isinstance(c, NFElem) else f"({c!r})"
            terms.append(f"{cs}*{mono}" if mono else f"{cs}")
        return f"BiForm[{d}](" + (" + ".join(terms) or "0") + ")"

    def to_json(self):
        return [coeff_to_json(c) for c in self.coeffs]


def biform_mul(f: BiForm, g: BiForm) -> BiForm:
    f._check(g)
    out = [Fraction(0)] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            if b != 0:
                out[i + j] = out[i + j] + a * b
    return BiForm(f.degree + g.degree, out)


def biform_compose(f: BiForm, phi1: BiForm, phi2: BiForm) -> BiForm:
    """Pull ``f`` back along ``(s, t) -> (phi1, phi2)``: returns ``f(phi1, phi2)``."""
    if phi1.degree != phi2.degree:
        raise ValueError("compose needs phi1, phi2 of equal degree")
    e = phi1.degree
    deg = f.degree * e
    p1_pows = [BiForm(0, [1])]
    p2_pows = [BiForm(0, [1])]
    for _ in range(f.degree):
        p1_pows.append(p1_pows[-1] * phi1)
        p2_pows.append(p2_pows[-1] * phi2)
    acc = BiForm(deg)
    for i, c in enumerate(f.coeffs):
        if c != 0:
            acc = acc + (p1_pows[i] * p2_pows[f.degree - i]) * c
    return acc


def resultant(f: BiForm, g: BiForm):
    """Sylvester resultant of two binary forms; zero iff they share a root on P^1."""
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    # coefficients in descending powers of s
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    from .linalg import determinant
    return determinant(rows)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials (hypersurface equations)

class MPoly:
    """Sparse polynomial in ``x_1..x_n``: map from exponent tuples to coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | Iterable = ()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple, object] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = c if isinstance(c, NFElem) else rat(c)
            acc[exps] = acc.get(exps, Fraction(0)) + c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", {e: c for e, c in acc.items() if c != 0})

    def __setattr__(self, *_):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def from_pairs(cls, pairs: Sequence) -> "MPoly":
        """From ``[(exponent_vector, coeff), ...]``."""
        pairs = list(pairs)
        if not pairs:
            raise ValueError("empty polynomial needs an explicit variable count")
        return cls(len(pairs[0][0]), pairs)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def diff(self, i: int) -> "MPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ee = list(e)
                ee[i] -= 1
                out[tuple(ee)] = e[i] * c
        return MPoly(self.nvars, out)

    def on_line(self, p: Sequence, q: Sequence) -> BiForm:
        """Restrict to the line ``x = s*p + t*q`` as a binary form."""
        if len(p) != self.nvars or len(q) != self.nvars:
            raise ValueError("parametrization has wrong length")
        d = self.degree()
        if d < 0:
            return BiForm(0)
        lin = [BiForm(1, [q[i], p[i]]) for i in range(self.nvars)]
        cache: dict[tuple[int, int], BiForm] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = lin[i] ** e
            return cache[key]

        acc = BiForm(d)
        for e, c in self.terms.items():
            term = BiForm(0, [c])
            for i, ei in enumerate(e):
                if ei:
                    term = term * power(i, ei)
            acc = acc + term
        return acc

    def to_pairs(self) -> list:
        return [[list(e), coeff_to_json(c)] for e, c in sorted(self.terms.items())]

    def __repr__(self):
        return f"MPoly({self.nvars}, {len(self.terms)} terms)"
