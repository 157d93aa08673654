"""Exact coefficient fields.

Every coefficient of the algebras lives in Q(v) with v = q^(1/D) for a
per-session exponent denominator D.  Two concrete realizations are provided:

* :class:`SymbolicContext` works in Q(v) itself (:class:`LaurentFrac`).
* :class:`PointContext` works in Q after specializing v to a positive
  rational ``v0``; arithmetic stays exact (gmpy2 rationals).

Both expose the same small interface (``zero``, ``one``, ``const``, ``vpow``,
``qpow``) so the algebra code is written once.  Positivity questions are only
ever decided in a point context.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

import gmpy2
from flint import fmpq, fmpq_poly

Rational = Union[int, Fraction]

_ZERO_POLY = fmpq_poly([])
_ONE_POLY = fmpq_poly([1])


def _low_order(p: fmpq_poly) -> int:
    """Multiplicity of v as a factor of the nonzero polynomial ``p``."""
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("zero polynomial")


def _to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    c = Fraction(c)
    return fmpq(c.numerator, c.denominator)


def _fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class LaurentFrac:
    """An element v^shift * num(v) / den(v) of Q(v) in canonical form.

    Canonical form: ``num`` and ``den`` are coprime, neither is divisible by
    v, ``den`` is monic.  Zero is ``(0, 0, 1)``.  Two canonical forms are
    equal iff the field elements are equal.
    """

    __slots__ = ("shift", "num", "den", "_hash")

    def __init__(self, shift: int, num: fmpq_poly, den: fmpq_poly, _canonical: bool = False):
        if not _canonical:
            shift, num, den = self._canonicalize(shift, num, den)
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _canonicalize(shift, num, den):
        if den.is_zero():
            raise ZeroDivisionError("LaurentFrac with zero denominator")
        if num.is_zero():
            return 0, _ZERO_POLY, _ONE_POLY
        k = _low_order(num)
        if k:
            num = num.right_shift(k)
            shift += k
        k = _low_order(den)
        if k:
            den = den.right_shift(k)
            shift -= k
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return shift, num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: Rational) -> "LaurentFrac":
        c = _to_fmpq(c)
        if c == 0:
            return cls(0, _ZERO_POLY, _ONE_POLY, True)
        return cls(0, fmpq_poly([c]), _ONE_POLY, True)

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> "LaurentFrac":
        c = _to_fmpq(c)
        if c == 0:
            return cls(0, _ZERO_POLY, _ONE_POLY, True)
        return cls(k, fmpq_poly([c]), _ONE_POLY, True)

    @classmethod
    def from_terms(cls, terms: dict[int, Rational]) -> "LaurentFrac":
        """Laurent polynomial sum c_k v^k."""
        terms = {k: c for k, c in terms.items() if c != 0}
        if not terms:
            return cls.const(0)
        lo = min(terms)
        coeffs = [0] * (max(terms) - lo + 1)
        for k, c in terms.items():
            coeffs[k - lo] = _to_fmpq(c)
        return cls(lo, fmpq_poly(coeffs), _ONE_POLY, True)

    @staticmethod
    def _coerce(x) -> "LaurentFrac":
        if isinstance(x, LaurentFrac):
            return x
        if isinstance(x, (int, Fraction, fmpq)) or type(x).__name__ == "mpq":
            return LaurentFrac.const(Fraction(int(x.numerator), int(x.denominator))
                                     if not isinstance(x, (int, fmpq)) else x)
        return NotImplemented

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent_polynomial(self) -> bool:
        return self.den.degree() == 0

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.shift == other.shift and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shift, tuple(str(c) for c in self.num.coeffs()),
                               tuple(str(c) for c in self.den.coeffs())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "LaurentFrac":
        return LaurentFrac(self.shift, -self.num, self.den, True)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        a, b = self.shift, other.shift
        m = min(a, b)
        n1 = self.num.left_shift(a - m) if a > m else self.num
        n2 = other.num.left_shift(b - m) if b > m else other.num
        if self.den == other.den:
            if self.den.degree() == 0:
                num = n1 + n2
                if num.is_zero():
                    return LaurentFrac.const(0)
                k = _low_order(num)
                if k:
                    num = num.right_shift(k)
                return LaurentFrac(m + k, num, self.den, True)
            return LaurentFrac(m, n1 + n2, self.den)
        return LaurentFrac(m, n1 * other.den + n2 * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return LaurentFrac.const(0)
        shift = self.shift + other.shift
        if self.den.degree() == 0 and other.den.degree() == 0:
            return LaurentFrac(shift, self.num * other.num, _ONE_POLY, True)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d2.degree() > 0:
            g = n1.gcd(d2)
            if g.degree() > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree() > 0:
            g = n2.gcd(d1)
            if g.degree() > 0:
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return LaurentFrac(shift, num, den, True)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentFrac":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(v)")
        return LaurentFrac(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = LaurentFrac._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "LaurentFrac":
        if n < 0:
            return self.inverse() ** (-n)
        return LaurentFrac(self.shift * n, self.num ** n, self.den ** n, True)

    def conj(self) -> "LaurentFrac":
        """Complex conjugation; all scalars here are real so this is the identity."""
        return self

    # -- evaluation / text --------------------------------------------------

    def eval_at(self, v0) -> Fraction:
        v0 = Fraction(v0)
        if v0 <= 0:
            raise ValueError("evaluation point must be positive")
        x = fmpq(v0.numerator, v0.denominator)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at v = {v0}")
        val = self.num(x) / d
        return _fraction(val) * v0 ** self.shift

    def laurent_terms(self) -> dict[int, Fraction]:
        if not self.is_laurent_polynomial():
            raise ValueError("not a Laurent polynomial")
        scale = _fraction(self.den.coeffs()[0])
        return {self.shift + i: _fraction(c) / scale
                for i, c in enumerate(self.num.coeffs()) if c != 0}

    @staticmethod
    def _poly_text(coeffs, shift: int) -> str:
        parts = [f"{_fraction(c)}*v^{shift + i}" for i, c in enumerate(coeffs) if c != 0]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        num = self._poly_text(self.num.coeffs(), self.shift)
        if self.den.degree() == 0:
            return num
        return f"({num})/({self._poly_text(self.den.coeffs(), 0)})"

    def __repr__(self) -> str:
        return f"LaurentFrac({self})"

    @classmethod
    def parse(cls, text: str) -> "LaurentFrac":
        """Inverse of ``str``: ``"c*v^k + ..."`` or ``"(num)/(den)"``."""
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
        if m:
            return cls._parse_poly(m.group(1)) / cls._parse_poly(m.group(2))
        return cls._parse_poly(text)

    @classmethod
    def _parse_poly(cls, text: str) -> "LaurentFrac":
        text = text.strip()
        if text == "0":
            return cls.const(0)
        terms: dict[int, Fraction] = {}
        for part in text.split(" + "):
            m = re.fullmatch(r"\s*(-?\d+(?:/\d+)?)\*v\^(-?\d+)\s*", part)
            if not m:
                raise ValueError(f"malformed Laurent term {part!r}")
            k = int(m.group(2))
            terms[k] = terms.get(k, Fraction(0)) + Fraction(m.group(1))
        return cls.from_terms(terms)


def eval_at(a: LaurentFrac, v0) -> Fraction:
    return a.eval_at(v0)


class ScalarContext:
    """Common interface of the coefficient fields.  ``D`` is the exponent
    denominator: ``q = v**D``."""

    D: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def const(self, c):
        raise NotImplementedError

    def vpow(self, k: int):
        raise NotImplementedError

    def qpow(self, x) -> object:
        """q**x for rational x with D*x integral."""
        k = Fraction(x) * self.D
        if k.denominator != 1:
            raise ValueError(f"q^{x} is not an integral power of v = q^(1/{self.D})")
        return self.vpow(int(k))

    def to_rational(self, a) -> Fraction:
        raise NotImplementedError

    def text(self, a) -> str:
        return str(a)


class SymbolicContext(ScalarContext):
    def __init__(self, D: int):
        self.D = int(D)
        self._zero = LaurentFrac.const(0)
        self._one = LaurentFrac.const(1)
        self._pows: dict[int, LaurentFrac] = {}

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def const(self, c):
        if isinstance(c, LaurentFrac):
            return c
        return LaurentFrac.const(Fraction(c))

    def vpow(self, k: int):
        p = self._pows.get(k)
        if p is None:
            p = self._pows[k] = LaurentFrac.monomial(k)
        return p

    def evaluate(self, a, v0) -> Fraction:
        return a.eval_at(v0)

    def to_rational(self, a) -> Fraction:
        if a.shift == 0 and a.num.degree() <= 0 and a.den.degree() == 0:
            return _fraction(a.num.coeffs()[0]) if not a.is_zero() else Fraction(0)
        raise ValueError(f"{a} is not a rational constant")

    def __repr__(self):
        return f"SymbolicContext(D={self.D})"


class PointContext(ScalarContext):
    """Q specialized at v = v0 (so q = v0**D), exact rational arithmetic."""

    def __init__(self, D: int, v0=Fraction(1, 2)):
        self.D = int(D)
        self.v0 = Fraction(v0)
        if self.v0 <= 0:
            raise ValueError("v0 must be positive")
        self._v = gmpy2.mpq(self.v0.numerator, self.v0.denominator)
        self._zero = gmpy2.mpq(0)
        self._one = gmpy2.mpq(1)
        self._pows: dict[int, object] = {}

    @property
    def q(self) -> Fraction:
        return self.v0 ** self.D

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def const(self, c):
        if isinstance(c, LaurentFrac):
            return self.from_symbolic(c)
        c = Fraction(c)
        return gmpy2.mpq(c.numerator, c.denominator)

    def vpow(self, k: int):
        p = self._pows.get(k)
        if p is None:
            p = self._pows[k] = self._v ** k
        return p

    def from_symbolic(self, a: LaurentFrac):
        return self.const(a.eval_at(self.v0))

    def evaluate(self, a, v0=None) -> Fraction:
        return self.to_rational(a)

    def to_rational(self, a) -> Fraction:
        return Fraction(int(a.numerator), int(a.denominator))

    def text(self, a) -> str:
        return str(self.to_rational(a))

    def __repr__(self):
        return f"PointContext(D={self.D}, v0={self.v0})"
