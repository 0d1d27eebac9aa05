"""Exact arithmetic in the univariate rational-function field Q(n).

A scalar is a quotient of two polynomials in one formal variable ``n``
with rational coefficients.  Keeping ``n`` formal means that every
identity verified by the rewriting engine holds for all nonzero integer
specialisations of ``n`` at once; a scenario may substitute a concrete
value at report time via :meth:`Scalar.evaluate`.

The representation is canonical (numerator and denominator coprime,
denominator monic, zero stored as 0/1), so equality and hashing are
structural.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

#: Polynomial = tuple of Fraction coefficients, index = degree, no trailing zeros.
Poly = tuple

_F0 = Fraction(0)
_F1 = Fraction(1)

ScalarLike = Union["Scalar", int, Fraction]


def _coerce_poly(coeffs) -> Poly:
    cs = [c if type(c) is Fraction else Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _trim(coeffs) -> Poly:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [_F0] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coef = rem[k + len(b) - 1] / lead
        if coef == 0:
            continue
        quo[k] = coef
        for j, cb in enumerate(b):
            rem[k + j] -= coef * cb
    return _trim(quo), _trim(rem)


def _pmonic(a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    lead = a[-1]
    return tuple(c / lead for c in a)


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a: Poly, x: Fraction) -> Fraction:
    acc = _F0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _monomial_str(coef: Fraction, deg: int, var: str) -> str:
    if deg == 0:
        return str(coef)
    head = var if deg == 1 else f"{var}^{deg}"
    if coef == 1:
        return head
    if coef == -1:
        return "-" + head
    return f"{coef}*{head}"


def _pstr(a: Poly, var: str = "n") -> str:
    if not a:
        return "0"
    parts = []
    for deg in range(len(a) - 1, -1, -1):
        coef = a[deg]
        if coef == 0:
            continue
        mono = _monomial_str(abs(coef), deg, var)
        if not parts:
            parts.append(mono if coef > 0 else "-" + mono)
        else:
            parts.append(("+ " if coef > 0 else "- ") + mono)
    return " ".join(parts)


def _is_monomial(a: Poly) -> bool:
    return sum(1 for c in a if c != 0) <= 1


class Scalar:
    """An element of Q(n), stored as a canonical numerator/denominator pair."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(_F1,)):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not num:
            den = (_F1,)
        else:
            # canonical inputs keep num and den coprime, so a nontrivial
            # common factor needs both to have positive degree
            if len(num) > 1 and len(den) > 1:
                g = _pgcd(num, den)
                if len(g) > 1:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", hash((num, den)))

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def integer(cls, value: int) -> "Scalar":
        return cls((Fraction(value),))

    @classmethod
    def rational(cls, p: int, q: int) -> "Scalar":
        return cls((Fraction(p, q),))

    @classmethod
    def from_fraction(cls, f: Fraction) -> "Scalar":
        return cls((f,))

    @classmethod
    def zero(cls) -> "Scalar":
        return _ZERO_SCALAR

    @classmethod
    def one(cls) -> "Scalar":
        return _ONE_SCALAR

    @classmethod
    def degree_symbol(cls) -> "Scalar":
        """The formal variable n (the generic degree of a dominant slice)."""
        return _N_SCALAR

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (_F1,) and self.den == (_F1,)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == (_F1,)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other: ScalarLike) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar((Fraction(other),))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return Scalar(_padd(self.num, o.num), self.den)
        return Scalar(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(_pneg(self.num), self.den)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return -(self - other)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self is _ONE_SCALAR:
            return o
        if o is _ONE_SCALAR:
            return self
        return Scalar(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return Scalar(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return self._coerce(other) / self

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero scalar")
        return Scalar(self.den, self.num)

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = _ONE_SCALAR
        for _ in range(exponent):
            out = out * self
        return out

    # -- misc ---------------------------------------------------------------

    def evaluate(self, value) -> Fraction:
        """Specialise n to a concrete rational value."""
        x = Fraction(value)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at n={value}")
        return _peval(self.num, x) / d

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.den == (_F1,):
            return _pstr(self.num) if _is_monomial(self.num) else f"({_pstr(self.num)})"
        ns = _pstr(self.num) if _is_monomial(self.num) else f"({_pstr(self.num)})"
        ds = _pstr(self.den) if _is_monomial(self.den) else f"({_pstr(self.den)})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"Scalar({self})"


_ZERO_SCALAR = Scalar(())
_ONE_SCALAR = Scalar((_F1,))
_N_SCALAR = Scalar((_F0, _F1))

ZERO = _ZERO_SCALAR
ONE = _ONE_SCALAR
N = _N_SCALAR
