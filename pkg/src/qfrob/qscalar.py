"""Exact rational functions of one formal variable ``q`` over the rationals.

A :class:`RatFunc` is stored as ``q**shift * num(q) / den(q)`` where ``num`` and
``den`` are ordinary polynomials (``flint.fmpq_poly``) with nonzero constant
terms, ``gcd(num, den) = 1`` and ``den`` monic.  The zero function has
``num = 0`` and ``shift = 0``.  With this normal form equality is a plain
comparison of the stored parts.

Only flint's univariate arithmetic and gcd are used; the Laurent bookkeeping,
normalization, parsing and specialization live here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import flint

__all__ = [
    "RatFunc",
    "LaurentPoly",
    "ParseError",
    "PoleAtPoint",
    "ZeroBase",
    "q_int",
    "parse_scalar",
    "specialize",
    "as_ratfunc",
    "ZERO",
    "ONE",
    "Q",
]

_Poly = flint.fmpq_poly
_POLY_ONE = _Poly([1])
_POLY_ZERO = _Poly([])


class PoleAtPoint(ArithmeticError):
    """The reduced denominator vanishes at the requested point."""


class ZeroBase(ArithmeticError):
    """Specialization at q = 0 is not defined for Laurent expressions."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def _valuation(p) -> int:
    if p.is_zero():
        return 0
    v = 0
    while p[v] == 0:
        v += 1
    return v


def _fmpq(x):
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return x


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


class RatFunc:
    """Element of Q(q) in canonical form; immutable."""

    __slots__ = ("_num", "_den", "_shift", "_hash")

    def __init__(self, value=0):
        if isinstance(value, RatFunc):
            self._num, self._den, self._shift = value._num, value._den, value._shift
        elif isinstance(value, (int, Fraction)):
            self._num = _Poly([_fmpq(value)]) if value else _POLY_ZERO
            self._den = _POLY_ONE
            self._shift = 0
        else:
            raise TypeError(f"cannot build RatFunc from {type(value).__name__}")
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _raw(cls, num, den, shift: int) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        obj._shift = shift
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num, den, shift: int, reduce: bool = True) -> "RatFunc":
        if num.is_zero():
            return ZERO
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        v = _valuation(num)
        if v:
            num = num.right_shift(v)
            shift += v
        w = _valuation(den)
        if w:
            den = den.right_shift(w)
            shift -= w
        if den.degree() > 0:
            if reduce:
                g = num.gcd(den)
                if g.degree() > 0:
                    num = num // g
                    den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls._raw(num, den, shift)

    @classmethod
    def monomial(cls, coeff, exp: int) -> "RatFunc":
        if not coeff:
            return ZERO
        return cls._raw(_Poly([_fmpq(coeff)]), _POLY_ONE, exp)

    @classmethod
    def from_laurent(cls, coeffs: dict[int, Fraction | int]) -> "RatFunc":
        """Build from an ``{exponent: coefficient}`` map."""
        coeffs = {e: c for e, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        hi = max(coeffs)
        dense = [0] * (hi - lo + 1)
        for e, c in coeffs.items():
            dense[e - lo] = _fmpq(c)
        return cls._raw(_Poly(dense), _POLY_ONE, lo)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def is_laurent(self) -> bool:
        return self._den.degree() == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self._shift == 0 and self._num.degree() == 0
                                  and self._den.degree() == 0)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self._num[0]) if self else Fraction(0)

    def numerator(self) -> "LaurentPoly":
        cs = self._num.coeffs()
        return LaurentPoly({self._shift + i: _to_fraction(c) for i, c in enumerate(cs) if c != 0})

    def denominator(self) -> "LaurentPoly":
        cs = self._den.coeffs()
        return LaurentPoly({i: _to_fraction(c) for i, c in enumerate(cs) if c != 0})

    def laurent_coeffs(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return dict(self.numerator().coeffs)

    def key(self) -> tuple:
        return (self._shift, tuple(self._num.coeffs()), tuple(self._den.coeffs()))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(str(c) for c in self.key()[1:]) + (self._shift,))
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = as_ratfunc(other)
            except TypeError:
                return NotImplemented
        return (self._shift == other._shift and self._num == other._num
                and self._den == other._den)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "RatFunc":
        if not self:
            return self
        return RatFunc._raw(-self._num, self._den, self._shift)

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        if not other:
            return self
        if not self:
            return other
        e1, e2 = self._shift, other._shift
        e = e1 if e1 < e2 else e2
        p1 = self._num.left_shift(e1 - e) if e1 != e else self._num
        p2 = other._num.left_shift(e2 - e) if e2 != e else other._num
        d1, d2 = self._den, other._den
        if d1 == d2:
            if d1.degree() == 0:
                num = p1 + p2
                if num.is_zero():
                    return ZERO
                v = _valuation(num)
                if v:
                    num = num.right_shift(v)
                return RatFunc._raw(num, d1, e + v)
            return RatFunc._make(p1 + p2, d1, e)
        if d1.degree() == 0:
            return RatFunc._make(p1 * d2 + p2, d2, e)
        if d2.degree() == 0:
            return RatFunc._make(p1 + p2 * d1, d1, e)
        return RatFunc._make(p1 * d2 + p2 * d1, d1 * d2, e)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return as_ratfunc(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if isinstance(other, int) and other in (0, 1):
                return self if other else ZERO
            other = as_ratfunc(other)
        if not self or not other:
            return ZERO
        d1, d2 = self._den, other._den
        if d1.degree() == 0 and d2.degree() == 0:
            return RatFunc._raw(self._num * other._num, _POLY_ONE, self._shift + other._shift)
        # cross-cancel to keep degrees small
        n1, n2 = self._num, other._num
        if d2.degree() > 0:
            g = n1.gcd(d2)
            if g.degree() > 0:
                n1 = n1 // g
                d2 = d2 // g
        if d1.degree() > 0:
            g = n2.gcd(d1)
            if g.degree() > 0:
                n2 = n2 // g
                d1 = d1 // g
        return RatFunc._make(n1 * n2, d1 * d2, self._shift + other._shift, reduce=False)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._make(self._den, self._num, -self._shift, reduce=False)

    def __truediv__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = as_ratfunc(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if not self:
            return ZERO
        return RatFunc._raw(self._num ** k, self._den ** k, self._shift * k)

    # -- evaluation -------------------------------------------------------

    def specialize(self, q0) -> Fraction:
        return specialize(self, q0)

    # -- printing ---------------------------------------------------------

    def __str__(self) -> str:
        num = _laurent_str(self.numerator().coeffs)
        if self.is_laurent():
            return num
        den = _laurent_str(self.denominator().coeffs)
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _laurent_str(coeffs: dict[int, Fraction]) -> str:
    """Grammar-compatible text, highest exponent first."""
    if not coeffs:
        return "0"
    parts = []
    for i, e in enumerate(sorted(coeffs, reverse=True)):
        c = coeffs[e]
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _coeff_str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_coeff_str(a)}*{mono}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


class LaurentPoly:
    """Finitely supported ``{exponent: Fraction}`` map; a view used for I/O."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c}

    def to_ratfunc(self) -> RatFunc:
        return RatFunc.from_laurent(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"LaurentPoly({_laurent_str(self.coeffs)})"


ZERO = RatFunc._raw(_POLY_ZERO, _POLY_ONE, 0)
ONE = RatFunc._raw(_POLY_ONE, _POLY_ONE, 0)
Q = RatFunc._raw(_POLY_ONE, _POLY_ONE, 1)


def as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")


def q_int(k: int) -> RatFunc:
    """The q-integer (q^k - q^-k)/(q - q^-1) = q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k == 0:
        return ZERO
    sign = 1 if k > 0 else -1
    k = abs(k)
    return RatFunc.from_laurent({k - 1 - 2 * i: sign for i in range(k)})


def q_pow(k: int) -> RatFunc:
    return RatFunc._raw(_POLY_ONE, _POLY_ONE, k)


def specialize(f: RatFunc, q0) -> Fraction:
    """Exact value of ``f`` at the nonzero rational ``q0``."""
    q0 = Fraction(q0)
    if q0 == 0:
        raise ZeroBase("cannot specialize at q = 0")
    f = as_ratfunc(f)
    if not f:
        return Fraction(0)
    x = flint.fmpq(q0.numerator, q0.denominator)
    den = f._den(x)
    if den == 0:
        raise PoleAtPoint(f"denominator of {f} vanishes at q = {q0}")
    return _to_fraction(f._num(x) / den) * q0 ** f._shift


def sum_ratfuncs(items: Iterable[RatFunc]) -> RatFunc:
    total = ZERO
    for x in items:
        total = total + x
    return total


# -- parsing ---------------------------------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := '-'? base ('^' signed-integer)?
#   base   := 'q' | unsigned-integer | '(' expr ')'


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def parse(self) -> RatFunc:
        if not self.text.strip():
            raise self._error("empty expression")
        value = self.expr()
        if self._peek():
            raise self._error(f"unexpected {self._peek()!r}")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self._peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.factor()
        while self._peek() in ("*", "/"):
            op = self.text[self.pos]
            at = self.pos
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise ParseError("division by the zero polynomial", self.text, at)
                value = value / rhs
        return value

    def factor(self) -> RatFunc:
        negate = False
        if self._peek() == "-":
            negate = True
            self.pos += 1
        value = self.base()
        if self._peek() == "^":
            self.pos += 1
            at = self.pos
            exp = self._signed_integer()
            if exp < 0 and not value:
                raise ParseError("division by the zero polynomial", self.text, at)
            value = value ** exp
        return -value if negate else value

    def _unsigned(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self._error("expected integer")
        return int(self.text[start:self.pos])

    def _signed_integer(self) -> int:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        return sign * self._unsigned()

    def base(self) -> RatFunc:
        c = self._peek()
        if c == "q":
            self.pos += 1
            return Q
        if c.isdigit():
            return RatFunc(self._unsigned())
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self._peek() != ")":
                raise self._error("expected ')'")
            self.pos += 1
            return value
        raise self._error("expected 'q', integer or '('" if c else "unexpected end of input")


def parse_scalar(text: str) -> RatFunc:
    """Parse a scalar expression in ``q`` (see module grammar)."""
    return _Parser(text).parse()
