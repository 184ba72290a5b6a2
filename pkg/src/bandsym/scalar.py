"""Exact scalars: rationals and rational functions in a single indeterminate ``x``.

Rationals are plain :class:`fractions.Fraction` values.  A rational function
is only ever produced when a computation touches the pivot symbol :data:`X`;
any result that cancels down to a constant is returned as a ``Fraction`` again,
so the two representations never overlap.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Tuple, Union

__all__ = [
    "Poly",
    "RatFunc",
    "Scalar",
    "X",
    "LimitUndefined",
    "ZeroDenominator",
    "rat_arith",
    "poly_gcd",
    "rf_normalize",
    "canonical",
    "lift",
    "eval_at_zero",
    "is_symbolic",
    "format_rational",
    "parse_rational",
]

ZERO = Fraction(0)
ONE = Fraction(1)

# degree of the zero polynomial
NEG_INF = -math.inf


class LimitUndefined(ArithmeticError):
    """Raised when a rational function has a pole at x = 0."""


class ZeroDenominator(ZeroDivisionError):
    pass


def _trim(coeffs: Iterable) -> Tuple[Fraction, ...]:
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Univariate polynomial over Q, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: Tuple[Fraction, ...] = _trim(coeffs)

    @classmethod
    def _raw(cls, coeffs: Tuple[Fraction, ...]) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def at_zero(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else ZERO

    def __call__(self, value) -> Fraction:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly._raw(tuple(out))  # product of nonzero leads is nonzero

    def scale(self, c) -> "Poly":
        if c == 0:
            return Poly._raw(())
        return Poly._raw(tuple(v * c for v in self.coeffs))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < dq:
            return Poly._raw(()), self
        quot = [ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            quot[k - dq] = c
            if c:
                for j, d in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * d
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0)`` is the zero polynomial."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials with a monic denominator.

    Arithmetic with ``int``/``Fraction`` operands is supported in both
    directions and always returns a canonical :data:`Scalar`.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            # canonical RatFuncs are never constant
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __str__(self):
        if self.den.degree == 0:
            return f"({self.num})"
        return f"({self.num})/({self.den})"

    def at_zero(self) -> Fraction:
        d0 = self.den.at_zero()
        if d0 == 0:
            raise LimitUndefined(f"{self} has a pole at x = 0")
        return self.num.at_zero() / d0

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __add__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return canonical(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return canonical(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return canonical(o.num * self.den - self.num * o.den, self.den * o.den)

    def __mul__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return canonical(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return canonical(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return canonical(o.num * self.den, o.den * self.num)


Scalar = Union[Fraction, RatFunc]


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, (int, Fraction)):
        return RatFunc(Poly.constant(v), Poly._raw((ONE,)))
    return None


def rf_normalize(num: Poly, den: Poly) -> RatFunc:
    """Cancel the monic gcd and scale so the denominator is monic."""
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return RatFunc(num, Poly._raw((ONE,)))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lead = den.lead
    if lead != 1:
        num, den = num.scale(1 / lead), den.scale(1 / lead)
    return RatFunc(num, den)


def canonical(num: Poly, den: Poly) -> Scalar:
    """Normalize ``num/den`` and collapse constants to ``Fraction``."""
    rf = rf_normalize(num, den)
    if rf.num.degree <= 0 and rf.den.degree == 0:
        return rf.num.at_zero()
    return rf


def lift(r) -> RatFunc:
    """Embed a rational as a (non-canonical) constant rational function."""
    return _as_ratfunc(Fraction(r))


#: The pivot indeterminate.
X: RatFunc = RatFunc(Poly((0, 1)), Poly((1,)))


def is_symbolic(s) -> bool:
    return isinstance(s, RatFunc)


def rat_arith(op: str, a: Scalar, b: Scalar) -> Scalar:
    """Field operation ``op`` in {add, sub, mul, div} on two scalars."""
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if b == 0:
            raise ZeroDivisionError("division by the zero scalar")
        r = a / b
    else:
        raise ValueError(f"unknown operation {op!r}")
    if isinstance(r, RatFunc):
        # lifted constants (see lift) may still need collapsing
        return canonical(r.num, r.den)
    return r


def eval_at_zero(s):
    """Specialize a scalar at x = 0.

    For a reduced ``n/d`` this is ``n(0)/d(0)``, which equals the limit
    because no common factor is left to cancel.  Floats pass through.
    """
    if isinstance(s, RatFunc):
        return s.at_zero()
    return s


def format_rational(r) -> str:
    if isinstance(r, float):
        return repr(r)
    return str(Fraction(r))


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an ``int``.  Floats and bools are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"not an exact rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"not a rational: {text!r}")

