"""Exact arithmetic on integer-coefficient polynomials.

Coefficients are stored ascending: coeffs[i] is the coefficient of t**i.
All arithmetic is arbitrary precision; evaluation at any integer is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy

_T = sympy.Symbol("t")


class IntPoly:
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def constant(self):
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (IntPoly([other]).coeffs)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c:+d}")
            elif i == 1:
                parts.append(f"{c:+d}*t")
            else:
                parts.append(f"{c:+d}*t^{i}")
        s = " ".join(parts)
        return s.lstrip("+").replace("+", "+ ").replace("-", "- ").lstrip() if s else "0"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = IntPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus and evaluation ------------------------------------------

    def derivative(self):
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, t):
        """Exact value at integer t (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def eval_mod(self, t, m):
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * t + c) % m
        return acc

    def compose_affine(self, c, t0):
        """Return p(c*t + t0)."""
        inner = IntPoly([t0, c])
        acc = IntPoly()
        for coef in reversed(self.coeffs):
            acc = acc * inner + IntPoly([coef])
        return acc

    def content(self):
        """GCD of the coefficients (nonnegative)."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Primitive part with positive leading coefficient."""
        if self.is_zero():
            return self
        g = self.content()
        sign = 1 if self.leading() > 0 else -1
        return IntPoly([sign * c // g for c in self.coeffs])

    # -- sympy bridge ------------------------------------------------------

    def to_sympy(self):
        return sympy.Poly(list(reversed(self.coeffs)) or [0], _T, domain="ZZ")

    @classmethod
    def from_sympy(cls, p):
        return cls(list(reversed(sympy.Poly(p, _T).all_coeffs())))


def _coerce(x):
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly([x])
    raise TypeError(f"cannot coerce {type(x)} to IntPoly")


def poly(*coeffs_ascending):
    """Convenience constructor: poly(1, 9) is 9t+1."""
    return IntPoly(coeffs_ascending)


def gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    g = sympy.gcd(a.to_sympy(), b.to_sympy())
    return IntPoly.from_sympy(g).primitive()


def divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a/b; raises if b does not divide a in Q[t] with integer result."""
    q, r = sympy.div(a.to_sympy(), b.to_sympy())
    if not r.is_zero:
        raise ValueError("inexact polynomial division")
    out = sympy.Poly(q, _T)
    coeffs = list(reversed(out.all_coeffs()))
    if any(sympy.Rational(c).q != 1 for c in coeffs):
        raise ValueError("non-integer quotient")
    return IntPoly([int(c) for c in coeffs])


def radical(p: IntPoly) -> IntPoly:
    """Primitive square-free part, positive leading coefficient.

    Every irreducible factor of p divides the result exactly once;
    constant content is dropped.
    """
    if p.is_zero():
        raise ValueError("radical of zero polynomial")
    if p.is_constant():
        return IntPoly([1])
    g = gcd(p, p.derivative())
    if g.is_constant():
        return p.primitive()
    # primitive gcd divides the primitive part exactly over Z (Gauss)
    return divexact(p.primitive(), g).primitive()


def discriminant(p: IntPoly) -> int:
    """Exact discriminant via the resultant with the derivative.

    Standard normalization: disc = (-1)^(n(n-1)/2) res(p, p') / lc(p).
    Linear polynomials have discriminant 1 by convention.
    """
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    res = sympy.resultant(p.to_sympy().as_expr(), p.derivative().to_sympy().as_expr(), _T)
    val = Fraction(int(res), p.leading())
    val *= (-1) ** (n * (n - 1) // 2)
    assert val.denominator == 1
    return int(val)


def resultant(a: IntPoly, b: IntPoly) -> int:
    return int(sympy.resultant(a.to_sympy().as_expr(), b.to_sympy().as_expr(), _T))
