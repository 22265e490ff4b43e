"""Exact arithmetic: rationals, integer polynomials, rational functions.

Scalars are :class:`fractions.Fraction` (re-exported as ``Rational``): Python
ints are unbounded, and Fraction keeps the canonical form we rely on
(positive denominator, gcd(numerator, denominator) = 1, zero as 0/1).

A :class:`Polynomial` is an immutable tuple of int coefficients, index =
degree, trailing zeros stripped; the zero polynomial is the empty tuple.
A :class:`RationalFunction` is a pair of integer polynomials kept in a
canonical form (numerator and denominator coprime, including integer
content, denominator with positive leading coefficient), so structural
equality coincides with mathematical equality.  Everything here is exact;
there is no floating point in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "binomial",
    "Polynomial",
    "poly_gcd",
    "RationalFunction",
    "sum_fractions",
]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial requires nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


def sum_fractions(terms: Iterable[Scalar]) -> Fraction:
    """Exact sum of many fractions by divide-and-conquer merging.

    Pairwise merging keeps intermediate numerators/denominators balanced, so
    summing ~10^4 terms stays far cheaper than left-to-right Fraction
    addition (which normalizes after every step).
    """
    items = [(f.numerator, f.denominator) if isinstance(f, Fraction) else (f, 1) for f in terms]
    if not items:
        return Fraction(0)
    while len(items) > 1:
        merged = []
        for i in range(0, len(items) - 1, 2):
            n1, d1 = items[i]
            n2, d2 = items[i + 1]
            merged.append((n1 * d2 + n2 * d1, d1 * d2))
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    return Fraction(*items[0])


class Polynomial:
    """Dense univariate polynomial with arbitrary-precision int coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {type(c).__name__}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        """gcd of the coefficients (nonnegative); 0 for the zero polynomial."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive_part(self) -> "Polynomial":
        """self divided by its content; sign of the leading coefficient kept."""
        c = self.content()
        if c <= 1:
            return self
        return Polynomial(a // c for a in self.coeffs)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: Union["Polynomial", int]) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(c * other for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def shift(self, powers: int = 1) -> "Polynomial":
        """Multiply by s**powers."""
        if self.is_zero:
            return self
        return Polynomial((0,) * powers + self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact polynomial division; raises ValueError if it does not divide."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        rem = list(self.coeffs)
        dc = divisor.coeffs
        dl = divisor.leading
        q = [0] * (len(rem) - len(dc) + 1)
        for i in range(len(q) - 1, -1, -1):
            head = rem[i + len(dc) - 1]
            if head % dl:
                raise ValueError("not an exact polynomial division")
            f = head // dl
            q[i] = f
            if f:
                for j, c in enumerate(dc):
                    rem[i + j] -= f * c
        if any(rem):
            raise ValueError("not an exact polynomial division")
        return Polynomial(q)

    def evaluate(self, x: Scalar) -> Scalar:
        """Horner evaluation; exact for int or Fraction arguments."""
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- comparisons and display -------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}s" if i == 1 else f"{mag}s^{i}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)


_ONE = Polynomial((1,))


def _pseudo_rem(a: Polynomial, b: Polynomial) -> Polynomial:
    # fraction-free remainder: repeatedly scale by the divisor's leading
    # coefficient so every step stays in the integers
    lead_b = b.leading
    r = a
    while not r.is_zero and r.degree >= b.degree:
        shift = r.degree - b.degree
        r = r * lead_b - (b * r.leading).shift(shift)
    return r


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Primitive gcd of integer polynomials, positive leading coefficient.

    Uses the primitive Euclidean algorithm (content stripped after every
    pseudo-remainder), which is plenty at the degrees used here.
    """
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    a = p.primitive_part()
    b = q.primitive_part()
    while not b.is_zero:
        a, b = b, _pseudo_rem(a, b).primitive_part()
    if a.leading < 0:
        a = -a
    return a


class RationalFunction:
    """Ratio of integer polynomials in canonical (fully reduced) form.

    Canonical means: numerator and denominator share no polynomial factor
    and no integer content, and the denominator's leading coefficient is
    positive.  Zero is 0/1.  Two RationalFunction objects are equal exactly
    when they are equal as functions, so ``==`` is a proof of identity.
    """

    __slots__ = ("numer", "denom")

    def __init__(self, numer, denom=_ONE):
        numer = _as_poly(numer)
        denom = _as_poly(denom)
        if denom.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        if numer.is_zero:
            numer, denom = Polynomial(), _ONE
        else:
            g = poly_gcd(numer, denom)
            if g.degree > 0:
                numer = numer.divexact(g)
                denom = denom.divexact(g)
            c = math.gcd(numer.content(), denom.content())
            if c > 1:
                numer = Polynomial(a // c for a in numer.coeffs)
                denom = Polynomial(a // c for a in denom.coeffs)
            if denom.leading < 0:
                numer, denom = -numer, -denom
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_scalar(cls, value: Scalar) -> "RationalFunction":
        value = Fraction(value)
        return cls(Polynomial((value.numerator,)), Polynomial((value.denominator,)))

    @property
    def is_zero(self) -> bool:
        return self.numer.is_zero

    # -- field operations ---------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numer * other.denom + other.numer * self.denom,
            self.denom * other.denom,
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numer, self.denom)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: Union["RationalFunction", Scalar]) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return RationalFunction(self.numer * f.numerator, self.denom * f.denominator)
        return RationalFunction(self.numer * other.numer, self.denom * other.denom)

    __rmul__ = __mul__

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.numer * other.denom, self.denom * other.numer)

    def derivative(self) -> "RationalFunction":
        """Exact derivative by the quotient rule, canonicalized."""
        return RationalFunction(
            self.numer.derivative() * self.denom - self.numer * self.denom.derivative(),
            self.denom * self.denom,
        )

    def evaluate(self, s: Scalar) -> Fraction:
        """Exact value at s; raises ZeroDivisionError at a pole."""
        dv = self.denom.evaluate(s)
        if dv == 0:
            raise ZeroDivisionError(f"pole of rational function at s={s}")
        return Fraction(self.numer.evaluate(s)) / Fraction(dv)

    # -- comparisons and display -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.from_scalar(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numer == other.numer and self.denom == other.denom

    def __hash__(self) -> int:
        return hash((self.numer, self.denom))

    def __repr__(self) -> str:
        return f"RationalFunction({self.numer!r}, {self.denom!r})"

    def __str__(self) -> str:
        return f"({self.numer}) / ({self.denom})"


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int):
        return Polynomial((value,))
    raise TypeError(f"Polynomial or int expected, got {type(value).__name__}")
