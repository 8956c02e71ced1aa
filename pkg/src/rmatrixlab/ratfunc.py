"""Rational functions over multivariate rational-coefficient polynomials.

Instances are always kept in canonical form: gcd-reduced, content-free, and
with a monic (lex-leading coefficient 1) denominator, so structural equality
is semantic equality.  This canonicity is what every identity verifier in the
library leans on.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ZeroDenominator
from .poly import Poly, align, poly_gcd, try_div


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        if reduce:
            num, den = _reduced(num, den)
        self.num = num
        self.den = den

    # -- constructors -----------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.const(c), Poly.const(1), reduce=False)

    @staticmethod
    def var(name: str, exp: int = 1) -> "RatFunc":
        if exp >= 0:
            return RatFunc(Poly.var(name, exp), Poly.const(1), reduce=False)
        return RatFunc(Poly.const(1), Poly.var(name, -exp), reduce=False)

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc(p, Poly.const(1), reduce=False)

    @staticmethod
    def monomial(exps: dict[str, int], coeff=1) -> "RatFunc":
        """Laurent monomial like q^2 * z / b."""
        num = Poly.const(coeff)
        den = Poly.const(1)
        for name, e in sorted(exps.items()):
            if e > 0:
                num = num * Poly.var(name, e)
            elif e < 0:
                den = den * Poly.var(name, -e)
        return RatFunc(num, den, reduce=False)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def const_value(self) -> Fraction:
        assert self.is_const()
        if self.num.is_zero():
            return Fraction(0)
        return self.num.const_value() / self.den.const_value()

    def variables(self) -> set[str]:
        return set(self.num.compress().vars) | set(self.den.compress().vars)

    def __hash__(self):
        return hash((self.num, self.den))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        g = poly_gcd(self.den, other.den)
        if g.is_const():
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        d1 = _exact(self.den, g)
        d2 = _exact(other.den, g)
        num = self.num * d2 + other.num * d1
        return RatFunc(num, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_const() else _exact(self.num, g1)
        d2 = other.den if g1.is_const() else _exact(other.den, g1)
        n2 = other.num if g2.is_const() else _exact(other.num, g2)
        d1 = self.den if g2.is_const() else _exact(self.den, g2)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    # -- substitution / evaluation ----------------------------------------------

    def subs(self, values: dict[str, "RatFunc | Fraction | int"]) -> "RatFunc":
        """Substitute rational functions (or numbers) for variables."""
        plain = {k: Fraction(v) for k, v in values.items()
                 if isinstance(v, (int, Fraction))}
        fancy = {k: v for k, v in values.items() if isinstance(v, RatFunc)}
        out = self
        if plain:
            num = out.num.subs_values(plain)
            den = out.den.subs_values(plain)
            if den.is_zero():
                raise ZeroDenominator(f"substitution {plain} hits a pole")
            out = RatFunc(num, den)
        if fancy:
            out = _subs_poly(out.num, fancy) / _subs_poly(out.den, fancy)
        return out

    def eval_at(self, name: str, value) -> "RatFunc":
        return self.subs({name: value})

    def valuation(self, name: str) -> int:
        """Order of vanishing in `name` at 0 (negative for a pole)."""
        assert not self.is_zero()
        return _low_deg(self.num, name) - _low_deg(self.den, name)

    def regular_at_zero(self, name: str) -> bool:
        return self.is_zero() or self.valuation(name) >= 0

    # -- printing -------------------------------------------------------------

    def __repr__(self):
        return f"RatFunc({self.text()})"

    def text(self) -> str:
        if self.den.is_const() and self.den.const_value() == 1:
            return f"({self.num.text()})"
        return f"({self.num.text()}) / ({self.den.text()})"


def _coerce(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFunc.const(x)
    return NotImplemented


def _exact(a: Poly, b: Poly) -> Poly:
    q = try_div(a, b)
    assert q is not None
    return q


def _reduced(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return Poly.zero(), Poly.const(1)
    g = poly_gcd(num, den)
    if not g.is_const() or g.const_value() != 1:
        num = _exact(num, g)
        den = _exact(den, g)
    lc = den.lead_coeff()
    if lc != 1:
        num = num.scale(Fraction(1) / lc)
        den = den.scale(Fraction(1) / lc)
    return num.compress(), den.compress()


def _subs_poly(p: Poly, values: dict[str, RatFunc]) -> RatFunc:
    hit = [v for v in p.vars if v in values]
    if not hit:
        return RatFunc.from_poly(p)
    total = RatFunc.const(0)
    for e, coeff in p.coeffs_in(hit[0]).items():
        term = _subs_poly(coeff, values) * values[hit[0]] ** e
        total = total + term
    return total


def _low_deg(p: Poly, name: str) -> int:
    if name not in p.vars:
        return 0
    i = p.vars.index(name)
    return min(mono[i] for mono in p.terms)


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical reduced form of num/den; raises ZeroDenominator if den = 0."""
    return RatFunc(num, den)


R0 = RatFunc.const(0)
R1 = RatFunc.const(1)


def rf(name: str, exp: int = 1) -> RatFunc:
    return RatFunc.var(name, exp)
