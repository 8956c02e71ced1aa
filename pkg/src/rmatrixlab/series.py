"""Truncated Laurent series with rational-function coefficients.

A series carries its variable name and a truncation order `order`: the
coefficients for exponents < order are known, everything at `order` and
above is unknown.  Arithmetic propagates truncation as the minimum of the
operands, adjusted by valuations for products.
"""

from __future__ import annotations

from .errors import NotExpandable
from .ratfunc import RatFunc, R0


class PowerSeries:
    __slots__ = ("var", "coeffs", "order")

    def __init__(self, var: str, coeffs: dict[int, RatFunc], order: int):
        self.var = var
        self.coeffs = {e: c for e, c in coeffs.items() if e < order and not c.is_zero()}
        self.order = order

    @staticmethod
    def const(var: str, value, order: int) -> "PowerSeries":
        v = value if isinstance(value, RatFunc) else RatFunc.const(value)
        return PowerSeries(var, {0: v}, order)

    def __getitem__(self, e: int) -> RatFunc:
        assert e < self.order, f"coefficient {e} beyond truncation {self.order}"
        return self.coeffs.get(e, R0)

    def valuation(self) -> int:
        if not self.coeffs:
            return self.order
        return min(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        exps = {e for e in self.coeffs if e < order} | {e for e in other.coeffs if e < order}
        return self.var == other.var and all(self[e] == other[e] for e in exps)

    def __neg__(self):
        return PowerSeries(self.var, {e: -c for e, c in self.coeffs.items()}, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = coeffs.get(e, R0) + c
            if s.is_zero():
                coeffs.pop(e, None)
            else:
                coeffs[e] = s
        return PowerSeries(self.var, coeffs, order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        order = min(self.order + other.valuation(), other.order + self.valuation())
        coeffs: dict[int, RatFunc] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e >= order:
                    continue
                s = coeffs.get(e, R0) + c1 * c2
                if s.is_zero():
                    coeffs.pop(e, None)
                else:
                    coeffs[e] = s
        return PowerSeries(self.var, coeffs, order)

    __rmul__ = __mul__
    __radd__ = __add__

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            assert other.var == self.var
            return other
        return PowerSeries.const(self.var, other, self.order)

    def inv(self) -> "PowerSeries":
        """Inverse of a series whose lowest coefficient is invertible."""
        assert self.coeffs, "cannot invert a series truncated to nothing"
        v = self.valuation()
        lead = self.coeffs[v]
        lead_inv = lead.inv()
        k = self.order - v
        tail = {e - v: c for e, c in self.coeffs.items() if e > v}
        out: dict[int, RatFunc] = {0: lead_inv}
        for n in range(1, k):
            s = R0
            for m, c in tail.items():
                if m <= n:
                    s = s + c * out.get(n - m, R0)
            out[n] = -lead_inv * s
        return PowerSeries(self.var, {e - v: c for e, c in out.items()}, k - v)

    def map_coeffs(self, f) -> "PowerSeries":
        return PowerSeries(self.var, {e: f(c) for e, c in self.coeffs.items()}, self.order)

    def scale_argument(self, factor: RatFunc) -> "PowerSeries":
        """Series of f(factor*z) from the series of f(z)."""
        return PowerSeries(self.var, {e: c * factor ** e for e, c in self.coeffs.items()},
                           self.order)

    def __repr__(self):
        terms = [f"({c.text()})*{self.var}^{e}" for e, c in sorted(self.coeffs.items())]
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O({self.var}^{self.order})"


def series_expand(f: RatFunc, var: str, direction: str, order: int) -> PowerSeries:
    """Laurent expansion of a rational function at zero or infinity.

    At zero, `order` is the truncation order: coefficients are produced for
    all exponents below `order` (starting at the valuation).  At infinity,
    `order` counts coefficients from the leading term downwards.
    """
    if direction not in ("at-zero", "at-infinity"):
        raise NotExpandable(f"unknown direction {direction!r}")
    if f.is_zero():
        return PowerSeries(var, {}, order)
    if direction == "at-infinity":
        g = _invert_variable(f, var)
        val = g.valuation(var)
        s = _expand_at_zero(g, var, val + order)
        return PowerSeries(var, {-e: c for e, c in s.coeffs.items()},
                           (-min(s.coeffs) + 1) if s.coeffs else 1)
    return _expand_at_zero(f, var, order)


def _expand_at_zero(f: RatFunc, var: str, order: int) -> PowerSeries:
    num = f.num.coeffs_in(var)
    den = f.den.coeffs_in(var)
    if not den:
        raise NotExpandable("denominator vanished during expansion")
    vden = min(den)
    if den[vden].is_zero():
        raise NotExpandable("denominator has zero lowest term")
    vnum = min(num)
    val = vnum - vden
    count = order - val
    if count <= 0:
        return PowerSeries(var, {}, order)
    dd = {e - vden: RatFunc.from_poly(p) for e, p in den.items()}
    nn = {e - vnum: RatFunc.from_poly(p) for e, p in num.items()}
    lead_inv = dd[0].inv()
    out: dict[int, RatFunc] = {}
    for n in range(count):
        s = nn.get(n, R0)
        for m, c in dd.items():
            if 0 < m <= n:
                s = s - c * out.get(n - m, R0)
        out[n] = s * lead_inv
    return PowerSeries(var, {e + val: c for e, c in out.items()}, order)


def _invert_variable(f: RatFunc, var: str) -> RatFunc:
    """Rewrite f with var -> 1/var, clearing negative powers."""
    dn = f.num.degree(var)
    dd = f.den.degree(var)
    num = _reverse(f.num, var, dn)
    den = _reverse(f.den, var, dd)
    return RatFunc.from_poly(num) / RatFunc.from_poly(den) * RatFunc.var(var, dd - dn)


def _reverse(p, var: str, d: int):
    from .poly import Poly
    coeffs = p.coeffs_in(var)
    return Poly.from_coeffs(var, {d - e: q for e, q in coeffs.items()})
