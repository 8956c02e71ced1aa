"""Multivariate polynomials over exact rationals.

Terms are stored sparsely as {exponent tuple: Fraction} against a sorted
tuple of variable names.  Everything downstream (rational functions, series,
matrix entries) reduces to arithmetic here, so the only performance-critical
routine is `poly_gcd`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable

ZERO = Fraction(0)
ONE = Fraction(1)


class Poly:
    """A polynomial in finitely many named commuting variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict[tuple[int, ...], Fraction]):
        self.vars = vars
        self.terms = terms

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        c = Fraction(c)
        return Poly((), {(): c} if c else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly.const(1)
        return Poly((name,), {(exp,): ONE})

    @staticmethod
    def zero() -> "Poly":
        return Poly((), {})

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(all(e == 0 for e in mono) for mono in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return ZERO
        assert self.is_const()
        return next(iter(self.terms.values()))

    def compress(self) -> "Poly":
        """Drop variables that appear with exponent 0 everywhere."""
        if not self.vars:
            return self
        used = [False] * len(self.vars)
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used[i] = True
        if all(used):
            return self
        keep = [i for i, u in enumerate(used) if u]
        newvars = tuple(self.vars[i] for i in keep)
        newterms = {}
        for mono, c in self.terms.items():
            newterms[tuple(mono[i] for i in keep)] = c
        return Poly(newvars, newterms)

    def degree(self, name: str) -> int:
        if name not in self.vars or not self.terms:
            return 0
        i = self.vars.index(name)
        return max(mono[i] for mono in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(mono) for mono in self.terms)

    def __hash__(self):
        p = self.compress()
        return hash((p.vars, frozenset(p.terms.items())))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = align(self, other)
        return a.terms == b.terms

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other):
        a, b = align(self, other)
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = terms.get(m, ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(a.vars, terms)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly(self.vars, {})
            return Poly(self.vars, {m: v * c for m, v in self.terms.items()})
        a, b = align(self, other)
        if not a.terms or not b.terms:
            return Poly(a.vars, {})
        terms: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = terms.get(m, ZERO) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Poly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        assert k >= 0
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: Fraction) -> "Poly":
        if not c:
            return Poly(self.vars, {})
        return Poly(self.vars, {m: v * c for m, v in self.terms.items()})

    # -- leading data (lex order on the sorted variable tuple) ------------

    def lead_mono(self) -> tuple[int, ...]:
        return max(self.terms)

    def lead_coeff(self) -> Fraction:
        return self.terms[max(self.terms)]

    # -- substitution / evaluation ----------------------------------------

    def subs_values(self, values: dict[str, Fraction]) -> "Poly":
        """Substitute exact numbers for some variables."""
        hit = [name in values for name in self.vars]
        if not any(hit):
            return self
        keep = [i for i, h in enumerate(hit) if not h]
        newvars = tuple(self.vars[i] for i in keep)
        terms: dict[tuple[int, ...], Fraction] = {}
        for mono, c in self.terms.items():
            for i, h in enumerate(hit):
                if h:
                    c = c * Fraction(values[self.vars[i]]) ** mono[i]
            m = tuple(mono[i] for i in keep)
            s = terms.get(m, ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Poly(newvars, terms)

    def coeffs_in(self, name: str) -> dict[int, "Poly"]:
        """View the polynomial as univariate in `name` with Poly coefficients."""
        if name not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for mono, c in self.terms.items():
            e = mono[i]
            m = mono[:i] + mono[i + 1:]
            out.setdefault(e, {})[m] = c
        return {e: Poly(rest, t) for e, t in out.items()}

    @staticmethod
    def from_coeffs(name: str, coeffs: dict[int, "Poly"]) -> "Poly":
        total = Poly.zero()
        xi = Poly.var(name)
        for e, p in coeffs.items():
            total = total + p * xi ** e
        return total

    # -- printing ----------------------------------------------------------

    def __repr__(self):
        return f"Poly({self.text()})"

    def text(self) -> str:
        """Canonical sum-of-monomials form with explicit integer exponents."""
        p = self.compress()
        if not p.terms:
            return "0"
        parts = []
        for mono in sorted(p.terms, reverse=True):
            c = p.terms[mono]
            factors = [str(c)]
            for name, e in zip(p.vars, mono):
                if e:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def align(a: Poly, b) -> tuple[Poly, Poly]:
    """Bring two polynomials over a common sorted variable tuple."""
    if isinstance(b, (int, Fraction)):
        b = Poly.const(b)
    if a.vars == b.vars:
        return a, b
    vs = tuple(sorted(set(a.vars) | set(b.vars)))
    return _remap(a, vs), _remap(b, vs)


def _remap(p: Poly, vs: tuple[str, ...]) -> Poly:
    if p.vars == vs:
        return p
    idx = [p.vars.index(v) if v in p.vars else -1 for v in vs]
    terms = {}
    for mono, c in p.terms.items():
        terms[tuple(mono[i] if i >= 0 else 0 for i in idx)] = c
    return Poly(vs, terms)


# ---------------------------------------------------------------------------
# Exact division and gcd
# ---------------------------------------------------------------------------

def try_div(a: Poly, b: Poly) -> Poly | None:
    """Return a/b when the division is exact, else None."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return Poly.zero()
    if b.is_const():
        return a.scale(ONE / b.const_value())
    a, b = align(a, b)
    rem = dict(a.terms)
    bl = max(b.terms)
    blc = b.terms[bl]
    quo: dict[tuple[int, ...], Fraction] = {}
    while rem:
        m = max(rem)
        q = tuple(x - y for x, y in zip(m, bl))
        if any(e < 0 for e in q):
            return None
        c = rem[m] / blc
        quo[q] = c
        for m2, c2 in b.terms.items():
            mm = tuple(x + y for x, y in zip(q, m2))
            s = rem.get(mm, ZERO) - c * c2
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return Poly(a.vars, quo)


def _int_content(p: Poly) -> Fraction:
    """Positive rational c with p/c integral and content-free; sign carried by lead."""
    if p.is_zero():
        return ONE
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = int_gcd(num, abs(c.numerator * (den // c.denominator)))
    content = Fraction(num, den)
    if p.terms[max(p.terms)] < 0:
        content = -content
    return content


def _mono_gcd(p: Poly) -> tuple[int, ...]:
    it = iter(p.terms)
    g = list(next(it))
    for mono in it:
        for i, e in enumerate(mono):
            if e < g[i]:
                g[i] = e
        if not any(g):
            break
    return tuple(g)


def _shift_mono(p: Poly, mono: tuple[int, ...], sign: int) -> Poly:
    if not any(mono):
        return p
    return Poly(p.vars, {tuple(x + sign * y for x, y in zip(m, mono)): c
                         for m, c in p.terms.items()})


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd normalized with content 1 and positive lex-leading coefficient."""
    if a.is_zero():
        return _make_primitive(b)
    if b.is_zero():
        return _make_primitive(a)
    a, b = align(a.compress(), b.compress())
    vs = a.vars

    mg = tuple(min(x, y) for x, y in zip(_mono_gcd(a), _mono_gcd(b)))
    a = _shift_mono(a, mg, -1)
    b = _shift_mono(b, mg, -1)

    if len(vs) == 1:
        g = _uni_gcd(a, b, vs[0])
    else:
        g = _gcd_primitive(_make_primitive(a), _make_primitive(b))
    g = _remap(_make_primitive(g).compress(), vs)
    return _shift_mono(g, mg, +1)


def _dense_int(p: Poly, x: str) -> list[int]:
    """Dense integer coefficient list of a univariate polynomial."""
    d = p.degree(x)
    out = [0] * (d + 1)
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    i = p.vars.index(x) if x in p.vars else None
    for mono, c in p.terms.items():
        e = mono[i] if i is not None else 0
        out[e] = int(c * den)
    g = 0
    for c in out:
        g = int_gcd(g, abs(c))
    return [c // g for c in out] if g > 1 else out


def _uni_gcd(a: Poly, b: Poly, x: str) -> Poly:
    """Primitive PRS over the integers, dense representation."""
    fa = _dense_int(a, x)
    fb = _dense_int(b, x)
    g = _uni_gcd_int(fa, fb)
    terms = {(e,): Fraction(c) for e, c in enumerate(g) if c}
    return Poly((x,), terms)


def _uni_gcd_int(f: list[int], g: list[int]) -> list[int]:
    def deg(p):
        return len(p) - 1

    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def content(p):
        c = 0
        for v in p:
            c = int_gcd(c, abs(v))
        return c or 1

    def primitive(p):
        c = content(p)
        return [v // c for v in p] if c > 1 else p

    f = primitive(strip(list(f)))
    g = primitive(strip(list(g)))
    if not f:
        return g or [1]
    if not g:
        return f
    if deg(f) < deg(g):
        f, g = g, f
    while True:
        # pseudo-remainder of f by g
        r = list(f)
        lg = g[-1]
        while len(r) >= len(g) and r:
            if r[-1] == 0:
                r.pop()
                continue
            lr = r[-1]
            shift = len(r) - len(g)
            r = [v * lg for v in r]
            for i, c in enumerate(g):
                r[i + shift] -= lr * c
            strip(r)
        if not r:
            g = primitive(g)
            if g and g[-1] < 0:
                g = [-v for v in g]
            return g
        if len(r) == 1:
            return [1]
        f, g = g, primitive(r)


def _make_primitive(p: Poly) -> Poly:
    if p.is_zero():
        return p
    c = _int_content(p)
    return p.scale(ONE / c)


def _gcd_primitive(a: Poly, b: Poly) -> Poly:
    a = a.compress()
    b = b.compress()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    # quick exits: exact divisibility is common after matrix cancellations
    if try_div(a, b) is not None:
        return b
    if try_div(b, a) is not None:
        return a
    common = set(a.vars) & set(b.vars)
    if not common:
        return Poly.const(1)
    # main variable: smallest combined degree to keep the PRS short
    x = min(common, key=lambda v: a.degree(v) + b.degree(v))
    ca = a.coeffs_in(x)
    cb = b.coeffs_in(x)
    cont_a = _content_of(ca)
    cont_b = _content_of(cb)
    cont = _gcd_primitive(_make_primitive(cont_a), _make_primitive(cont_b)) \
        if not (cont_a.is_const() and cont_b.is_const()) else Poly.const(1)
    pa = {e: _exact(p, cont_a) for e, p in ca.items()}
    pb = {e: _exact(p, cont_b) for e, p in cb.items()}
    g = _prs_gcd(pa, pb, x)
    return (Poly.from_coeffs(x, g) * cont) if isinstance(g, dict) else cont


def _content_of(coeffs: dict[int, Poly]) -> Poly:
    g = Poly.zero()
    for p in coeffs.values():
        g = poly_gcd(g, p)
        if g.is_const() and not g.is_zero():
            return Poly.const(1)
    return g


def _exact(p: Poly, d: Poly) -> Poly:
    if d.is_const() and d.const_value() == 1:
        return p
    q = try_div(p, d)
    assert q is not None, "content division must be exact"
    return q


def _uni_deg(p: dict[int, Poly]) -> int:
    return max(p) if p else -1


def _uni_scale(p: dict[int, Poly], s: Poly) -> dict[int, Poly]:
    return {e: c * s for e, c in p.items()}


def _uni_prem(f: dict[int, Poly], g: dict[int, Poly]) -> dict[int, Poly]:
    """Pseudo-remainder of f by g in the main variable."""
    df, dg = _uni_deg(f), _uni_deg(g)
    lg = g[dg]
    r = dict(f)
    while _uni_deg(r) >= dg and r:
        dr = _uni_deg(r)
        lr = r[dr]
        r = _uni_scale(r, lg)
        shift = dr - dg
        for e, c in g.items():
            m = e + shift
            s = r.get(m, Poly.zero()) - lr * c
            if s.is_zero():
                r.pop(m, None)
            else:
                r[m] = s
        r = {e: c for e, c in r.items() if not c.is_zero()}
    return r


def _uni_primitive(p: dict[int, Poly]) -> dict[int, Poly]:
    cont = _content_of(p)
    if cont.is_zero() or (cont.is_const() and cont.const_value() == 1):
        return p
    return {e: _exact(c, cont) for e, c in p.items()}


def _prs_gcd(f: dict[int, Poly], g: dict[int, Poly], x: str) -> dict[int, Poly] | None:
    """Primitive PRS gcd of two primitive `x`-polynomials."""
    if _uni_deg(f) < _uni_deg(g):
        f, g = g, f
    while True:
        r = _uni_prem(f, g)
        if not r:
            return _uni_primitive(g)
        if _uni_deg(r) == 0:
            return {0: Poly.const(1)}
        f, g = g, _uni_primitive(r)
