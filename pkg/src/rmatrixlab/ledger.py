"""Symbolic bookkeeping for unexpanded normalization series.

Spectral R-matrices carry scalar series factors that are never expanded in
exact checks.  Each factor is a signed token `name(arg)` where `name` is one
of the two normalization series ('f' for the multiplicative regime, 'g' for
the additive one) together with the rank it belongs to.  Canonicalization
applies the series' functional equation to move arguments into a fundamental
window, multiplying an explicit rational compensation, and cancels
opposite-sign tokens with equal canonical arguments.

'g' additionally gets a reflection rule g(w)g(-w) = 1/(1 - w^-2), the scalar
form of the unitarity of the normalized additive R-matrix; it is verified
against the recursive series solver in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfunc import RatFunc, R1, rf


def phi_f(N: int, arg: RatFunc) -> RatFunc:
    """Multiplier in f(z*q^(2N)) = f(z) * phi_f(N, z)."""
    q = rf("q")
    one = R1
    return ((one - arg * q ** 2) * (one - arg * q ** (2 * N - 2))
            / ((one - arg) * (one - arg * q ** (2 * N))))


def phi_g(arg: RatFunc) -> RatFunc:
    """Multiplier in g(w + N) = g(w) * phi_g(w)."""
    return R1 - arg ** -2


class Ledger:
    """Signed multiset of normalization-series tokens."""

    __slots__ = ("tokens",)

    def __init__(self, tokens: dict | None = None):
        # key -> [name, N, arg, count]
        self.tokens = tokens or {}

    @staticmethod
    def single(name: str, N: int, arg: RatFunc, count: int = 1) -> "Ledger":
        led = Ledger()
        led._bump(name, N, arg, count)
        return led

    def _bump(self, name: str, N: int, arg: RatFunc, count: int):
        key = (name, N, arg.text())
        if key in self.tokens:
            self.tokens[key][3] += count
            if self.tokens[key][3] == 0:
                del self.tokens[key]
        elif count:
            self.tokens[key] = [name, N, arg, count]

    def is_empty(self) -> bool:
        return not self.tokens

    def merged(self, other: "Ledger") -> "Ledger":
        out = Ledger({k: v[:] for k, v in self.tokens.items()})
        for name, N, arg, count in other.tokens.values():
            out._bump(name, N, arg, count)
        return out

    def negated(self) -> "Ledger":
        return Ledger({k: [v[0], v[1], v[2], -v[3]] for k, v in self.tokens.items()})

    def scaled(self, k: int) -> "Ledger":
        if k == 0:
            return Ledger()
        return Ledger({key: [v[0], v[1], v[2], v[3] * k] for key, v in self.tokens.items()})

    def subs(self, values: dict) -> "Ledger":
        out = Ledger()
        for name, N, arg, count in self.tokens.values():
            out._bump(name, N, arg.subs(values), count)
        return out

    def __eq__(self, other):
        if not isinstance(other, Ledger):
            return NotImplemented
        return {k: v[3] for k, v in self.tokens.items()} == \
               {k: v[3] for k, v in other.tokens.items()}

    def text(self) -> str:
        if not self.tokens:
            return "-"
        parts = []
        for key in sorted(self.tokens):
            name, N, arg, count = self.tokens[key]
            parts.append(f"{name}[{N}]({arg.text()})^{count}")
        return " * ".join(parts)

    def __repr__(self):
        return f"Ledger({self.text()})"


def ledger_canonicalize(led: Ledger, compensation: RatFunc = R1) -> tuple[Ledger, RatFunc]:
    """Canonical ledger plus the rational factor picked up along the way.

    Multiplicative tokens get their q-exponent shifted into [0, 2N) via the
    f functional equation; additive tokens get their constant term shifted
    into [0, N) via the g functional equation, after g-reflection pairs are
    resolved.  Opposite-sign tokens with equal canonical arguments cancel.
    """
    comp = compensation
    # g-reflection pass: same-sign pairs with arguments summing to zero
    entries = list(led.tokens.values())
    out = Ledger()
    used = [False] * len(entries)
    for i, (name, N, arg, count) in enumerate(entries):
        if used[i] or name != "g":
            continue
        for j in range(i + 1, len(entries)):
            if used[j]:
                continue
            name2, N2, arg2, count2 = entries[j]
            if name2 != "g" or N2 != N:
                continue
            if (arg + arg2).is_zero() and count * count2 > 0:
                step = 1 if count > 0 else -1
                pairs = min(abs(count), abs(count2))
                comp = comp * (phi_g(arg).inv()) ** (step * pairs)
                count -= step * pairs
                entries[j] = [name2, N2, arg2, count2 - step * pairs]
                if entries[j][3] == 0:
                    used[j] = True
                if count == 0:
                    break
        entries[i] = [name, N, arg, count]
    for i, (name, N, arg, count) in enumerate(entries):
        if used[i] or count == 0:
            continue
        if name == "f":
            if arg.is_zero():
                continue        # f(0) = 1
            arg, comp = _window_f(N, arg, count, comp)
        elif name == "g":
            arg, comp = _window_g(N, arg, count, comp)
        out._bump(name, N, arg, count)
    return out, comp


def _window_f(N: int, arg: RatFunc, count: int, comp: RatFunc):
    e = _q_exponent(arg)
    if e is None:
        return arg, comp
    while e >= 2 * N:
        arg = arg * rf("q", -2 * N)
        comp = comp * phi_f(N, arg) ** count
        e -= 2 * N
    while e < 0:
        comp = comp * phi_f(N, arg) ** (-count)
        arg = arg * rf("q", 2 * N)
        e += 2 * N
    return arg, comp


def _window_g(N: int, arg: RatFunc, count: int, comp: RatFunc):
    c = _const_term(arg)
    if c is None:
        return arg, comp
    while c >= N:
        arg = arg - RatFunc.const(N)
        comp = comp * phi_g(arg) ** count
        c -= N
    while c < 0:
        comp = comp * phi_g(arg) ** (-count)
        arg = arg + RatFunc.const(N)
        c += N
    return arg, comp


def _q_exponent(arg: RatFunc) -> int | None:
    """q-exponent of a Laurent monomial argument, None when not a monomial."""
    if len(arg.num.terms) != 1 or len(arg.den.terms) != 1:
        return None
    e = 0
    if "q" in arg.num.vars:
        (mono,) = arg.num.terms
        e += mono[arg.num.vars.index("q")]
    if "q" in arg.den.vars:
        (mono,) = arg.den.terms
        e -= mono[arg.den.vars.index("q")]
    return e


def _const_term(arg: RatFunc) -> Fraction | None:
    """Constant term of an affine argument (polynomial, denominator 1)."""
    if not (arg.den.is_const() and arg.den.const_value() == 1):
        return None
    zero_mono = (0,) * len(arg.num.vars)
    return arg.num.terms.get(zero_mono, Fraction(0))


def eval_tokens_at_zero(led: Ledger, var: str) -> tuple[Ledger, bool]:
    """Resolve multiplicative tokens under the substitution var -> 0.

    Arguments vanishing at 0 give f(0) = 1 and drop out; arguments blowing
    up give the common limit value of f at infinity, which must net to
    multiplicity zero across the ledger to cancel.  Returns the residual
    ledger and whether the limit values balanced.
    """
    out = Ledger()
    inf_count = 0
    for name, N, arg, count in led.tokens.values():
        if var not in arg.variables():
            out._bump(name, N, arg, count)
            continue
        v = arg.valuation(var)
        if v > 0:
            continue
        if v < 0:
            inf_count += count
            continue
        out._bump(name, N, arg.eval_at(var, 0), count)
    return out, inf_count == 0
