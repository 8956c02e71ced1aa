"""Generator alphabets and noncommutative polynomials.

Words are tuples of generator indices into a fixed totally ordered alphabet;
polynomials map words to RatFunc coefficients.  Normal forms are the
non-descending words with no adjacent inverse pair, relative to a rewrite
system derived elsewhere.
"""

from __future__ import annotations

from fractions import Fraction

from ..ratfunc import RatFunc, R0, R1


class GenAlphabet:
    """Totally ordered generator list with optional adjoined inverses.

    Each diagonal generator's inverse sits directly after it in the order,
    which makes inverse cancellation reachable by plain sorting rewrites.
    """

    def __init__(self, preset: str, N: int, names: list[str],
                 inverse_of: dict[int, int]):
        self.preset = preset
        self.N = N
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.inverse_of = inverse_of          # involution on indices
        self.base = [i for i, n in enumerate(names) if not n.endswith("'")]

    def __len__(self):
        return len(self.names)

    def gen(self, name: str) -> "NCPoly":
        return NCPoly(self, {(self.index[name],): R1})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): R1})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def word_text(self, word: tuple[int, ...]) -> str:
        return ".".join(self.names[g] for g in word) if word else "1"


def uq_alphabet(N: int) -> GenAlphabet:
    """Lower generators, then upper, inverses adjacent to their diagonals."""
    names: list[str] = []
    inverse_of: dict[int, int] = {}

    def push(name, with_inverse=False):
        names.append(name)
        if with_inverse:
            names.append(name + "'")
            inverse_of[len(names) - 2] = len(names) - 1
            inverse_of[len(names) - 1] = len(names) - 2

    for i in range(1, N + 1):
        for j in range(1, i + 1):
            push(f"l-{i}{j}", with_inverse=(i == j))
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            push(f"l+{i}{j}", with_inverse=(i == j))
    return GenAlphabet("Uqgl", N, names, inverse_of)


def ugl_alphabet(N: int) -> GenAlphabet:
    names = [f"E{i}{j}" for i in range(1, N + 1) for j in range(1, N + 1)]
    return GenAlphabet("Ugl", N, names, {})


class NCPoly:
    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: GenAlphabet, terms: dict[tuple[int, ...], RatFunc]):
        self.alphabet = alphabet
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet is other.alphabet and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, c.text()) for w, c in self.terms.items()))

    def __neg__(self):
        return NCPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, R0) + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        return NCPoly(self.alphabet, terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        terms: dict[tuple[int, ...], RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w, R0) + c1 * c2
                if s.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = s
        return NCPoly(self.alphabet, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "NCPoly":
        if isinstance(c, (int, Fraction)):
            c = RatFunc.const(c)
        return NCPoly(self.alphabet, {w: c * v for w, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            assert other.alphabet is self.alphabet
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            c = other if isinstance(other, RatFunc) else RatFunc.const(other)
            return NCPoly(self.alphabet, {(): c})
        return NotImplemented

    def coefficient(self, word: tuple[int, ...]) -> RatFunc:
        return self.terms.get(word, R0)

    def subs_coeffs(self, values: dict) -> "NCPoly":
        return NCPoly(self.alphabet,
                      {w: c.subs(values) for w, c in self.terms.items()})

    def text(self) -> str:
        if not self.terms:
            return "0"
        lines = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            lines.append(f"{self.alphabet.word_text(w)} : {self.terms[w].text()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"NCPoly({len(self.terms)} terms, deg {self.degree()})"
