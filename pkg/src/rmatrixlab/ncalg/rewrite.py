"""Rewrite systems: straightening rules derived from exchange relations.

Rules rewrite descending adjacent generator pairs into combinations of
non-descending words, plus length-reducing inverse cancellations, so every
reduction terminates.  The quantized system is derived by solving the
exchange relations block by block and re-validated by substitution; the
classical system is the standard bracket straightening and is confluent.
"""

from __future__ import annotations

import sys
from functools import lru_cache

from ..errors import SelfCheckFailed, SolveFailure
from ..ratfunc import RatFunc, R0, R1, rf
from .words import GenAlphabet, NCPoly, ugl_alphabet, uq_alphabet

sys.setrecursionlimit(200000)

Rule = list[tuple[RatFunc, tuple[int, ...]]]


class RewriteSystem:
    def __init__(self, alphabet: GenAlphabet, rules: dict[tuple[int, int], Rule],
                 cancel: set[tuple[int, int]]):
        self.alphabet = alphabet
        self.rules = rules
        self.cancel = cancel
        self._cache: dict[tuple[int, ...], NCPoly] = {}

    # -- reduction ----------------------------------------------------------

    def reduce_word(self, word: tuple[int, ...], rightmost: bool = False) -> NCPoly:
        cache = self._cache if not rightmost else None
        if cache is not None and word in cache:
            return cache[word]
        positions = range(len(word) - 1)
        if rightmost:
            positions = reversed(positions)
        out = None
        for i in positions:
            pair = (word[i], word[i + 1])
            if pair in self.cancel:
                out = self.reduce_word(word[:i] + word[i + 2:], rightmost)
                break
            rule = self.rules.get(pair)
            if rule is not None:
                total = self.alphabet.zero()
                for coeff, mid in rule:
                    part = self.reduce_word(word[:i] + mid + word[i + 2:], rightmost)
                    total = total + part.scale(coeff)
                out = total
                break
        if out is None:
            out = NCPoly(self.alphabet, {word: R1})
        if cache is not None:
            cache[word] = out
        return out

    def reduce(self, p: NCPoly, rightmost: bool = False) -> NCPoly:
        total = self.alphabet.zero()
        for w, c in p.terms.items():
            total = total + self.reduce_word(w, rightmost).scale(c)
        return total

    def is_normal(self, word: tuple[int, ...]) -> bool:
        for i in range(len(word) - 1):
            if (word[i], word[i + 1]) in self.cancel or \
                    (word[i], word[i + 1]) in self.rules:
                return False
        return True


def nc_reduce(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.reduce(p)


# ---------------------------------------------------------------------------
# Classical enveloping-algebra rules
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def ugl_rules(N: int) -> RewriteSystem:
    """Bracket straightening for the matrix-unit generators (confluent)."""
    alpha = ugl_alphabet(N)

    def gen(i, j):
        return alpha.index[f"E{i}{j}"]

    rules: dict[tuple[int, int], Rule] = {}
    pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
    for (k, l) in pairs:
        for (i, j) in pairs:
            hi, lo = gen(k, l), gen(i, j)
            if hi <= lo:
                continue
            rule: Rule = [(R1, (lo, hi))]
            if l == i:
                rule.append((R1, (gen(k, j),)))
            if j == k:
                rule.append((RatFunc.const(-1), (gen(i, l),)))
            rules[(hi, lo)] = rule
    return RewriteSystem(alpha, rules, set())


# ---------------------------------------------------------------------------
# Quantized rules, solved from the exchange relations
# ---------------------------------------------------------------------------

def _sym_L(alpha: GenAlphabet, sign: str, N: int):
    """Triangular generator matrix with single-generator entries."""
    mat = [[alpha.zero() for _ in range(N)] for _ in range(N)]
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            lower = sign == "-" and i >= j
            upper = sign == "+" and i <= j
            if lower or upper:
                mat[i - 1][j - 1] = alpha.gen(f"l{sign}{i}{j}")
    return mat


def _weight(alpha: GenAlphabet, g: int, N: int) -> tuple[int, ...]:
    name = alpha.names[g].rstrip("'")
    i, j = int(name[2]), int(name[3])
    w = [0] * N
    w[i - 1] += 1
    w[j - 1] -= 1
    return tuple(w)


@lru_cache(maxsize=None)
def derive_uq_rules(N: int) -> RewriteSystem:
    """Straightening rules for the RLL presentation, solved and validated.

    Every relation component is a linear identity among length-2 words of a
    fixed weight; Gaussian elimination expresses each descending word through
    non-descending ones.  The derived rules are then substituted back into
    all defining relations, which must reduce to zero.
    """
    assert 1 <= N <= 3, "practical bound"
    from ..rmatrix import const_R
    alpha = uq_alphabet(N)
    R = const_R(N)
    Lp = _sym_L(alpha, "+", N)
    Lm = _sym_L(alpha, "-", N)

    equations: list[dict[tuple[int, ...], RatFunc]] = []
    for A, B in [(Lp, Lp), (Lm, Lm), (Lp, Lm)]:
        equations.extend(_relation_components(R, A, B, N, alpha))
    for i in range(1, N + 1):
        lp = alpha.index[f"l+{i}{i}"]
        lm = alpha.index[f"l-{i}{i}"]
        equations.append({(lp, lm): R1, (lm, lp): RatFunc.const(-1)})

    rules = _straighten(equations, alpha, N)
    rs = RewriteSystem(alpha, rules, set())
    _validate_base_rules(rs, R, Lp, Lm, N, alpha)
    _extend_with_inverses(rs)
    return rs


def _relation_components(R, A, B, N, alpha) -> list[dict]:
    """Entries of R A_1 B_2 - B_2 A_1 R over the two matrix legs."""
    out = []
    for ri in range(N):
        for rk in range(N):
            for cj in range(N):
                for cl in range(N):
                    acc = alpha.zero()
                    for pi in range(N):
                        for pk in range(N):
                            rc = R.get((ri, rk), (pi, pk))
                            if not rc.is_zero():
                                acc = acc + (A[pi][cj] * B[pk][cl]).scale(rc)
                            rc2 = R.get((pi, pk), (cj, cl))
                            if not rc2.is_zero():
                                acc = acc - (B[rk][pk] * A[ri][pi]).scale(rc2)
                    if not acc.is_zero():
                        out.append(dict(acc.terms))
    return out


def _straighten(equations, alpha: GenAlphabet, N: int) -> dict[tuple[int, int], Rule]:
    blocks: dict[tuple, list[dict]] = {}
    for eq in equations:
        w0 = next(iter(eq))
        wt = tuple(sum(c) for c in zip(*(_weight(alpha, g, N) for g in w0)))
        for w in eq:
            assert tuple(sum(c) for c in
                         zip(*(_weight(alpha, g, N) for g in w))) == wt
        blocks.setdefault(wt, []).append(eq)

    rules: dict[tuple[int, int], Rule] = {}
    for wt, eqs in sorted(blocks.items()):
        words = sorted({w for eq in eqs for w in eq})
        desc = [w for w in words if w[0] > w[1]]
        norm = [w for w in words if w[0] <= w[1]]
        cols = desc + norm
        col_of = {w: i for i, w in enumerate(cols)}
        rows = []
        for eq in eqs:
            row = [R0] * len(cols)
            for w, c in eq.items():
                row[col_of[w]] = c
            rows.append(row)
        pivots = _rref(rows)
        for prow, pcol in pivots:
            if pcol >= len(desc):
                raise SolveFailure(f"constraint among normal words in block {wt}")
        solved_cols = {pcol for _, pcol in pivots}
        for i, w in enumerate(desc):
            if i not in solved_cols:
                raise SolveFailure(f"descending word {alpha.word_text(w)} undetermined")
        for prow, pcol in pivots:
            w = desc[pcol]
            rule: Rule = []
            for j in range(len(desc), len(cols)):
                c = rows[prow][j]
                if not c.is_zero():
                    rule.append((-c, cols[j]))
            rules[w] = rule
    return rules


def _rref(rows: list[list[RatFunc]]) -> list[tuple[int, int]]:
    """In-place reduced row echelon form; returns (row, pivot column) pairs."""
    pivots = []
    prow = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for r in range(prow, len(rows)):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        inv = rows[prow][col].inv()
        rows[prow] = [inv * v for v in rows[prow]]
        for r in range(len(rows)):
            if r != prow and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[prow])]
        pivots.append((prow, col))
        prow += 1
        if prow == len(rows):
            break
    return pivots


def _validate_base_rules(rs: RewriteSystem, R, Lp, Lm, N, alpha):
    for A, B in [(Lp, Lp), (Lm, Lm), (Lp, Lm)]:
        for eq in _relation_components(R, A, B, N, alpha):
            if not rs.reduce(NCPoly(alpha, eq)).is_zero():
                raise SelfCheckFailed("derived rule fails its defining relation")


def _exchange_constant(rs: RewriteSystem, a: int, b: int) -> RatFunc:
    """c with a.b = c * b.a, for pairs whose rule is a pure exchange."""
    if a > b:
        rule = rs.rules.get((a, b))
        if rule is None or len(rule) != 1 or rule[0][1] != (b, a):
            raise SelfCheckFailed(
                f"pair ({rs.alphabet.names[a]}, {rs.alphabet.names[b]}) "
                "is not a monomial exchange")
        return rule[0][0]
    if a == b:
        return R1
    return _exchange_constant(rs, b, a).inv()


def _extend_with_inverses(rs: RewriteSystem):
    alpha = rs.alphabet
    inv = alpha.inverse_of
    for g, x in inv.items():
        if x < g:
            continue  # handle each generator/inverse pair once (g base, x inverse)
        rs.cancel.add((g, x))
        rs.cancel.add((x, g))
    for x in [i for i in range(len(alpha)) if alpha.names[i].endswith("'")]:
        d = inv[x]
        for h in range(len(alpha)):
            if h == x or h == d:
                continue
            if alpha.names[h].endswith("'"):
                e = inv[h]
                if e == d:
                    continue
                c = _exchange_constant(rs, d, e)
            else:
                c = _exchange_constant(rs, d, h).inv()
            # x.h = c * h.x
            if x > h:
                rs.rules[(x, h)] = [(c, (h, x))]
            else:
                rs.rules[(h, x)] = [(c.inv(), (x, h))]
