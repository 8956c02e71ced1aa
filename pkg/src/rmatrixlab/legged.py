"""Sparse matrices with named tensor legs over an exact coefficient ring.

A LeggedMatrix acts on a tensor product of local spaces, one per leg; entries
are indexed by (row multi-index, column multi-index).  Entries are RatFunc by
default but any ring with +, *, unary - and is_zero() works (noncommutative
polynomial entries reuse the same class).  Each matrix carries a ledger of
unexpanded normalization-series factors; addition demands equal ledgers,
multiplication concatenates them.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .errors import BadLegSpec, LedgerMismatch, NotInvertible
from .ledger import Ledger, ledger_canonicalize
from .ratfunc import RatFunc, R0, R1

Index = tuple[int, ...]


def _is_zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else not v


class LeggedMatrix:
    __slots__ = ("dims", "entries", "ledger")

    def __init__(self, dims: tuple[int, ...], entries: dict | None = None,
                 ledger: Ledger | None = None):
        self.dims = tuple(dims)
        self.entries = entries if entries is not None else {}
        self.ledger = ledger if ledger is not None else Ledger()

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(dims: Iterable[int]) -> "LeggedMatrix":
        return LeggedMatrix(tuple(dims))

    @staticmethod
    def identity(dims: Iterable[int]) -> "LeggedMatrix":
        dims = tuple(dims)
        ent = {}
        for idx in _all_indices(dims):
            ent[(idx, idx)] = R1
        return LeggedMatrix(dims, ent)

    def copy(self) -> "LeggedMatrix":
        return LeggedMatrix(self.dims, dict(self.entries), self.ledger)

    # -- bookkeeping -------------------------------------------------------

    @property
    def legs(self) -> int:
        return len(self.dims)

    def get(self, row: Index, col: Index):
        return self.entries.get((row, col), R0)

    def set(self, row: Index, col: Index, value):
        if _is_zero(value):
            self.entries.pop((row, col), None)
        else:
            self.entries[(row, col)] = value

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, LeggedMatrix):
            return NotImplemented
        return (self.dims == other.dims and self.ledger == other.ledger
                and self.entries == other.entries)

    def same_entries(self, other: "LeggedMatrix") -> bool:
        return self.dims == other.dims and self.entries == other.entries

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        assert self.dims == other.dims
        if not (self.ledger == other.ledger):
            raise LedgerMismatch(
                f"cannot add ledgers {self.ledger.text()} and {other.ledger.text()}")
        ent = dict(self.entries)
        for key, v in other.entries.items():
            s = ent.get(key, R0) + v
            if _is_zero(s):
                ent.pop(key, None)
            else:
                ent[key] = s
        return LeggedMatrix(self.dims, ent, self.ledger)

    def __sub__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        return self + other.scale(-1)

    def scale(self, s) -> "LeggedMatrix":
        if isinstance(s, int):
            s = RatFunc.const(s)
        if _is_zero(s):
            return LeggedMatrix(self.dims, {}, self.ledger)
        return LeggedMatrix(self.dims, {k: s * v for k, v in self.entries.items()},
                            self.ledger)

    def __mul__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        assert isinstance(other, LeggedMatrix) and self.dims == other.dims
        by_mid: dict[Index, list] = {}
        for (row, mid), v in self.entries.items():
            by_mid.setdefault(mid, []).append((row, v))
        ent: dict = {}
        for (mid, col), w in other.entries.items():
            hits = by_mid.get(mid)
            if not hits:
                continue
            for row, v in hits:
                key = (row, col)
                s = ent.get(key, R0) + v * w
                if _is_zero(s):
                    ent.pop(key, None)
                else:
                    ent[key] = s
        led, comp = ledger_canonicalize(self.ledger.merged(other.ledger))
        out = LeggedMatrix(self.dims, ent, led)
        return out if comp == R1 else out.scale(comp)._with_ledger(led)

    def _with_ledger(self, led: Ledger) -> "LeggedMatrix":
        self.ledger = led
        return self

    def pow(self, k: int) -> "LeggedMatrix":
        assert k >= 1
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def map_entries(self, f: Callable) -> "LeggedMatrix":
        ent = {}
        for key, v in self.entries.items():
            w = f(v)
            if not _is_zero(w):
                ent[key] = w
        return LeggedMatrix(self.dims, ent, self.ledger)

    def subs(self, values: dict) -> "LeggedMatrix":
        led, comp = ledger_canonicalize(self.ledger.subs(values))
        out = self.map_entries(lambda v: v.subs(values))
        if not (comp == R1):
            out = out.scale(comp)
        out.ledger = led
        return out

    # -- leg operations ---------------------------------------------------------

    def transpose(self) -> "LeggedMatrix":
        return LeggedMatrix(self.dims,
                            {(c, r): v for (r, c), v in self.entries.items()},
                            self.ledger)

    def leg_transpose(self, legs: Iterable[int]) -> "LeggedMatrix":
        """Transposition applied on the stated legs only (involutive)."""
        legs = set(legs)
        for i in legs:
            if not 0 <= i < self.legs:
                raise BadLegSpec(f"leg {i} outside 0..{self.legs - 1}")
        ent = {}
        for (r, c), v in self.entries.items():
            nr = tuple(c[i] if i in legs else r[i] for i in range(self.legs))
            nc = tuple(r[i] if i in legs else c[i] for i in range(self.legs))
            ent[(nr, nc)] = v
        return LeggedMatrix(self.dims, ent, self.ledger)

    def partial_trace(self, legs: Iterable[int]) -> "LeggedMatrix":
        legs = sorted(set(legs))
        for i in legs:
            if not 0 <= i < self.legs:
                raise BadLegSpec(f"leg {i} outside 0..{self.legs - 1}")
        keep = [i for i in range(self.legs) if i not in legs]
        dims = tuple(self.dims[i] for i in keep)
        ent: dict = {}
        for (r, c), v in self.entries.items():
            if any(r[i] != c[i] for i in legs):
                continue
            key = (tuple(r[i] for i in keep), tuple(c[i] for i in keep))
            s = ent.get(key, R0) + v
            if _is_zero(s):
                ent.pop(key, None)
            else:
                ent[key] = s
        return LeggedMatrix(dims, ent, self.ledger)

    def embed(self, target_legs: list[int], total_dims: tuple[int, ...]) -> "LeggedMatrix":
        """Embed into a larger leg set, identity on untouched legs.

        `target_legs[i]` is the position of this matrix's leg i in the result;
        the list is ordered, so permuted targets permute the factors.
        """
        if len(target_legs) != self.legs:
            raise BadLegSpec("target leg list must match the leg count")
        if len(set(target_legs)) != len(target_legs):
            raise BadLegSpec("target legs must be distinct")
        for i, t in enumerate(target_legs):
            if not 0 <= t < len(total_dims):
                raise BadLegSpec(f"target leg {t} outside the total leg range")
            if total_dims[t] != self.dims[i]:
                raise BadLegSpec("dimension mismatch on embedded leg")
        spectators = [i for i in range(len(total_dims)) if i not in target_legs]
        ent: dict = {}
        for (r, c), v in self.entries.items():
            for spec_idx in _all_indices(tuple(total_dims[i] for i in spectators)):
                nr = [0] * len(total_dims)
                nc = [0] * len(total_dims)
                for pos, t in enumerate(target_legs):
                    nr[t] = r[pos]
                    nc[t] = c[pos]
                for pos, s in enumerate(spectators):
                    nr[s] = spec_idx[pos]
                    nc[s] = spec_idx[pos]
                ent[(tuple(nr), tuple(nc))] = v
        return LeggedMatrix(tuple(total_dims), ent, self.ledger)

    def tensor(self, other: "LeggedMatrix") -> "LeggedMatrix":
        dims = self.dims + other.dims
        ent = {}
        for (r1, c1), v1 in self.entries.items():
            for (r2, c2), v2 in other.entries.items():
                ent[(r1 + r2, c1 + c2)] = v1 * v2
        led, comp = ledger_canonicalize(self.ledger.merged(other.ledger))
        out = LeggedMatrix(dims, ent, led)
        return out if comp == R1 else out.scale(comp)._with_ledger(led)

    # -- trace / inverse ----------------------------------------------------------

    def trace(self):
        total = R0
        for (r, c), v in self.entries.items():
            if r == c:
                total = total + v
        return total

    def inverse(self) -> "LeggedMatrix":
        """Exact inverse by Gaussian elimination; ledger flips sign."""
        idx = list(_all_indices(self.dims))
        pos = {ix: i for i, ix in enumerate(idx)}
        n = len(idx)
        rows: list[dict[int, RatFunc]] = [dict() for _ in range(n)]
        for (r, c), v in self.entries.items():
            rows[pos[r]][pos[c]] = v
        inv: list[dict[int, RatFunc]] = [{i: R1} for i in range(n)]
        for col in range(n):
            piv = None
            best = None
            for r in range(col, n):
                if col in rows[r] and not rows[r][col].is_zero():
                    weight = len(rows[r])
                    if best is None or weight < best:
                        piv, best = r, weight
            if piv is None:
                raise NotInvertible("singular matrix")
            rows[col], rows[piv] = rows[piv], rows[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            p = rows[col][col].inv()
            rows[col] = {j: p * v for j, v in rows[col].items()}
            inv[col] = {j: p * v for j, v in inv[col].items()}
            for r in range(n):
                if r == col:
                    continue
                factor = rows[r].get(col)
                if factor is None or factor.is_zero():
                    continue
                for j, v in rows[col].items():
                    s = rows[r].get(j, R0) - factor * v
                    if s.is_zero():
                        rows[r].pop(j, None)
                    else:
                        rows[r][j] = s
                for j, v in inv[col].items():
                    s = inv[r].get(j, R0) - factor * v
                    if s.is_zero():
                        inv[r].pop(j, None)
                    else:
                        inv[r][j] = s
        ent = {}
        for i, row in enumerate(inv):
            for j, v in row.items():
                ent[(idx[i], idx[j])] = v
        led, comp = ledger_canonicalize(self.ledger.negated())
        out = LeggedMatrix(self.dims, ent, led)
        return out if comp == R1 else out.scale(comp)._with_ledger(led)

    # -- substitution-style evaluation ----------------------------------------------

    def eval_at(self, name: str, value) -> "LeggedMatrix":
        return self.subs({name: value})

    # -- serialization ----------------------------------------------------------------

    def text(self) -> str:
        lines = [f"legs {self.legs}", f"dims {' '.join(map(str, self.dims))}",
                 f"ledger {self.ledger.text()}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            vtxt = v.text() if hasattr(v, "text") else str(v)
            lines.append(f"{_fmt(r)};{_fmt(c)};{vtxt}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"LeggedMatrix(dims={self.dims}, nnz={len(self.entries)})"


def _fmt(idx: Index) -> str:
    return ",".join(str(i + 1) for i in idx)


def _all_indices(dims: tuple[int, ...]):
    if not dims:
        yield ()
        return
    for head in range(dims[0]):
        for rest in _all_indices(dims[1:]):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# Named operations on legged matrices
# ---------------------------------------------------------------------------

def permutation_P(N: int) -> LeggedMatrix:
    """Flip operator on two legs: P(x (x) y) = y (x) x."""
    assert N >= 1
    ent = {}
    for i in range(N):
        for j in range(N):
            ent[(((i, j)), ((j, i)))] = R1
    return LeggedMatrix((N, N), ent)


def tensor_embed(M: LeggedMatrix, target_legs: list[int], k_total: int,
                 dim: int | None = None) -> LeggedMatrix:
    """Embed M into `k_total` legs of uniform dimension (default: M's)."""
    d = dim if dim is not None else (M.dims[0] if M.dims else 1)
    return M.embed(target_legs, (d,) * k_total)


def partial_trace(M: LeggedMatrix, legs: Iterable[int]) -> LeggedMatrix:
    return M.partial_trace(legs)


def leg_transpose(M: LeggedMatrix, *legs: int) -> LeggedMatrix:
    return M.leg_transpose(legs)


def op_mul(X: LeggedMatrix, Y: LeggedMatrix, op_legs: Iterable[int]) -> LeggedMatrix:
    """Product that multiplies in the opposite algebra on the stated legs."""
    op_legs = list(op_legs)
    if not op_legs:
        return X * Y
    return (X.leg_transpose(op_legs) * Y.leg_transpose(op_legs)).leg_transpose(op_legs)


def op_inv(X: LeggedMatrix, op_legs: Iterable[int]) -> LeggedMatrix:
    """Inverse with respect to op_mul on the stated legs."""
    op_legs = list(op_legs)
    try:
        inv = X.leg_transpose(op_legs).inverse()
    except NotInvertible:
        raise NotInvertible("matrix is singular after the op-leg transpose twist")
    return inv.leg_transpose(op_legs)
