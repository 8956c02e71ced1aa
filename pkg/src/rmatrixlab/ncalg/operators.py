"""Matrices over noncommutative polynomial rings: generator matrices,
spectral extensions, triangular inversion, and the defining-relation-checked
vector representation."""

from __future__ import annotations

from functools import lru_cache

from ..errors import (DiagonalNotInvertible, NotTriangular,
                      RelationCheckFailed)
from ..legged import LeggedMatrix, tensor_embed
from ..ratfunc import RatFunc, R1, rf
from ..rmatrix import const_R
from .rewrite import RewriteSystem, derive_uq_rules
from .words import GenAlphabet, NCPoly


def nc_identity(alpha: GenAlphabet, dims) -> LeggedMatrix:
    out = LeggedMatrix.zero(tuple(dims))
    from ..legged import _all_indices
    for idx in _all_indices(tuple(dims)):
        out.set(idx, idx, alpha.one())
    return out


def to_nc(alpha: GenAlphabet, M: LeggedMatrix) -> LeggedMatrix:
    """Lift a scalar-entried matrix into the noncommutative entry ring."""
    return M.map_entries(lambda v: NCPoly(alpha, {(): v}))


def mat_reduce(M: LeggedMatrix, rs: RewriteSystem) -> LeggedMatrix:
    return M.map_entries(lambda v: rs.reduce(v) if isinstance(v, NCPoly) else v)


def mats_equal_reduced(A: LeggedMatrix, B: LeggedMatrix, rs: RewriteSystem) -> bool:
    return mat_reduce(_sub(A, B), rs).is_zero()


def _sub(A: LeggedMatrix, B: LeggedMatrix) -> LeggedMatrix:
    ent = dict(A.entries)
    for key, v in B.entries.items():
        cur = ent.get(key)
        nv = (-v) if cur is None else cur - v
        if hasattr(nv, "is_zero") and nv.is_zero():
            ent.pop(key, None)
        else:
            ent[key] = nv
    return LeggedMatrix(A.dims, ent, A.ledger)


# ---------------------------------------------------------------------------
# Generator matrices and spectral extensions
# ---------------------------------------------------------------------------

def lower_mat(alpha: GenAlphabet, N: int) -> LeggedMatrix:
    m = LeggedMatrix.zero((N,))
    for i in range(1, N + 1):
        for j in range(1, i + 1):
            m.set((i - 1,), (j - 1,), alpha.gen(f"l-{i}{j}"))
    return m


def upper_mat(alpha: GenAlphabet, N: int) -> LeggedMatrix:
    m = LeggedMatrix.zero((N,))
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            m.set((i - 1,), (j - 1,), alpha.gen(f"l+{i}{j}"))
    return m


def nc_triangular_inverse(M: LeggedMatrix, rs: RewriteSystem) -> LeggedMatrix:
    """Inverse of a triangular generator matrix by back substitution.

    Factor order is preserved: X_ii = M_ii^-1 and the off-diagonal entries
    collect M_ii^-1 * (sum M_ik X_kj) with the inverse on the left.
    """
    alpha = rs.alphabet
    N = M.dims[0]
    assert M.legs == 1
    lower = all(r >= c for ((r,), (c,)) in M.entries)
    upper = all(r <= c for ((r,), (c,)) in M.entries)
    if not (lower or upper):
        raise NotTriangular("matrix is neither lower nor upper triangular")
    inv_diag = {}
    for i in range(N):
        d = M.get((i,), (i,))
        if not isinstance(d, NCPoly) or len(d.terms) != 1:
            raise DiagonalNotInvertible(f"diagonal entry {i} is not a generator")
        (word, coeff), = d.terms.items()
        if len(word) != 1 or word[0] not in alpha.inverse_of:
            raise DiagonalNotInvertible(f"diagonal entry {i} has no adjoined inverse")
        inv_diag[i] = NCPoly(alpha, {(alpha.inverse_of[word[0]],): coeff.inv()})
    X = LeggedMatrix.zero((N,))
    for i in range(N):
        X.set((i,), (i,), inv_diag[i])
    order = range(N) if lower else range(N - 1, -1, -1)
    for i in order:
        js = range(i) if lower else range(N - 1, i, -1)
        for j in js:
            acc = alpha.zero()
            ks = range(j, i) if lower else range(i + 1, j + 1)
            for k in ks:
                m = M.get((i,), (k,))
                x = X.get((k,), (j,))
                if not (_zero(m) or _zero(x)):
                    acc = acc + m * x
            if not acc.is_zero():
                X.set((i,), (j,), rs.reduce(-(inv_diag[i] * acc)))
    return X


def _zero(v) -> bool:
    return not isinstance(v, NCPoly) or v.is_zero()


# ---------------------------------------------------------------------------
# Spectral generator operators
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _uq_context(N: int):
    rs = derive_uq_rules(N)
    alpha = rs.alphabet
    lm = lower_mat(alpha, N)
    lp = upper_mat(alpha, N)
    lm_inv = nc_triangular_inverse(lm, rs)
    return rs, alpha, lm, lp, lm_inv


def upper_spectral(N: int, coeff: RatFunc) -> LeggedMatrix:
    """One-leg matrix of the shifted upper family: lower + coeff * upper."""
    _, alpha, lm, lp, _ = _uq_context(N)
    return lm + lp.map_entries(lambda v: v.scale(coeff))


def quotient_op(N: int, coeff: RatFunc) -> LeggedMatrix:
    """1 + coeff * upper*lower^-1, the one-leg reflection-type operator."""
    rs, alpha, _, lp, lm_inv = _uq_context(N)
    K = mat_reduce(lp * lm_inv, rs)
    return nc_identity(alpha, (N,)) + K.map_entries(lambda v: v.scale(coeff))


def build_L(N: int, zvar: RatFunc, uvar: RatFunc) -> dict:
    """The spectral operator family for one leg.

    Returns the shifted-upper matrix, the plain lower matrix and its inverse,
    and the quotient form 1 + hb/(z*u) * upper*lower^-1; `uvar` is the
    multiplicative symbol of the additive parameter.
    """
    rs, alpha, lm, lp, lm_inv = _uq_context(N)
    coeff = rf("hb") / (zvar * uvar)
    return {
        "plus_z": upper_spectral(N, coeff),
        "minus": lm,
        "minus_inv": lm_inv,
        "op": quotient_op(N, coeff),
        "rules": rs,
        "alphabet": alpha,
    }


# ---------------------------------------------------------------------------
# Vector representation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def vector_rep(N: int) -> dict[str, LeggedMatrix]:
    """Images of the triangular generators on the defining column space.

    The candidate assignment is accepted only after every defining exchange
    relation is verified on the nose; a failing candidate raises.
    """
    assert N <= 3
    q = rf("q")
    b = q - q.inv()
    images: dict[str, LeggedMatrix] = {}

    def unit(i, j, scale) -> LeggedMatrix:
        m = LeggedMatrix.zero((N,))
        m.set((i - 1,), (j - 1,), scale)
        return m

    ident = LeggedMatrix.identity((N,))
    for i in range(1, N + 1):
        images[f"l+{i}{i}"] = ident + unit(i, i, q - R1)
        images[f"l-{i}{i}"] = ident + unit(i, i, q.inv() - R1)
        for j in range(i + 1, N + 1):
            images[f"l+{i}{j}"] = unit(i, j, b)
            images[f"l-{j}{i}"] = unit(j, i, -b)
    _check_rep_relations(N, images)
    for i in range(1, N + 1):
        for s in "+-":
            images[f"l{s}{i}{i}'"] = images[f"l{s}{i}{i}"].inverse()
    return images


def _rep_T(N: int, images: dict, sign: str) -> LeggedMatrix:
    out = LeggedMatrix.zero((N, N))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            name = f"l{sign}{i}{j}"
            if name not in images:
                continue
            m = images[name]
            for (r,), (c,) in list(m.entries):
                out.set((i - 1, r), (j - 1, c), m.get((r,), (c,)))
    return out


def _check_rep_relations(N: int, images: dict):
    R = tensor_embed(const_R(N), [0, 1], 3, N)
    tp = _rep_T(N, images, "+")
    tm = _rep_T(N, images, "-")
    for A, B in [(tp, tp), (tm, tm), (tp, tm)]:
        a13 = A.embed([0, 2], (N, N, N))
        b23 = B.embed([1, 2], (N, N, N))
        if R * a13 * b23 != b23 * a13 * R:
            raise RelationCheckFailed("vector representation fails an exchange relation")
    for i in range(1, N + 1):
        lp = images[f"l+{i}{i}"]
        lm = images[f"l-{i}{i}"]
        if lp * lm != lm * lp:
            raise RelationCheckFailed("diagonal images do not commute")


def rep_apply(images: dict[str, LeggedMatrix], p: NCPoly, N: int) -> LeggedMatrix:
    """Extend the representation multiplicatively to a polynomial."""
    out = LeggedMatrix.zero((N,))
    for word, coeff in p.terms.items():
        m = LeggedMatrix.identity((N,)).scale(coeff)
        for g in word:
            m = m * images[p.alphabet.names[g]]
        out = out + m
    return out


def rep_apply_matrix(images: dict, M: LeggedMatrix, N: int) -> LeggedMatrix:
    """Apply the representation entrywise: adds one representation leg."""
    dims = M.dims + (N,)
    out = LeggedMatrix.zero(dims)
    for (r, c), v in M.entries.items():
        block = rep_apply(images, v, N) if isinstance(v, NCPoly) \
            else LeggedMatrix.identity((N,)).scale(v)
        for (br,), (bc,) in list(block.entries):
            out.set(r + (br,), c + (bc,),
                    out.get(r + (br,), c + (bc,)) + block.get((br,), (bc,)))
    return out
