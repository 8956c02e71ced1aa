"""Reflection-type identities over the quantized algebra, verified by
reduction to the zero matrix, plus the centrality tester."""

from __future__ import annotations

from ..legged import LeggedMatrix, permutation_P, tensor_embed
from ..ratfunc import RatFunc, R1, rf
from ..rmatrix import ProductSpec, const_R, rbar, rmatrix_product
from .operators import (_uq_context, build_L, mat_reduce, mats_equal_reduced,
                        nc_identity, nc_triangular_inverse, quotient_op,
                        to_nc, upper_spectral)
from .rewrite import RewriteSystem, nc_reduce
from .words import NCPoly


def is_central(x: NCPoly, rs: RewriteSystem):
    """Reduce every generator commutator of x; returns (ok, witness)."""
    x = rs.reduce(x)
    for g in range(len(rs.alphabet)):
        gen = NCPoly(rs.alphabet, {(g,): R1})
        comm = rs.reduce(x * gen - gen * x)
        if not comm.is_zero():
            return False, f"[x, {rs.alphabet.names[g]}] != 0"
    return True, None


# ---------------------------------------------------------------------------
# shared builders
# ---------------------------------------------------------------------------

def _embed1(M: LeggedMatrix, leg: int, total: int, N: int) -> LeggedMatrix:
    return M.embed([leg], (N,) * total)


def spectral_quotient(N: int, leg: int, total: int, zvar: RatFunc,
                      uvar: RatFunc) -> LeggedMatrix:
    """The one-leg quotient operator embedded into a larger leg set."""
    return _embed1(quotient_op(N, rf("hb") / (zvar * uvar)), leg, total, N)


def _const_pair(N: int, total: int, legs: tuple[int, int]):
    rc = to_ncR(N, tensor_embed(const_R(N), [legs[0], legs[1]], total, N))
    rc21 = to_ncR(N, tensor_embed(const_R(N), [legs[1], legs[0]], total, N))
    return rc, rc21


def to_ncR(N: int, M: LeggedMatrix) -> LeggedMatrix:
    alpha = _uq_context(N)[1]
    return to_nc(alpha, M)


# ---------------------------------------------------------------------------
# catalog checks
# ---------------------------------------------------------------------------

def check_reflection_equation(N: int) -> bool:
    """Spectral reflection identity for the quotient operator, two legs."""
    rs, alpha, *_ = _uq_context(N)
    z1, z2, a, b = rf("z1"), rf("z2"), rf("a"), rf("b")
    x = z1 * a / (z2 * b)
    l1 = _embed1(quotient_op(N, rf("hb") / (z1 * a)), 0, 2, N)
    l2 = _embed1(quotient_op(N, rf("hb") / (z2 * b)), 1, 2, N)
    rz = to_nc(alpha, rbar(N, x))
    rz21 = to_nc(alpha, tensor_embed(rbar(N, x), [1, 0], 2, N))
    rc, rc21 = _const_pair(N, 2, (0, 1))
    lhs = rz * l1 * rc21 * l2
    rhs = l2 * rc * l1 * rz21
    return mats_equal_reduced(lhs, rhs, rs)


def check_start_identity(N: int) -> bool:
    """lower1^-1 R21 upper-or-lower2 exchange identity, both signs."""
    rs, alpha, lm, lp, lm_inv = _uq_context(N)
    rc21 = to_nc(alpha, tensor_embed(const_R(N), [1, 0], 2, N))
    m1_inv = lm_inv.embed([0], (N, N))
    for other in (lp, lm):
        o2 = other.embed([1], (N, N))
        lhs = m1_inv * rc21 * o2
        rhs = o2 * rc21 * m1_inv
        if not mats_equal_reduced(lhs, rhs, rs):
            return False
    return True


def _l_bracket(N: int, n: int, zvar: RatFunc, uvars: list[RatFunc],
               total: int, legs: list[int]) -> LeggedMatrix:
    """Ordered product of quotient operators with a shared spectral variable."""
    rs, alpha, lm, lp, lm_inv = _uq_context(N)
    out = None
    for leg, u in zip(legs, uvars):
        fac = _embed1(upper_spectral(N, rf("hb") / (zvar * u)), leg, total, N)
        out = fac if out is None else out * fac
    for leg in reversed(legs):
        fac = _embed1(lm_inv, leg, total, N)
        out = out * fac
    return mat_reduce(out, rs)


def check_product_formula(N: int, n: int) -> bool:
    """The n-fold quotient operator as an ordered product with braid factors."""
    rs, alpha, *_ = _uq_context(N)
    z = rf("z")
    uvars = [rf(f"a{i}") for i in range(1, n + 1)]
    lhs = _l_bracket(N, n, z, uvars, n, list(range(n)))
    factors = []
    for i in range(n):
        factors.append(_embed1(quotient_op(N, rf("hb") / (z * uvars[i])), i, n, N))
        for s in range(i + 1, n):
            factors.append(to_nc(alpha, tensor_embed(const_R(N), [s, i], n, N)))
    for r in range(n - 2, -1, -1):
        for s in range(n - 1, r, -1):
            factors.append(to_nc(alpha,
                                 tensor_embed(const_R(N), [s, r], n, N).inverse()))
    rhs = factors[0]
    for f in factors[1:]:
        rhs = rhs * f
    return mats_equal_reduced(lhs, mat_reduce(rhs, rs), rs)


def check_exchange_identity(N: int, n: int, m: int) -> bool:
    """The two-group reflection exchange identity for ordered products."""
    rs, alpha, *_ = _uq_context(N)
    total = n + m
    z1, z2 = rf("z1"), rf("z2")
    uvars = [rf(f"a{i}") for i in range(1, n + 1)]
    vvars = [rf(f"b{j}") for j in range(1, m + 1)]
    g1 = list(zip(range(n), uvars))
    g2 = list(zip(range(n, total), vvars))
    l13 = _l_bracket(N, n, z1, uvars, total, list(range(n)))
    l23 = _l_bracket(N, m, z2, vvars, total, list(range(n, total)))

    def prod(kind, order, z_arg=None):
        spec = ProductSpec(N=N, group1=g1, group2=g2, total_legs=total,
                           z_arg=z_arg, order=order, kind=kind)
        return to_nc(alpha, rmatrix_product(spec))

    zratio = z1 / z2
    lhs = prod("rbar", "12", zratio) * l13 * prod("const", "21") * l23
    rhs = l23 * prod("const", "12") * l13 * prod("rbar", "21", zratio)
    return mats_equal_reduced(lhs, rhs, rs)


def check_quotient_reflection(N: int) -> bool:
    """Constant reflection relation for minus upper*lower^-1."""
    rs, alpha, lm, lp, lm_inv = _uq_context(N)
    K = mat_reduce(lp * lm_inv, rs)
    L = K.map_entries(lambda v: -v)
    l1 = L.embed([0], (N, N))
    l2 = L.embed([1], (N, N))
    rc, rc21 = _const_pair(N, 2, (0, 1))
    lhs = rc * l1 * rc21 * l2
    rhs = l2 * rc * l1 * rc21
    return mats_equal_reduced(lhs, rhs, rs)


def check_rules_soundness(N: int) -> bool:
    """Re-derive the rewrite system; derivation self-validates."""
    from .rewrite import derive_uq_rules
    derive_uq_rules.cache_clear()
    derive_uq_rules(N)
    return True


def check_vector_rep(N: int) -> bool:
    from .operators import vector_rep
    vector_rep(N)
    return True


def check_ugl_confluence_spotcheck(N: int, trials: int = 12) -> bool:
    """Random words reduce identically under two reduction strategies."""
    import random
    from .rewrite import ugl_rules
    rng = random.Random(20240 + N)
    rs = ugl_rules(N)
    k = len(rs.alphabet)
    for _ in range(trials):
        word = tuple(rng.randrange(k) for _ in range(4))
        left = rs.reduce_word(word)
        right = rs.reduce_word(word, rightmost=True)
        if not (left - right).is_zero():
            return False
    return True


def check_triangular_inverse_roundtrip(N: int) -> bool:
    rs, alpha, lm, lp, lm_inv = _uq_context(N)
    ident = nc_identity(alpha, (N,))
    if not mats_equal_reduced(mat_reduce(lm * lm_inv, rs), ident, rs):
        return False
    if not mats_equal_reduced(mat_reduce(lm_inv * lm, rs), ident, rs):
        return False
    lp_inv = nc_triangular_inverse(lp, rs)
    return mats_equal_reduced(mat_reduce(lp * lp_inv, rs), ident, rs)
