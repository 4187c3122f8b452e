"""The l1 seminorm on homology, computed exactly, with dual certificates.

The seminorm of a cycle z in degree n is the minimum of ||z - d(b)||_1
over chains b of degree n+1.  This is a linear program; it is solved by
an exact rational simplex method, and the simplex multipliers at the
optimum give a functional phi with ||phi||_inf <= 1, phi vanishing on
boundaries, and phi(z) equal to the optimal value.  Both sides of that
equality are verified exactly on every call; a mismatch would mean a
solver bug and raises InternalInvariantError.
"""

from __future__ import annotations

from fractions import Fraction

from . import exactlp
from .chains import (RING_INT, RING_RAT, Chain, ChainComplex, Cochain,
                     fundamental_cycle)
from .core import InternalInvariantError, Multicomplex, MulticomplexError


class SeminormResult:
    """Optimal value plus certificates for a seminorm computation.

    optimal_representative is z - boundary(bounding_chain) and attains
    the value; dual_certificate pairs with z to the value and has
    sup-norm at most one while vanishing on all boundaries.
    """

    def __init__(self, value, optimal_representative, bounding_chain,
                 dual_certificate):
        self.value = value
        self.optimal_representative = optimal_representative
        self.bounding_chain = bounding_chain
        self.dual_certificate = dual_certificate


def _as_rational_chain(chain: Chain) -> Chain:
    if chain.ring == RING_RAT:
        return chain
    return Chain(chain.degree, RING_RAT, dict(chain.items()))


def seminorm_l1(cc: ChainComplex, z: Chain) -> SeminormResult:
    """Exact l1 seminorm of the class of the cycle z in its complex."""
    z = _as_rational_chain(z)
    n = z.degree
    for key in z.support():
        cc.index_of(n, key)
    if not cc.boundary_of(z).is_zero:
        raise MulticomplexError("seminorm_l1 expects a cycle")
    m = cc.dim(n)
    if m == 0:
        zero = Chain(n, RING_RAT)
        return SeminormResult(Fraction(0), zero, Chain(n + 1, RING_RAT),
                              Cochain(n, RING_RAT))
    k = cc.dim(n + 1)
    target = [Fraction(v) for v in cc.vector_of(z)]

    # variables: u_i, w_i with u - w = z - d(b), then b split as p - q
    columns = []
    cost = []
    for i in range(m):
        col = [Fraction(0)] * m
        col[i] = Fraction(1)
        columns.append(col)
        cost.append(Fraction(1))
    for i in range(m):
        col = [Fraction(0)] * m
        col[i] = Fraction(-1)
        columns.append(col)
        cost.append(Fraction(1))
    bnd_cols = []
    for j in range(k):
        col = [Fraction(0)] * m
        for row, coef in cc.column(n + 1, j):
            col[row] += coef
        bnd_cols.append(col)
        columns.append(col)
        cost.append(Fraction(0))
    for j in range(k):
        columns.append([-v for v in bnd_cols[j]])
        cost.append(Fraction(0))

    basis = [i if target[i] >= 0 else m + i for i in range(m)]
    res = exactlp.solve(columns, target, cost, basis)

    rep_vec = [res.x[i] - res.x[m + i] for i in range(m)]
    b_vec = [res.x[2 * m + j] - res.x[2 * m + k + j] for j in range(k)]
    rep = cc.chain_from_vector(n, rep_vec, RING_RAT)
    bchain = cc.chain_from_vector(n + 1, b_vec, RING_RAT)

    # exact certification of the whole package
    if (z - cc.boundary_of(bchain)) != rep:
        raise InternalInvariantError("representative and bounding chain "
                                     "disagree")
    if rep.l1_norm() != res.value:
        raise InternalInvariantError("optimal value does not match the "
                                     "representative norm")
    y = res.y
    if any(abs(v) > 1 for v in y):
        raise InternalInvariantError("dual certificate exceeds sup-norm one")
    for col in bnd_cols:
        if sum(a * v for a, v in zip(col, y)) != 0:
            raise InternalInvariantError("dual certificate does not vanish "
                                         "on boundaries")
    pairing = sum(t * v for t, v in zip(target, y))
    if pairing != res.value:
        raise InternalInvariantError("duality gap is not zero")

    labels = cc.basis(n)
    phi = Cochain(n, RING_RAT,
                  {labels[i]: y[i] for i in range(m) if y[i] != 0})
    return SeminormResult(res.value, rep, bchain, phi)


def dual_check(cc: ChainComplex, z: Chain) -> bool:
    """True when the dual certificate pairs with z to the primal optimum.

    seminorm_l1 already refuses to return on a nonzero gap, so this is an
    auditable restatement of that guarantee rather than a new computation.
    """
    res = seminorm_l1(cc, z)
    zq = _as_rational_chain(z)
    return res.dual_certificate.pairing(zq) == res.value


class VolumeResult:
    def __init__(self, value, cycle, seminorm):
        self.value = value
        self.cycle = cycle
        self.seminorm = seminorm


def simplicial_volume(mc: Multicomplex) -> VolumeResult:
    """Seminorm of the rational fundamental cycle on this triangulation.

    This measures the fixed complex only: it is the minimal l1 size of a
    real cycle representing the integral fundamental class within the
    given reduced complex, an upper bound for any quantity minimized over
    all triangulations of the same space.
    """
    from .chains import build_reduced_chain_complex

    fc = fundamental_cycle(mc, ring=RING_INT)
    cc = build_reduced_chain_complex(mc, ring=RING_RAT)
    z = Chain(fc.degree, RING_RAT, dict(fc.items()))
    res = seminorm_l1(cc, z)
    return VolumeResult(res.value, fc, res)


class IntegralSeminormResult:
    """Outcome of the bounded integral search.

    best is the least ||z + d(b)||_1 found; certified says whether the
    whole coefficient box was exhausted, making best the true minimum
    over it.  status is "exact" or "unknown" accordingly.
    """

    def __init__(self, best, certified, bounding_chain, representative):
        self.best = best
        self.certified = certified
        self.bounding_chain = bounding_chain
        self.representative = representative

    @property
    def status(self):
        return "exact" if self.certified else "unknown"

    @property
    def value(self):
        return self.best if self.certified else None


def integral_seminorm_bruteforce(cc: ChainComplex, z: Chain,
                                 coeff_bound: int,
                                 support_bound=None) -> IntegralSeminormResult:
    """Minimum of ||z + d(b)||_1 over integral b with |b_j| <= coeff_bound.

    Depth-first search over the coefficient box with sound pruning; when
    support_bound caps the number of nonzero coefficients of b the search
    region is truncated and the result is only certified if the incumbent
    is exact anyway (norm zero, or no truncation happened).
    """
    if z.ring != RING_INT:
        terms = {}
        for key, val in z.items():
            if val.denominator != 1:
                raise MulticomplexError(
                    "integral search needs an integral chain")
            terms[key] = int(val)
        z = Chain(z.degree, RING_INT, terms)
    if coeff_bound < 0:
        raise MulticomplexError("coefficient bound must be >= 0")
    n = z.degree
    for key in z.support():
        cc.index_of(n, key)
    m = cc.dim(n)
    k = cc.dim(n + 1)
    res = cc.vector_of(z)
    res = [int(v) for v in res]
    cols = [list(cc.column(n + 1, j)) for j in range(k)]

    # rows no column at position >= j can still change
    suffix_rows = [set() for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        suffix_rows[j] = suffix_rows[j + 1] | {r for r, _ in cols[j]}
    # largest possible norm decrease by columns at position >= j
    suffix_power = [0] * (k + 1)
    for j in range(k - 1, -1, -1):
        suffix_power[j] = suffix_power[j + 1] + coeff_bound * sum(
            abs(c) for _, c in cols[j])

    values = [0]
    for a in range(1, coeff_bound + 1):
        values.extend((a, -a))

    state = {"best": sum(abs(v) for v in res), "vec": [0] * k,
             "cur": [0] * k, "truncated": False}
    norm0 = state["best"]

    def frozen_norm(j):
        reach = suffix_rows[j]
        return sum(abs(res[r]) for r in range(m) if r not in reach)

    def dfs(j, norm, used):
        if norm < state["best"]:
            state["best"] = norm
            state["vec"] = list(state["cur"])
        if j == k or state["best"] == 0:
            return
        if norm - suffix_power[j] >= state["best"]:
            return
        if frozen_norm(j) >= state["best"]:
            return
        for val in values:
            if val != 0 and support_bound is not None and \
                    used >= support_bound:
                state["truncated"] = True
                continue
            if val == 0:
                dfs(j + 1, norm, used)
                continue
            new_norm = norm
            for r, c in cols[j]:
                delta = c * val
                new_norm += abs(res[r] + delta) - abs(res[r])
                res[r] += delta
            state["cur"][j] = val
            dfs(j + 1, new_norm, used + 1)
            state["cur"][j] = 0
            for r, c in cols[j]:
                res[r] -= c * val
        return

    dfs(0, norm0, 0)
    best = state["best"]
    certified = (best == 0) or not state["truncated"]
    bvec = state["vec"]
    bchain = cc.chain_from_vector(n + 1, bvec, RING_INT)
    rep = z + cc.boundary_of(bchain)
    if rep.l1_norm() != best:
        raise InternalInvariantError("integral search witness mismatch")
    return IntegralSeminormResult(best, certified, bchain, rep)
