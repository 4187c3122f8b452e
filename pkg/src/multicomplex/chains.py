"""Chains, cochains and homology of multicomplexes.

The chain module of a multicomplex in degree n is free on algebraic
simplices: a simplex id together with an ordering of its vertices.  Every
geometric n-simplex therefore spans (n+1)! basis elements.  The reduced
complex identifies an ordering with its sign times the sorted ordering
and kills tuples with repeated entries, leaving one basis element per
geometric simplex.  Both carry an l1 norm on chains and an linf norm on
cochains.

Homology is computed exactly: ranks over the rationals, Smith normal
form over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import NamedTuple

from . import intlinalg
from .core import Multicomplex, MulticomplexError, StructureError, UnknownIdError

RING_INT = "Z"
RING_RAT = "Q"


class NoFundamentalCycleError(MulticomplexError):
    """Top homology is not infinite cyclic; carries a diagnostic."""


class AlgebraicSimplex(NamedTuple):
    simplex: str
    vertices: tuple

    def __str__(self):
        return "(%s;%s)" % (self.simplex, ",".join(self.vertices))


def _check_ring(ring):
    if ring not in (RING_INT, RING_RAT):
        raise StructureError("unknown coefficient ring %r" % ring)


def _coerce(ring, value):
    if ring == RING_INT:
        iv = int(value)
        if iv != value:
            raise StructureError(
                "coefficient %r is not an integer" % (value,))
        return iv
    return Fraction(value)


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting seq (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[j] < seq[i]:
                sign = -sign
    return sign


class _SparseModule:
    """Shared behaviour of Chain and Cochain: sparse coefficient maps."""

    __slots__ = ("degree", "ring", "_terms")

    def __init__(self, degree, ring, terms=None):
        _check_ring(ring)
        self.degree = degree
        self.ring = ring
        self._terms = {}
        if terms:
            for key, val in (terms.items() if hasattr(terms, "items")
                             else terms):
                if not isinstance(key, AlgebraicSimplex):
                    key = AlgebraicSimplex(key[0], tuple(key[1]))
                if len(key.vertices) != degree + 1:
                    raise StructureError(
                        "term %s has %d vertices but the degree is %d"
                        % (key, len(key.vertices), degree))
                val = _coerce(ring, val)
                if val != 0:
                    cur = self._terms.get(key)
                    if cur is None:
                        self._terms[key] = val
                    else:
                        cur += val
                        if cur == 0:
                            del self._terms[key]
                        else:
                            self._terms[key] = cur

    def coefficient(self, key):
        if not isinstance(key, AlgebraicSimplex):
            key = AlgebraicSimplex(key[0], tuple(key[1]))
        return self._terms.get(key, _coerce(self.ring, 0))

    def items(self):
        return sorted(self._terms.items())

    def support(self):
        return sorted(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    def __eq__(self, other):
        return (type(self) is type(other) and self.degree == other.degree
                and self.ring == other.ring and self._terms == other._terms)

    def __len__(self):
        return len(self._terms)

    def _combine(self, other, flip):
        if type(other) is not type(self):
            raise StructureError("cannot combine %s with %s"
                                 % (type(self).__name__, type(other).__name__))
        if other.degree != self.degree or other.ring != self.ring:
            raise StructureError("degree or ring mismatch in combination")
        terms = dict(self._terms)
        for key, val in other._terms.items():
            cur = terms.get(key, 0) + (-val if flip else val)
            if cur == 0:
                terms.pop(key, None)
            else:
                terms[key] = cur
        return type(self)(self.degree, self.ring, terms)

    def __add__(self, other):
        return self._combine(other, False)

    def __sub__(self, other):
        return self._combine(other, True)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, factor):
        factor = _coerce(self.ring, factor)
        return type(self)(
            self.degree, self.ring,
            {k: v * factor for k, v in self._terms.items()})

    def __repr__(self):
        body = " + ".join("%s*%s" % (v, k) for k, v in self.items())
        return "%s(%d;%s)[%s]" % (type(self).__name__, self.degree,
                                  self.ring, body or "0")


class Chain(_SparseModule):
    def l1_norm(self):
        return sum(abs(v) for v in self._terms.values())


class Cochain(_SparseModule):
    """A linear functional on chains, zero outside its support."""

    def linf_norm(self):
        return max((abs(v) for v in self._terms.values()),
                   default=_coerce(self.ring, 0))

    def pairing(self, chain: Chain):
        if chain.degree != self.degree:
            raise StructureError("cochain and chain degrees differ")
        total = Fraction(0) if (self.ring == RING_RAT
                                or chain.ring == RING_RAT) else 0
        for key, val in chain._terms.items():
            phi = self._terms.get(key)
            if phi is not None:
                total += phi * val
        return total


def l1_norm(chain: Chain):
    return chain.l1_norm()


def linf_norm(cochain: Cochain):
    return cochain.linf_norm()


# ---------------------------------------------------------------------------
# chain complexes


class ChainComplex:
    """Finitely generated complex with ordered bases of algebraic simplices.

    boundary columns are sparse (row index, integer coefficient) lists;
    degree 0 has the zero boundary.  The ring tag is the default ring for
    chains built against this complex.
    """

    def __init__(self, ring, basis, columns):
        _check_ring(ring)
        self.ring = ring
        self._basis = {n: tuple(labels) for n, labels in basis.items()}
        self._index = {n: {lab: i for i, lab in enumerate(labels)}
                       for n, labels in self._basis.items()}
        for n, labels in self._basis.items():
            if len(self._index[n]) != len(labels):
                raise StructureError("degree %d basis has duplicates" % n)
        self._columns = {n: tuple(tuple(col) for col in cols)
                         for n, cols in columns.items()}
        for n, labels in self._basis.items():
            if labels and n not in self._columns:
                raise StructureError(
                    "degree %d has basis elements but no boundary columns"
                    % n)
        for n, cols in self._columns.items():
            if len(cols) != len(self._basis.get(n, ())):
                raise StructureError(
                    "degree %d has %d boundary columns for %d basis elements"
                    % (n, len(cols), len(self._basis.get(n, ()))))
            below = len(self._basis.get(n - 1, ()))
            for col in cols:
                for row, _ in col:
                    if not 0 <= row < below:
                        raise StructureError(
                            "boundary row index out of range in degree %d" % n)

    @property
    def top_degree(self):
        return max((n for n, b in self._basis.items() if b), default=-1)

    def degrees(self):
        return sorted(self._basis)

    def dim(self, n) -> int:
        return len(self._basis.get(n, ()))

    def basis(self, n):
        return self._basis.get(n, ())

    def index_of(self, n, label) -> int:
        try:
            return self._index[n][label]
        except KeyError:
            raise UnknownIdError(
                "%s is not a degree-%d basis element" % (label, n)) from None

    def column(self, n, j):
        return self._columns.get(n, ())[j]

    def boundary_matrix(self, n):
        """Dense integer matrix of the boundary from degree n to n-1."""
        rows = self.dim(n - 1)
        cols = self.dim(n)
        mat = [[0] * cols for _ in range(rows)]
        for j, col in enumerate(self._columns.get(n, ())):
            for row, coef in col:
                mat[row][j] += coef
        return mat

    def chain(self, degree, terms, ring=None) -> Chain:
        ch = Chain(degree, ring or self.ring, terms)
        for key in ch.support():
            self.index_of(degree, key)
        return ch

    def cochain(self, degree, terms, ring=None) -> Cochain:
        co = Cochain(degree, ring or self.ring, terms)
        for key in co.support():
            self.index_of(degree, key)
        return co

    def vector_of(self, chain: Chain):
        vec = [0] * self.dim(chain.degree)
        for key, val in chain.items():
            vec[self.index_of(chain.degree, key)] = val
        return vec

    def chain_from_vector(self, degree, vec, ring=None) -> Chain:
        labels = self.basis(degree)
        return Chain(degree, ring or self.ring,
                     {labels[i]: v for i, v in enumerate(vec) if v != 0})

    def boundary_of(self, chain: Chain) -> Chain:
        n = chain.degree
        out = {}
        labels = self.basis(n - 1)
        for key, val in chain._terms.items():
            j = self.index_of(n, key)
            for row, coef in self._columns.get(n, ())[j]:
                lab = labels[row]
                cur = out.get(lab, 0) + coef * val
                if cur == 0:
                    out.pop(lab, None)
                else:
                    out[lab] = cur
        return Chain(n - 1, chain.ring, out)

    def coboundary_of(self, cochain: Cochain) -> Cochain:
        """The functional sending a degree-(n+1) simplex to phi(boundary)."""
        n = cochain.degree
        out = {}
        labels = self.basis(n)
        for j, key in enumerate(self.basis(n + 1)):
            total = 0
            for row, coef in self._columns.get(n + 1, ())[j]:
                val = cochain._terms.get(labels[row])
                if val is not None:
                    total += coef * val
            if total != 0:
                out[key] = total
        return Cochain(n + 1, cochain.ring, out)

    def boundary_squares_to_zero(self) -> bool:
        """Exact check that consecutive boundary maps compose to zero."""
        for n in self.degrees():
            if n < 2 or not self._columns.get(n):
                continue
            lower = self._columns.get(n - 1, ())
            for col in self._columns[n]:
                acc = {}
                for row, coef in col:
                    for row2, coef2 in lower[row]:
                        acc[row2] = acc.get(row2, 0) + coef * coef2
                if any(v != 0 for v in acc.values()):
                    return False
        return True


def boundary(cc: ChainComplex, chain: Chain) -> Chain:
    return cc.boundary_of(chain)


def _orderings(vset):
    return list(permutations(sorted(vset)))


def build_full_chain_complex(mc: Multicomplex, max_degree=None,
                             ring=RING_RAT,
                             with_repeats=False) -> ChainComplex:
    """All orderings of all simplices, with the simplicial boundary.

    By default tuples with repeated vertices are not generated: every
    degree-n basis element is one of the (n+1)! orderings of a geometric
    n-simplex.  With with_repeats=True the degree-n basis consists of all
    length-(n+1) tuples covering the vertex set of some simplex of
    dimension at most n; this larger complex is nonzero in every degree,
    so an explicit max_degree is required, and it supplies the bounding
    chains that make class seminorms agree with the reduced complex.
    """
    if with_repeats:
        return _build_repeat_complex(mc, max_degree, ring)
    top = mc.dimension if max_degree is None else min(max_degree, mc.dimension)
    basis = {}
    for n in range(0, top + 1):
        labels = []
        for sid in sorted(mc.simplices_of_dimension(n)):
            for tup in _orderings(mc.vertex_set(sid)):
                labels.append(AlgebraicSimplex(sid, tup))
        basis[n] = labels
    columns = {n: [[] for _ in basis[n]] for n in basis}
    for n in range(1, top + 1):
        index = {lab: i for i, lab in enumerate(basis[n - 1])}
        cols = []
        for lab in basis[n]:
            facets = mc.facets(lab.simplex)
            col = []
            sign = 1
            for i, v in enumerate(lab.vertices):
                fid = facets[frozenset(lab.vertices) - {v}]
                sub = lab.vertices[:i] + lab.vertices[i + 1:]
                col.append((index[AlgebraicSimplex(fid, sub)], sign))
                sign = -sign
            cols.append(col)
        columns[n] = cols
    return ChainComplex(ring, basis, columns)


def _build_repeat_complex(mc: Multicomplex, max_degree, ring) -> ChainComplex:
    if max_degree is None:
        raise StructureError(
            "the complex with repeated-vertex tuples is nonzero in every "
            "degree; pass an explicit max_degree")
    basis = {}
    for n in range(0, max_degree + 1):
        labels = []
        for sid in sorted(mc.simplex_ids):
            vs = sorted(mc.vertex_set(sid))
            if len(vs) > n + 1:
                continue
            for tup in product(vs, repeat=n + 1):
                if len(set(tup)) == len(vs):
                    labels.append(AlgebraicSimplex(sid, tup))
        basis[n] = labels
    columns = {n: [[] for _ in basis[n]] for n in basis}
    for n in range(1, max_degree + 1):
        index = {lab: i for i, lab in enumerate(basis[n - 1])}
        cols = []
        for lab in basis[n]:
            vset = mc.vertex_set(lab.simplex)
            facets = mc.facets(lab.simplex)
            acc = {}
            sign = 1
            for i, v in enumerate(lab.vertices):
                sub = lab.vertices[:i] + lab.vertices[i + 1:]
                if v in sub:
                    key = AlgebraicSimplex(lab.simplex, sub)
                else:
                    key = AlgebraicSimplex(facets[vset - {v}], sub)
                acc[key] = acc.get(key, 0) + sign
                sign = -sign
            cols.append([(index[key], c)
                         for key, c in acc.items() if c != 0])
        columns[n] = cols
    return ChainComplex(ring, basis, columns)


def build_reduced_chain_complex(mc: Multicomplex, max_degree=None,
                                ring=RING_RAT) -> ChainComplex:
    """One basis element per geometric simplex, in the sorted ordering."""
    top = mc.dimension if max_degree is None else min(max_degree, mc.dimension)
    basis = {}
    for n in range(0, top + 1):
        basis[n] = [AlgebraicSimplex(sid, tuple(sorted(mc.vertex_set(sid))))
                    for sid in sorted(mc.simplices_of_dimension(n))]
    columns = {n: [[] for _ in basis[n]] for n in basis}
    for n in range(1, top + 1):
        index = {lab: i for i, lab in enumerate(basis[n - 1])}
        cols = []
        for lab in basis[n]:
            facets = mc.facets(lab.simplex)
            col = []
            sign = 1
            for i, v in enumerate(lab.vertices):
                # removing a vertex from a sorted tuple keeps it sorted,
                # so projecting the full boundary introduces no signs
                fid = facets[frozenset(lab.vertices) - {v}]
                sub = lab.vertices[:i] + lab.vertices[i + 1:]
                col.append((index[AlgebraicSimplex(fid, sub)], sign))
                sign = -sign
            cols.append(col)
        columns[n] = cols
    return ChainComplex(ring, basis, columns)


def build_relative_complex(mc: Multicomplex, sub_ids, variant="reduced",
                           max_degree=None, ring=RING_RAT) -> ChainComplex:
    """The quotient complex of mc by a facet-closed set of simplex ids."""
    sub = set(sub_ids)
    for sid in sub:
        for fid in mc.facets(sid).values():
            if fid not in sub:
                raise StructureError(
                    "subcomplex ids are not facet-closed: %r needs %r"
                    % (sid, fid))
    if variant == "reduced":
        cc = build_reduced_chain_complex(mc, max_degree, ring)
    elif variant == "full":
        cc = build_full_chain_complex(mc, max_degree, ring)
    else:
        raise StructureError("unknown complex variant %r" % variant)
    basis = {}
    keep = {}
    for n in cc.degrees():
        labs = [lab for lab in cc.basis(n) if lab.simplex not in sub]
        basis[n] = labs
        keep[n] = {cc.index_of(n, lab): i for i, lab in enumerate(labs)}
    columns = {}
    for n in cc.degrees():
        cols = []
        below = keep.get(n - 1, {})
        for lab in basis[n]:
            j = cc.index_of(n, lab)
            cols.append([(below[row], coef)
                         for row, coef in cc.column(n, j)
                         if row in below])
        columns[n] = cols
    return ChainComplex(ring, basis, columns)


# ---------------------------------------------------------------------------
# projection, section, alternation


def project_chain(chain: Chain) -> Chain:
    """Full-to-reduced projection: sort each tuple, pick up the sign,
    kill tuples with repeated vertices."""
    terms = {}
    for key, val in chain.items():
        if len(set(key.vertices)) != len(key.vertices):
            continue
        sign = permutation_sign(key.vertices)
        canon = AlgebraicSimplex(key.simplex, tuple(sorted(key.vertices)))
        cur = terms.get(canon, 0) + sign * val
        if cur == 0:
            terms.pop(canon, None)
        else:
            terms[canon] = cur
    return Chain(chain.degree, chain.ring, terms)


def section_chain(chain: Chain) -> Chain:
    """Reduced-to-full section: the sorted tuple represents its class."""
    for key in chain.support():
        if tuple(sorted(key.vertices)) != key.vertices:
            raise StructureError(
                "%s is not in canonical (sorted) form" % (key,))
        if len(set(key.vertices)) != len(key.vertices):
            raise StructureError("%s has repeated vertices" % (key,))
    return Chain(chain.degree, chain.ring, dict(chain.items()))


def alternate(chain: Chain) -> Chain:
    """Average the signed orderings of every term (a chain map, and a
    projection onto alternating chains).  Result has rational ring."""
    k = chain.degree
    terms = {}
    denom = 1
    for i in range(2, k + 2):
        denom *= i
    for key, val in chain.items():
        if len(set(key.vertices)) != len(key.vertices):
            continue  # symmetrization cancels in pairs on repeated entries
        val = Fraction(val, denom)
        base = key.vertices
        for perm in permutations(range(k + 1)):
            sign = permutation_sign(perm)
            tup = tuple(base[i] for i in perm)
            lab = AlgebraicSimplex(key.simplex, tup)
            cur = terms.get(lab, Fraction(0)) + sign * val
            if cur == 0:
                terms.pop(lab, None)
            else:
                terms[lab] = cur
    return Chain(k, RING_RAT, terms)


def is_alternating(chain: Chain) -> bool:
    ref = Chain(chain.degree, RING_RAT, dict(chain.items()))
    return alternate(chain) == ref


# ---------------------------------------------------------------------------
# homology


class HomologyResult:
    """Lazy exact homology of a chain complex over Z or Q.

    Over Q, structure(n) is (betti, []); over Z it is (free rank, list of
    invariant factors > 1).  Generators are returned as chains over the
    complex ring.  is_boundary returns an explicit bounding chain when one
    exists, which makes are_homologous a certified check.
    """

    def __init__(self, cc: ChainComplex, ring=None):
        self.cc = cc
        self.ring = ring or cc.ring
        _check_ring(self.ring)
        self._cache = {}

    # matrix of the boundary arriving in degree n, with explicit shape
    def _incoming(self, n):
        mat = self.cc.boundary_matrix(n + 1)
        return mat, self.cc.dim(n + 1)

    def structure(self, n):
        return self._data(n)[0]

    def betti(self, n) -> int:
        if self.ring != RING_RAT:
            raise StructureError("betti numbers are the rational structure")
        return self._data(n)[0][0]

    def generators(self, n):
        gens = self._data(n)[1]
        return [self.cc.chain_from_vector(n, g, self.ring) for g in gens]

    def _data(self, n):
        if n in self._cache:
            return self._cache[n]
        dn = self.cc.boundary_matrix(n)
        dim = self.cc.dim(n)
        dnext, _ = self._incoming(n)
        if self.ring == RING_RAT:
            if dim == 0:
                res = ((0, []), [])
            else:
                kernel = (intlinalg.rational_kernel_basis(dn, dim)
                          if self.cc.dim(n - 1) else
                          intlinalg.rational_kernel_basis([], dim))
                img_cols = [[Fraction(dnext[i][j]) for i in range(dim)]
                            for j in range(self.cc.dim(n + 1))]
                betti, gens = self._rational_quotient(kernel, img_cols, dim)
                res = ((betti, []), gens)
        else:
            if dim == 0:
                res = ((0, []), [])
            else:
                kernel = (intlinalg.integer_kernel_basis(dn, dim)
                          if self.cc.dim(n - 1) else
                          intlinalg.integer_kernel_basis([], dim))
                img_cols = [[dnext[i][j] for i in range(dim)]
                            for j in range(self.cc.dim(n + 1))]
                torsion, free, coeffs = intlinalg.integer_quotient(
                    kernel, img_cols)
                gens = []
                for cv in coeffs:
                    vec = [0] * dim
                    for t, c in enumerate(cv):
                        if c:
                            for i in range(dim):
                                vec[i] += c * kernel[t][i]
                    gens.append(vec)
                res = ((free, torsion), gens)
        self._cache[n] = res
        return res

    @staticmethod
    def _rational_quotient(kernel, img_cols, dim):
        # row-reduce the images, then greedily extend by kernel vectors
        cols = [c for c in img_cols if any(x != 0 for x in c)]
        basis = []

        def reduce_against(v, store):
            v = list(v)
            for piv, w in basis:
                if v[piv] != 0:
                    f = v[piv] / w[piv]
                    v = [x - f * y for x, y in zip(v, w)]
            for i, x in enumerate(v):
                if x != 0:
                    if store:
                        basis.append((i, v))
                    return True
            return False

        for c in cols:
            reduce_against(c, True)
        image_rank = len(basis)
        gens = []
        for kv in kernel:
            if reduce_against(kv, True):
                gens.append(kv)
        betti = len(kernel) - image_rank
        assert betti == len(gens)
        return betti, gens

    # -- cycle and boundary queries ------------------------------------

    def is_cycle(self, chain: Chain) -> bool:
        return self.cc.boundary_of(chain).is_zero

    def is_boundary(self, chain: Chain):
        """An explicit chain b with boundary(b) == chain, or None."""
        n = chain.degree
        target = self.cc.vector_of(chain)
        mat, ncols = self._incoming(n)
        if self.ring == RING_RAT:
            sol = intlinalg.rational_solve(mat, target, ncols)
        else:
            for x in target:
                _coerce(RING_INT, x)
            sol = intlinalg.solve_integer(mat, [int(x) for x in target], ncols)
        if sol is None:
            return None
        return self.cc.chain_from_vector(n + 1, sol, chain.ring)

    def are_homologous(self, c1: Chain, c2: Chain):
        """(True, witness) when c1 - c2 bounds; (False, None) otherwise."""
        if not self.is_cycle(c1) or not self.is_cycle(c2):
            raise StructureError("are_homologous expects two cycles")
        w = self.is_boundary(c1 - c2)
        return (w is not None), w


def homology(cc: ChainComplex, ring=None) -> HomologyResult:
    return HomologyResult(cc, ring)


def fundamental_cycle(mc: Multicomplex, degree=None, ring=RING_INT) -> Chain:
    """The positively-normalized generator of degree-n homology, when it is
    infinite cyclic; raises NoFundamentalCycleError otherwise.

    degree defaults to the dimension of the complex."""
    n = mc.dimension if degree is None else degree
    if n < 0:
        raise NoFundamentalCycleError("the complex is empty")
    # purity: every maximal simplex must have dimension exactly n
    has_coface = set()
    for sid in mc.simplex_ids:
        for fid in mc.facets(sid).values():
            has_coface.add(fid)
    for sid in mc.simplex_ids:
        if sid not in has_coface and mc.dimension_of(sid) != n:
            raise NoFundamentalCycleError(
                "the complex is not pure in degree %d: %r is maximal with "
                "dimension %d" % (n, sid, mc.dimension_of(sid)))
    cc = build_reduced_chain_complex(mc, ring=ring)
    hom = HomologyResult(cc, ring)
    if ring == RING_INT:
        free, torsion = hom.structure(n)
        if free != 1 or torsion:
            raise NoFundamentalCycleError(
                "top homology in degree %d is not infinite cyclic "
                "(free rank %d, torsion %s)" % (n, free, torsion))
    else:
        if hom.betti(n) != 1:
            raise NoFundamentalCycleError(
                "top homology in degree %d has dimension %d, not 1"
                % (n, hom.betti(n)))
    gen = hom.generators(n)[0]
    # normalize the sign so the lexicographically first term is positive
    first = gen.support()[0]
    if gen.coefficient(first) < 0:
        gen = -gen
    return gen
