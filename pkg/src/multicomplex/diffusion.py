"""Diffusion of finitely supported functions under group actions.

A probability measure mu with finite support on a group acting on a set
spreads a function out: (mu * f)(x) = sum_gamma mu(gamma) f(gamma^{-1}x).
Diffusion never increases the l1 norm, preserves the sum of f over every
invariant subset, and its failure to shrink the norm is controlled by
the discrete derivative of mu.  Amenability enters only through the two
shipped group models: finite groups average exactly, and free abelian
groups carry uniform box measures with arbitrarily small derivative.

The module covers measures and their derivatives, box (Folner) measures,
single-orbit diffusion with a certified bound, sequential diffusion over
the orbits of a truncated locally finite action, and finally the toy
vanishing pipeline, which drives the l1 norm of an alternating cycle to
zero by group averaging while certifying that its class is kept.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iter_product

from .actions import GroupAction, ValidationReport, act_on_chain, orbits
from .chains import Chain, RING_RAT, alternate, build_full_chain_complex, homology
from .core import (InternalInvariantError, Multicomplex, MulticomplexError,
                   StructureError)
from .groups import FiniteGroup, FreeAbelianGroup, generating_set


class DiffusionError(MulticomplexError):
    """A diffusion request whose hypotheses fail.

    When the failure has an explicit certificate (for instance a bounding
    chain showing [g*z] = -[z]), it is attached as .witness.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# measures


class FiniteSupportMeasure:
    """A probability measure with finite support on a group model.

    Weights are positive rationals summing to exactly 1; entries with
    weight zero are dropped on construction.
    """

    def __init__(self, group, weights):
        self.group = group
        acc = {}
        items = weights.items() if hasattr(weights, "items") else weights
        for el, w in items:
            el = group.coerce(el)
            w = Fraction(w)
            if w < 0:
                raise StructureError(
                    "measure weights must be nonnegative, got %s at %r"
                    % (w, el))
            if w != 0:
                acc[el] = acc.get(el, Fraction(0)) + w
        total = sum(acc.values(), Fraction(0))
        if total != 1:
            raise StructureError(
                "measure weights must sum to 1, got %s" % total)
        self._weights = acc

    def weight(self, el) -> Fraction:
        return self._weights.get(self.group.coerce(el), Fraction(0))

    def support(self) -> list:
        return sorted(self._weights)

    def items(self) -> list:
        return sorted(self._weights.items())

    def __len__(self) -> int:
        return len(self._weights)

    def __repr__(self) -> str:
        return "FiniteSupportMeasure(%d atoms)" % len(self._weights)


def delta_measure(group, el) -> FiniteSupportMeasure:
    return FiniteSupportMeasure(group, {group.coerce(el): Fraction(1)})


def uniform_measure(group, support) -> FiniteSupportMeasure:
    support = {group.coerce(el) for el in support}
    if not support:
        raise StructureError("a measure needs a nonempty support")
    w = Fraction(1, len(support))
    return FiniteSupportMeasure(group, {el: w for el in support})


# ---------------------------------------------------------------------------
# actions on sets


class OrbitBlock:
    """One orbit of a truncated locally finite action.

    points: the orbit.  group and act: the designated subgroup, given as
    its own group model acting on the ambient points through act(element,
    point).  horizon: the index into the block list from which later
    subgroups must not move anything in this orbit or in the set of
    points this subgroup moves.
    """

    def __init__(self, points, group, act, horizon):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise StructureError("an orbit block has repeated points")
        self.group = group
        self.act = act
        self.horizon = int(horizon)


class ActionOnSet:
    """A group model acting on a finite enumerated set of opaque points.

    act is an oracle (element, point) -> point.  For a truncated locally
    finite action, pass blocks: the ambient group may then be omitted,
    since every computation goes through the per-block subgroups.
    """

    def __init__(self, group, points, act, blocks=None):
        self.group = group
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise StructureError("the point enumeration has repeats")
        self.act = act
        self.blocks = tuple(blocks) if blocks else ()
        if group is None and not self.blocks:
            raise StructureError(
                "an action needs an ambient group or orbit blocks")
        pts = set(self.points)
        for i, b in enumerate(self.blocks):
            if not isinstance(b, OrbitBlock):
                raise StructureError("block %d is not an OrbitBlock" % i)
            stray = [x for x in b.points if x not in pts]
            if stray:
                raise StructureError(
                    "block %d contains %r, which is not an enumerated point"
                    % (i, stray[0]))

    def apply(self, el, x):
        if self.act is None:
            raise StructureError(
                "this action has no ambient oracle; use its blocks")
        return self.act(self.group.coerce(el), x)

    def __repr__(self) -> str:
        return "ActionOnSet(%d points%s)" % (
            len(self.points),
            ", %d blocks" % len(self.blocks) if self.blocks else "")


class SparseFunction:
    """A finitely supported rational function on opaque points."""

    def __init__(self, values=None):
        self._vals = {}
        if values:
            items = values.items() if hasattr(values, "items") else values
            for x, v in items:
                v = Fraction(v)
                cur = self._vals.get(x, Fraction(0)) + v
                if cur == 0:
                    self._vals.pop(x, None)
                else:
                    self._vals[x] = cur

    def value(self, x) -> Fraction:
        return self._vals.get(x, Fraction(0))

    def support(self) -> list:
        return sorted(self._vals, key=repr)

    def items(self) -> list:
        return sorted(self._vals.items(), key=lambda kv: repr(kv[0]))

    @property
    def is_zero(self) -> bool:
        return not self._vals

    def l1_norm(self) -> Fraction:
        return sum((abs(v) for v in self._vals.values()), Fraction(0))

    def total(self) -> Fraction:
        return sum(self._vals.values(), Fraction(0))

    def sum_over(self, points) -> Fraction:
        return sum((self._vals.get(x, Fraction(0)) for x in set(points)),
                   Fraction(0))

    def norm_over(self, points) -> Fraction:
        return sum((abs(self._vals.get(x, Fraction(0))) for x in set(points)),
                   Fraction(0))

    def restrict(self, points) -> "SparseFunction":
        keep = set(points)
        return SparseFunction({x: v for x, v in self._vals.items()
                               if x in keep})

    def scaled(self, factor) -> "SparseFunction":
        factor = Fraction(factor)
        return SparseFunction({x: v * factor for x, v in self._vals.items()})

    def __add__(self, other):
        out = dict(self._vals)
        for x, v in other._vals.items():
            cur = out.get(x, Fraction(0)) + v
            if cur == 0:
                out.pop(x, None)
            else:
                out[x] = cur
        return SparseFunction(out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def __eq__(self, other):
        return (isinstance(other, SparseFunction)
                and self._vals == other._vals)

    def __repr__(self) -> str:
        body = ", ".join("%r: %s" % (x, v) for x, v in self.items())
        return "SparseFunction({%s})" % body


# ---------------------------------------------------------------------------
# convolution and derivatives


def convolve(mu: FiniteSupportMeasure, f: SparseFunction,
             a: ActionOnSet) -> SparseFunction:
    """(mu * f)(x) = sum_gamma mu(gamma) f(gamma^{-1} x).

    Computed over the supports: the atom at gamma moves the mass f(y)
    from y to gamma.y, so the support never leaves supp(mu).supp(f).
    """
    acc = {}
    for gamma, w in mu.items():
        for y, v in f.items():
            x = a.apply(gamma, y)
            acc[x] = acc.get(x, Fraction(0)) + w * v
    return SparseFunction(acc)


def measure_derivative(mu: FiniteSupportMeasure, phi) -> Fraction:
    """The l1 norm of gamma -> mu(gamma*phi) - mu(gamma)."""
    g = mu.group
    phi = g.coerce(phi)
    inv = g.inverse(phi)
    gammas = set(mu.support())
    gammas |= {g.multiply(s, inv) for s in mu.support()}
    return sum((abs(mu.weight(g.multiply(gamma, phi)) - mu.weight(gamma))
                for gamma in gammas), Fraction(0))


def derivative_norm(mu: FiniteSupportMeasure, phis) -> Fraction:
    """The largest derivative of mu along any element of phis."""
    return max((measure_derivative(mu, phi) for phi in phis),
               default=Fraction(0))


# ---------------------------------------------------------------------------
# Folner measures


def _box_points(rank: int, n: int) -> list:
    return [tuple(p) for p in iter_product(range(n), repeat=rank)]


def folner_measure(group, phis, epsilon) -> FiniteSupportMeasure:
    """A finitely supported measure whose derivative along each element
    of phis is below epsilon.

    Finite groups take the uniform measure (derivative exactly zero).
    Z^d takes the uniform measure on the box {0..N-1}^d: shifting the box
    by phi moves at most a 2*min(|phi_i|, N)/N fraction of its mass per
    axis, which picks N; the derivative of the returned measure is then
    re-checked by direct evaluation.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise StructureError("epsilon must be positive")
    if isinstance(group, FiniteGroup):
        return uniform_measure(group, group.elements)
    if not isinstance(group, FreeAbelianGroup):
        raise StructureError("unsupported group model %r" % (group,))
    phis = [group.coerce(p) for p in phis]
    largest = max((sum(abs(x) for x in p) for p in phis), default=0)
    n = int(2 * largest / epsilon) + 1
    while True:
        mu = uniform_measure(group, _box_points(group.rank, n))
        if derivative_norm(mu, phis) < epsilon:
            return mu
        n += 1  # unreachable given the bound; kept as the honest fallback


# ---------------------------------------------------------------------------
# certified single-orbit diffusion


def _transporters(a: ActionOnSet, base):
    """One group element per enumerated point sending base there.

    Finite groups are enumerated outright.  For Z^d the points are walked
    by generator steps inside the enumeration, so the enumerated set must
    be connected under unit moves; either way a point that cannot be
    reached makes the action non-transitive on the enumerated range.
    """
    pts = set(a.points)
    if a.group.is_finite:
        reach = {}
        for g in a.group.elements:
            reach.setdefault(a.apply(g, base), g)
    else:
        reach = {base: a.group.identity}
        queue = [base]
        gens = generating_set(a.group)
        while queue:
            x = queue.pop(0)
            for gen in gens:
                y = a.apply(gen, x)
                if y in pts and y not in reach:
                    reach[y] = a.group.multiply(gen, reach[x])
                    queue.append(y)
    missing = [p for p in sorted(pts, key=repr) if p not in reach]
    if missing:
        raise DiffusionError(
            "the action is not transitive on the enumerated points: "
            "%r is not reachable from %r" % (missing[0], base))
    return reach


def diffuse_to_epsilon(a: ActionOnSet, f: SparseFunction, epsilon):
    """Diffuse f until its norm certifiably drops to |sum f| + epsilon.

    Picks a base point in supp(f), collects transporters carrying it to
    the rest of the support, and convolves with a measure whose
    derivative along the inverted transporters is below epsilon/|f|_1.
    Returns (mu, f') with the bound |f'|_1 <= |sum f| + epsilon checked
    exactly before returning.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise StructureError("epsilon must be positive")
    if a.group is None:
        raise StructureError("diffusion needs an ambient group model")
    if f.is_zero:
        return delta_measure(a.group, a.group.identity), f
    pts = set(a.points)
    for x in f.support():
        if x not in pts:
            raise DiffusionError(
                "f is supported at %r, outside the enumerated points" % (x,))
    base = f.support()[0]
    reach = _transporters(a, base)
    inverted = {a.group.inverse(reach[y]) for y in f.support()}
    mu = folner_measure(a.group, inverted, epsilon / f.l1_norm())
    out = convolve(mu, f, a)
    bound = abs(f.total()) + epsilon
    if out.l1_norm() > bound:
        raise InternalInvariantError(
            "diffusion exceeded its certified bound: %s > %s"
            % (out.l1_norm(), bound))
    return mu, out


# ---------------------------------------------------------------------------
# truncated locally finite actions


def validate_action_on_set(a: ActionOnSet, samples: int = 64,
                           seed: int = 0) -> ValidationReport:
    """Sampled action axioms plus the orbit-structure checks.

    The identity axiom is checked on every enumerated point; composition
    on sampled (or, when small, all) triples.  With blocks: the blocks
    partition the points; every designated subgroup is transitive on its
    own block and maps every block onto itself; and whenever s' is at or
    past the horizon of s, subgroup s' moves nothing in block s or in the
    set of points subgroup s moves.  Everything runs on the enumerated
    range only, which the notes record.
    """
    problems = []
    notes = []
    rng = random.Random(seed)

    def sample_elements(group, k):
        if group.is_finite:
            els = list(group.elements)
            return els if len(els) <= k else rng.sample(els, k)
        return [tuple(rng.randint(-3, 3) for _ in range(group.rank))
                for _ in range(k)]

    def check_oracle(label, group, act, points):
        e = group.identity
        for x in points:
            if act(e, x) != x:
                problems.append(
                    "%s: identity moves %r to %r" % (label, x, act(e, x)))
        if not points:
            return
        if group.is_finite and \
                len(group.elements) ** 2 * len(points) <= 4096:
            pairs = [(g, h) for g in group.elements for h in group.elements]
            triples = [(g, h, x) for (g, h) in pairs for x in points]
        else:
            triples = [(g, h, rng.choice(points))
                       for g in sample_elements(group, 8)
                       for h in sample_elements(group, 8)]
            triples = triples[:samples]
        for g, h, x in triples:
            gh = group.multiply(g, h)
            if act(gh, x) != act(g, act(h, x)):
                problems.append(
                    "%s: composition fails at (%r, %r, %r)" % (label, g, h, x))
        notes.append("%s: composition checked on %d triples"
                     % (label, len(triples)))

    if a.group is not None and a.act is not None:
        check_oracle("ambient action", a.group, a.act, list(a.points))

    if a.blocks:
        counts = {}
        for b in a.blocks:
            for x in b.points:
                counts[x] = counts.get(x, 0) + 1
        for x in a.points:
            n = counts.get(x, 0)
            if n != 1:
                problems.append(
                    "blocks do not partition the points: %r appears in %d "
                    "blocks" % (x, n))
        moved = []
        for s, b in enumerate(a.blocks):
            check_oracle("block %d" % s, b.group, b.act, list(b.points))
            sub = ActionOnSet(b.group, a.points, b.act)
            try:
                _transporters(ActionOnSet(b.group, b.points, b.act),
                              sorted(b.points, key=repr)[0])
            except DiffusionError as exc:
                problems.append("block %d: %s" % (s, exc))
            except IndexError:
                problems.append("block %d is empty" % s)
            # every block must be carried onto itself by every subgroup
            gens = generating_set(b.group)
            for t, other in enumerate(a.blocks):
                target = set(other.points)
                for gen in gens:
                    escaped = [x for x in other.points
                               if sub.apply(gen, x) not in target]
                    if escaped:
                        problems.append(
                            "subgroup of block %d moves %r out of block %d"
                            % (s, escaped[0], t))
                        break
            moved.append({x for x in a.points
                          if any(sub.apply(gen, x) != x for gen in gens)})
        for s, b in enumerate(a.blocks):
            guarded = set(b.points) | moved[s]
            for t in range(len(a.blocks)):
                if t >= b.horizon and t != s:
                    overlap = moved[t] & guarded
                    if overlap:
                        problems.append(
                            "blocks %d and %d are not asymptotically "
                            "disjoint: stage %d is past the horizon %d but "
                            "moves %r" % (s, t, t, b.horizon,
                                          sorted(overlap, key=repr)[0]))
        notes.append("asymptotic disjointness checked on the enumerated "
                     "range only")
    return ValidationReport(problems, notes)


def local_diffuse(a: ActionOnSet, f: SparseFunction, epsilons,
                  threshold: int) -> SparseFunction:
    """Sequential per-orbit diffusion on a truncated locally finite action.

    Blocks are processed in list order.  Stages before threshold get a
    fixed uniform smoothing (the uniform measure on a finite subgroup,
    nothing for a free abelian one); from threshold on, stage s runs
    diffuse_to_epsilon against its budget epsilons[s], which requires the
    current function to sum to zero on that block.  Later stages never
    hurt earlier bounds: every block is invariant under every subgroup,
    so convolution preserves each block sum and never increases a block
    norm.  Both facts are re-checked exactly before returning.
    """
    if not a.blocks:
        raise StructureError("local diffusion needs orbit blocks")
    report = validate_action_on_set(a)
    if not report.ok:
        raise DiffusionError(
            "invalid orbit structure: " + "; ".join(report.problems))
    blocks = a.blocks
    if len(epsilons) != len(blocks):
        raise StructureError(
            "expected %d budgets, one per block, got %d"
            % (len(blocks), len(epsilons)))
    budgets = [Fraction(e) for e in epsilons]
    threshold = int(threshold)
    for s, b in enumerate(blocks):
        if s >= threshold:
            if budgets[s] <= 0:
                raise StructureError("budget for block %d must be positive" % s)
            total = f.sum_over(b.points)
            if total != 0:
                raise DiffusionError(
                    "the function has nonzero sum %s on block %d, so its "
                    "norm there cannot drop below |%s|" % (total, s, total))
    cur = f
    for s, b in enumerate(blocks):
        everywhere = ActionOnSet(b.group, a.points, b.act)
        if s < threshold:
            if b.group.is_finite:
                mu = uniform_measure(b.group, b.group.elements)
            else:
                mu = delta_measure(b.group, b.group.identity)
        else:
            own = ActionOnSet(b.group, b.points, b.act)
            mu, _ = diffuse_to_epsilon(own, cur.restrict(b.points),
                                       budgets[s])
        cur = convolve(mu, cur, everywhere)
    for s, b in enumerate(blocks):
        if s >= threshold and cur.norm_over(b.points) > budgets[s]:
            raise InternalInvariantError(
                "block %d norm %s exceeds its budget %s"
                % (s, cur.norm_over(b.points), budgets[s]))
        if cur.sum_over(b.points) != f.sum_over(b.points):
            raise InternalInvariantError(
                "the sum over block %d was not preserved" % s)
    return cur


# ---------------------------------------------------------------------------
# the toy vanishing pipeline


class ToyVanishCertificate:
    """Data certifying that toy_vanish kept the homology class.

    bounding_chain B satisfies boundary(B) = c' - z, where c' is the
    returned chain; it is assembled from the alternation witness and the
    per-element witnesses (one chain b_g with boundary(b_g) = g*z - z per
    group element), which are kept for auditing.
    """

    def __init__(self, bounding_chain: Chain, witnesses: dict):
        self.bounding_chain = bounding_chain
        self.witnesses = dict(witnesses)

    def verify(self, cc, z: Chain, result: Chain) -> bool:
        zq = Chain(z.degree, RING_RAT, dict(z.items()))
        return cc.boundary_of(self.bounding_chain) == result - zq


def toy_vanish(mc: Multicomplex, a: GroupAction, z: Chain, epsilon):
    """Average an alternating cycle to l1 norm <= epsilon, certifiably.

    Pipeline: alternate z; require the alternation to sum to zero on
    every orbit of algebraic simplices (averaging can only cancel what
    cancels orbitwise); require every group element to preserve the
    class of z, with an explicit bounding chain as witness; then run the
    sequential orbit-by-orbit uniform averaging with per-orbit budget
    epsilon/(number of orbits), carrying a bounding chain B with
    boundary(B) = current - z through every step.  Returns (c',
    certificate); the final boundary check and the norm bound are
    verified exactly before returning.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise StructureError("epsilon must be positive")
    if a.complex is not mc and a.complex != mc:
        raise StructureError("the action lives on a different complex")
    cc = build_full_chain_complex(mc, ring=RING_RAT)
    zq = Chain(z.degree, RING_RAT, dict(z.items()))
    if not cc.boundary_of(zq).is_zero:
        raise StructureError("toy_vanish expects a cycle")
    hom = homology(cc)
    c = alternate(zq)

    # orbitwise cancellation: the alternation must have zero total on
    # every orbit its support meets
    part = orbits(a, zq.degree)
    sums = {}
    for key, val in c.items():
        oi = part.index_of(key)
        sums[oi] = sums.get(oi, Fraction(0)) + val
    for oi in sorted(sums):
        if sums[oi] != 0:
            raise DiffusionError(
                "the alternation of z has nonzero total %s on the orbit "
                "of %s; group averaging cannot cancel it there"
                % (sums[oi], part.orbits[oi][0]))

    # class preservation, with explicit witnesses
    witnesses = {}
    for g in a.group.elements:
        gz = act_on_chain(a, g, zq)
        b = hom.is_boundary(gz - zq)
        if b is None:
            flip = hom.is_boundary(gz + zq)
            if flip is not None:
                raise DiffusionError(
                    "element %r does not preserve the class of z: "
                    "[g*z] = -[z], certified by a chain bounding g*z + z"
                    % (g,), witness=flip)
            raise DiffusionError(
                "element %r does not preserve the class of z: g*z - z "
                "is not a boundary" % (g,))
        witnesses[g] = b

    bounding = hom.is_boundary(c - zq)
    if bounding is None:
        raise InternalInvariantError(
            "alternation changed the homology class")

    touched = [part.orbits[oi] for oi in sorted(sums)]
    eta = epsilon / len(touched) if touched else epsilon
    w = Fraction(1, len(a.group))
    for orb in touched:
        # uniform averaging; the certificate update mirrors the chain one
        new_c = Chain(c.degree, RING_RAT, {})
        new_b = Chain(c.degree + 1, RING_RAT, {})
        for g in a.group.elements:
            new_c = new_c + act_on_chain(a, g, c).scaled(w)
            new_b = new_b + (act_on_chain(a, g, bounding) + witnesses[g]).scaled(w)
        c, bounding = new_c, new_b
        orbit_norm = sum((abs(c.coefficient(x)) for x in orb), Fraction(0))
        if orbit_norm > eta:
            raise InternalInvariantError(
                "averaging left norm %s on the orbit of %s, over the "
                "budget %s" % (orbit_norm, orb[0], eta))
        if c.is_zero:
            break
    if cc.boundary_of(bounding) != c - zq:
        raise InternalInvariantError(
            "the certificate does not bound the difference")
    if c.l1_norm() > epsilon:
        raise InternalInvariantError(
            "final norm %s exceeds epsilon %s" % (c.l1_norm(), epsilon))
    return c, ToyVanishCertificate(bounding, witnesses)
