"""Convolution diffusion: measures, Folner boxes, local stages, vanishing."""

from fractions import Fraction

import pytest

from multicomplex.chains import (
    RING_RAT,
    AlgebraicSimplex,
    Chain,
    build_reduced_chain_complex,
)
from multicomplex.core import (
    InternalInvariantError,
    MulticomplexError,
    StructureError,
)
from multicomplex.diffusion import (
    ActionOnSet,
    DiffusionError,
    FiniteSupportMeasure,
    OrbitBlock,
    SparseFunction,
    convolve,
    delta_measure,
    derivative_norm,
    diffuse_to_epsilon,
    folner_measure,
    local_diffuse,
    measure_derivative,
    toy_vanish,
    uniform_measure,
    validate_action_on_set,
)
from multicomplex.fixtures import (
    cone_over_double_edge,
    cone_swap_action,
    double_edge,
    double_edge_swap_action,
)
from multicomplex.groups import FreeAbelianGroup, cyclic_group


Z = FreeAbelianGroup(1)
Z2 = FreeAbelianGroup(2)


def _z_action(points):
    return ActionOnSet(Z, points, lambda g, x: x + g[0])


def test_measure_must_be_a_probability():
    with pytest.raises(MulticomplexError):
        FiniteSupportMeasure(Z, {(0,): Fraction(1, 2)})
    with pytest.raises(MulticomplexError):
        FiniteSupportMeasure(Z, {(0,): Fraction(3, 2), (1,): Fraction(-1, 2)})
    mu = FiniteSupportMeasure(Z, {(0,): 1, (1,): 0})
    assert mu.support() == [(0,)]


def test_delta_convolution_translates():
    pts = list(range(-5, 6))
    a = _z_action(pts)
    f = SparseFunction({0: Fraction(2), 1: Fraction(-1)})
    g = convolve(delta_measure(Z, (1,)), f, a)
    assert g.value(1) == 2 and g.value(2) == -1
    assert g.l1_norm() == f.l1_norm()
    e = convolve(delta_measure(Z, Z.identity), f, a)
    assert e == f


def test_box_derivative_is_two_over_n():
    for n in (2, 5, 21, 64):
        mu = uniform_measure(Z, [(i,) for i in range(n)])
        assert measure_derivative(mu, (1,)) == Fraction(2, n)
        assert derivative_norm(mu, [(1,), (-1,)]) == Fraction(2, n)


def test_derivative_of_invariant_measure_is_zero():
    g = cyclic_group(4)
    mu = uniform_measure(g, g.elements)
    assert derivative_norm(mu, g.elements) == 0


def test_folner_measure_on_z_meets_epsilon():
    mu = folner_measure(Z, [(1,), (-1,)], Fraction(1, 10))
    assert len(mu) == 21
    assert derivative_norm(mu, [(1,), (-1,)]) == Fraction(2, 21)
    assert sum(w for _, w in mu.items()) == 1


def test_folner_measure_on_z2():
    phis = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    mu = folner_measure(Z2, phis, Fraction(1, 5))
    assert derivative_norm(mu, phis) < Fraction(1, 5)
    assert len(mu) == 11 * 11


def test_folner_measure_on_finite_group_is_exactly_invariant():
    g = cyclic_group(6)
    mu = folner_measure(g, g.elements, Fraction(1, 100))
    assert len(mu) == 6
    assert derivative_norm(mu, g.elements) == 0


def test_diffuse_to_epsilon_on_the_integer_line():
    pts = list(range(-45, 46))
    a = _z_action(pts)
    f = SparseFunction({0: Fraction(1), 1: Fraction(-1)})
    mu, out = diffuse_to_epsilon(a, f, Fraction(1, 10))
    assert out.l1_norm() == Fraction(2, 41)
    assert out.total() == 0
    assert convolve(mu, f, a) == out


def test_diffuse_to_epsilon_on_a_finite_group_is_exact():
    g = cyclic_group(5)
    a = ActionOnSet(g, list(g.elements), lambda h, x: g.multiply(h, x))
    f = SparseFunction({g.elements[0]: Fraction(3, 2),
                        g.elements[2]: Fraction(1)})
    mu, out = diffuse_to_epsilon(a, f, Fraction(1, 7))
    assert out.l1_norm() == abs(f.total()) == Fraction(5, 2)
    assert out.total() == f.total()


def test_diffuse_zero_function_is_identity():
    a = _z_action(list(range(5)))
    mu, out = diffuse_to_epsilon(a, SparseFunction({}), Fraction(1, 3))
    assert out.is_zero
    assert mu.support() == [Z.identity]


def test_diffuse_rejects_disconnected_support():
    # two points that no group element connects within the enumeration
    def act(g, x):
        return x  # the trivial "action" of Z on two fixed points

    a = ActionOnSet(Z, [0, 1], act)
    f = SparseFunction({0: Fraction(1), 1: Fraction(-1)})
    with pytest.raises(DiffusionError):
        diffuse_to_epsilon(a, f, Fraction(1, 2))


def test_counterexample_scaling_is_exactly_linear():
    pts = list(range(-40, 260))
    a = _z_action(pts)
    f1 = SparseFunction({0: Fraction(1), 1: Fraction(-1)})
    mu = uniform_measure(Z, [(i,) for i in range(33)])
    base = convolve(mu, f1, a).l1_norm()
    assert base == Fraction(2, 33) > 0
    for n in (2, 7, 100):
        fn = f1.scaled(n)
        assert convolve(mu, fn, a).l1_norm() == n * base


def _two_block_action():
    # each block subgroup shifts its own points and fixes foreign ones
    c4 = cyclic_group(4)
    c3 = cyclic_group(3)

    def act0(g, x):
        return (x + c4.elements.index(g)) % 4 if x in (0, 1, 2, 3) else x

    def act1(g, x):
        return 10 + ((x - 10) + c3.elements.index(g)) % 3 \
            if x in (10, 11, 12) else x

    blocks = [
        OrbitBlock([0, 1, 2, 3], c4, act0, horizon=1),
        OrbitBlock([10, 11, 12], c3, act1, horizon=1),
    ]
    pts = [0, 1, 2, 3, 10, 11, 12]
    return ActionOnSet(None, pts, None, blocks=blocks)


def test_validate_action_on_set_accepts_block_structure():
    report = validate_action_on_set(_two_block_action())
    assert not report.problems
    assert any("enumerated range" in n for n in report.notes)


def test_validate_action_on_set_catches_identity_failures():
    bad = ActionOnSet(Z, [0, 1, 2], lambda g, x: (x + g[0]) % 3 if g != (0,)
                      else (x + 1) % 3)
    report = validate_action_on_set(bad)
    assert any("identity" in p for p in report.problems)


def test_blocks_must_partition():
    c2 = cyclic_group(2)
    b1 = OrbitBlock([0, 1], c2, lambda g, x: x if g == "r0" else 1 - x,
                    horizon=1)
    b2 = OrbitBlock([1, 2], c2, lambda g, x: x if g == "r0" else 3 - x,
                    horizon=1)
    a = ActionOnSet(None, [0, 1, 2], None, blocks=[b1, b2])
    report = validate_action_on_set(a)
    assert any("partition" in p or "overlap" in p for p in report.problems)


def test_local_diffuse_meets_budgets_and_preserves_sums():
    a = _two_block_action()
    f = SparseFunction({0: Fraction(2), 10: Fraction(1),
                        11: Fraction(-1)})
    budgets = [Fraction(1), Fraction(1, 9)]
    out = local_diffuse(a, f, budgets, threshold=1)
    # block 0 is below the threshold: its sum is smeared by the uniform
    # subgroup measure, sum preserved
    assert out.sum_over(a.blocks[0].points) == 2
    assert out.norm_over(a.blocks[1].points) <= Fraction(1, 9)
    assert out.sum_over(a.blocks[1].points) == 0


def test_local_diffuse_rejects_uncancellable_block():
    a = _two_block_action()
    f = SparseFunction({10: Fraction(1)})
    with pytest.raises(DiffusionError) as err:
        local_diffuse(a, f, [Fraction(1), Fraction(1, 9)], threshold=1)
    assert "nonzero sum" in str(err.value)


def test_local_diffuse_budget_count_must_match():
    a = _two_block_action()
    with pytest.raises(StructureError):
        local_diffuse(a, SparseFunction({}), [Fraction(1)], threshold=0)


def test_toy_vanish_on_the_cone():
    mc = cone_over_double_edge()
    a = cone_swap_action()
    cc = build_reduced_chain_complex(mc)
    z = cc.chain(1, {AlgebraicSimplex("north", ("x", "y")): 1,
                     AlgebraicSimplex("south", ("x", "y")): -1})
    out, cert = toy_vanish(mc, a, z, Fraction(1, 100))
    assert out.l1_norm() == 0
    assert cc.boundary_of(cert.bounding_chain) == out - z
    assert cert.verify(cc, z, out)


def test_toy_vanish_rejects_class_flip_with_witness():
    mc = double_edge()
    a = double_edge_swap_action()
    cc = build_reduced_chain_complex(mc)
    z = cc.chain(1, {AlgebraicSimplex("north", ("x", "y")): 1,
                     AlgebraicSimplex("south", ("x", "y")): -1})
    with pytest.raises(DiffusionError) as err:
        toy_vanish(mc, a, z, Fraction(1, 4))
    assert "[g*z] = -[z]" in str(err.value)
    w = err.value.witness
    assert w is not None and w.degree == 2


def test_toy_vanish_rejects_nonzero_orbit_mass():
    mc = cone_over_double_edge()
    a = cone_swap_action()
    cc = build_reduced_chain_complex(mc)
    # a cycle (the boundary of tn), but averaging over the swap cannot
    # cancel the lone north term against anything on its orbit
    z = cc.chain(1, {AlgebraicSimplex("north", ("x", "y")): 1,
                     AlgebraicSimplex("cx", ("c", "x")): 1,
                     AlgebraicSimplex("cy", ("c", "y")): -1})
    with pytest.raises(DiffusionError) as err:
        toy_vanish(mc, a, z, Fraction(1, 4))
    assert "nonzero total" in str(err.value)


def test_sparse_function_arithmetic():
    f = SparseFunction({0: Fraction(1, 2), 1: Fraction(-1, 2)})
    g = SparseFunction({1: Fraction(1, 2)})
    assert (f + g).support() == [0]
    assert (f - f).is_zero
    assert (-f).l1_norm() == 1
    assert f.scaled(4).l1_norm() == 4
    assert f.total() == 0
    assert f.restrict([0]).support() == [0]
    assert f.sum_over([0, 1]) == 0
    assert f.norm_over([1]) == Fraction(1, 2)
