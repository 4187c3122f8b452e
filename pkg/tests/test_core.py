"""Multicomplex structure, faces, maps, products."""

import random

import pytest

from conftest import random_multicomplex
from multicomplex.core import (Multicomplex, SimplicialMap, StructureError,
                               UnknownIdError, compose_maps, identity_map,
                               product_with_interval, simplicial_complex,
                               special_sphere)
from multicomplex.fixtures import (cone_over_double_edge, double_edge,
                                   seven_vertex_torus, triangle_boundary)


def test_triangle_is_simplicial():
    mc = triangle_boundary()
    assert mc.validate() == []
    assert mc.is_simplicial_complex()
    assert sorted(mc.vertices) == ["x", "y", "z"]
    assert mc.dimension == 1
    assert mc.euler_characteristic() == 0
    assert mc.face("x,y", {"x"}) == "x"


def test_double_edge_structure():
    mc = double_edge()
    assert mc.validate() == []
    assert not mc.is_simplicial_complex()
    assert mc.vertex_set("north") == mc.vertex_set("south")
    assert set(mc.compatible_simplices("north")) >= {"north", "south"}
    assert mc.euler_characteristic() == 0


def test_special_spheres():
    s2 = special_sphere(2)
    assert s2.validate() == []
    assert s2.dimension == 2
    assert s2.euler_characteristic() == 2
    assert len(s2.simplices_of_dimension(2)) == 2
    with pytest.raises(StructureError):
        special_sphere(0)
    labelled = special_sphere(1, labels=("p", "q"))
    assert sorted(labelled.vertices) == ["p", "q"]


def test_every_vertex_gets_one_zero_simplex():
    # a second 0-simplex over the same vertex is reported
    mc = Multicomplex(["v"], [("a", frozenset(["v"]), {}),
                              ("b", frozenset(["v"]), {})])
    problems = mc.validate()
    assert any("zero-simplices" in p for p in problems)


def test_missing_facet_reference_rejected():
    with pytest.raises((StructureError, UnknownIdError)):
        Multicomplex(["x", "y"], [
            ("x", frozenset(["x"]), {}),
            ("y", frozenset(["y"]), {}),
            ("e", frozenset(["x", "y"]),
             {frozenset(["x"]): "x", frozenset(["y"]): "nope"}),
        ])


def test_comma_in_vertex_id_rejected():
    with pytest.raises(UnknownIdError):
        Multicomplex(["a,b"], [("a,b", frozenset(["a,b"]), {})])


def test_wrong_facet_span_reported():
    mc = Multicomplex(["x", "y"], [
        ("x", frozenset(["x"]), {}),
        ("y", frozenset(["y"]), {}),
        ("e", frozenset(["x", "y"]),
         {frozenset(["x"]): "y", frozenset(["y"]): "x"}),
    ])
    problems = mc.validate()
    assert problems
    assert any("spans" in p for p in problems)


def _tetra_with_edge_mismatch(consistent: bool):
    """A 3-simplex whose two triangle facets over {x,y,*} either agree
    (consistent) or disagree (broken) on which parallel x-y edge they
    use; disagreement breaks two-step face composition."""
    verts = ["w", "x", "y", "z"]

    def edge(name, a, b):
        return (name, frozenset([a, b]), {frozenset([a]): a,
                                          frozenset([b]): b})

    def tri(name, a, b, c, ab, ac, bc):
        return (name, frozenset([a, b, c]), {frozenset([a, b]): ab,
                                             frozenset([a, c]): ac,
                                             frozenset([b, c]): bc})

    triples = [(v, frozenset([v]), {}) for v in verts]
    triples += [edge("e1", "x", "y"), edge("e2", "x", "y"),
                edge("xz", "x", "z"), edge("yz", "y", "z"),
                edge("xw", "x", "w"), edge("yw", "y", "w"),
                edge("zw", "z", "w")]
    second = "e1" if consistent else "e2"
    triples += [tri("txyz", "x", "y", "z", "e1", "xz", "yz"),
                tri("txyw", "x", "y", "w", second, "xw", "yw"),
                tri("txzw", "x", "z", "w", "xz", "xw", "zw"),
                tri("tyzw", "y", "z", "w", "yz", "yw", "zw"),
                ("T", frozenset(verts),
                 {frozenset(["x", "y", "z"]): "txyz",
                  frozenset(["x", "y", "w"]): "txyw",
                  frozenset(["x", "z", "w"]): "txzw",
                  frozenset(["y", "z", "w"]): "tyzw"})]
    return Multicomplex(verts, triples)


def test_two_step_composition_violation_reported():
    assert _tetra_with_edge_mismatch(consistent=True).validate() == []
    broken = _tetra_with_edge_mismatch(consistent=False)
    problems = broken.validate()
    assert problems
    assert any("compos" in p or "disagree" in p or "face" in p
               for p in problems)


def test_face_deep_subsets():
    mc = cone_over_double_edge()
    assert mc.validate() == []
    # dropping down two dimensions is independent of the route
    assert mc.face("tn", {"x"}) == "x"
    assert mc.face("tn", {"c"}) == "c"
    assert mc.face("tn", {"x", "y"}) == "north"
    assert mc.face("ts", {"x", "y"}) == "south"
    with pytest.raises(StructureError):
        mc.face("tn", {"x", "q"})


def test_submulticomplex_and_skeleton():
    mc = cone_over_double_edge()
    closed = mc.submulticomplex(["tn"], close=True)
    assert "north" in closed and "cx" in closed and "ts" not in closed
    with pytest.raises(StructureError):
        mc.submulticomplex(["tn"], close=False)
    sk = mc.skeleton(1)
    assert sk.dimension == 1
    assert set(sk.simplex_ids) == {
        s for s in mc.simplex_ids if mc.dimension_of(s) <= 1}


def test_simplicial_map_validate_and_compose():
    mc = triangle_boundary()
    ident = identity_map(mc)
    assert ident.validate() == []
    assert ident.is_nondegenerate()
    rot = {"x": "y", "y": "z", "z": "x"}
    smap = {}
    for sid in mc.simplex_ids:
        target = frozenset(rot[v] for v in mc.vertex_set(sid))
        smap[sid] = ",".join(sorted(target))
    rotation = SimplicialMap(mc, mc, rot, smap)
    assert rotation.validate() == []
    twice = compose_maps(rotation, rotation)
    assert twice.apply_vertex("x") == "z"
    assert twice.validate() == []
    # a map that breaks a facet square is reported
    bad = SimplicialMap(mc, mc, dict(rot), dict(smap))
    bad.simplex_map["x,y"] = "x,y"
    assert bad.validate()


def test_collapse_map_is_degenerate():
    mc = triangle_boundary()
    vm = {"x": "x", "y": "x", "z": "z"}
    sm = {}
    for sid in mc.simplex_ids:
        target = frozenset(vm[v] for v in mc.vertex_set(sid))
        sm[sid] = ",".join(sorted(target))
    m = SimplicialMap(mc, mc, vm, sm)
    assert m.validate() == []
    assert not m.is_nondegenerate()


def test_product_with_interval():
    for base in (triangle_boundary(), double_edge()):
        prod = product_with_interval(base)
        mc = prod.complex
        assert mc.validate() == []
        assert mc.dimension == base.dimension + 1
        assert mc.euler_characteristic() == base.euler_characteristic()
        assert prod.bottom.validate() == []
        assert prod.top.validate() == []
        assert prod.bottom.is_nondegenerate()


def test_structural_equality():
    assert triangle_boundary() == triangle_boundary()
    assert triangle_boundary() != double_edge()


def test_random_multicomplexes_are_valid():
    rng = random.Random(5)
    for _ in range(25):
        mc = random_multicomplex(rng)
        assert mc.validate() == []
        assert mc.dimension <= 4
        assert len(mc.simplex_ids) <= 200
