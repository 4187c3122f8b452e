"""Versioned JSON formats for every object the command line exchanges.

One canonical rendering: keys sorted, two-space indent, trailing newline,
rationals as "p/q" strings (plain integers stay bare of the slash).  A
document produced by a dump function parses back to an equal object, and
re-dumping parses byte-identically, which is what lets structured output
be pinned in regression tests.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .actions import GroupAction
from .chains import AlgebraicSimplex, Chain, Cochain, RING_INT, RING_RAT
from .core import Multicomplex, MulticomplexError, SimplicialMap
from .covers import Coloring, Cover
from .diffusion import (ActionOnSet, FiniteSupportMeasure, OrbitBlock,
                        SparseFunction)
from .groups import FiniteGroup, FreeAbelianGroup

SCHEMA_VERSION = 1


class FormatError(MulticomplexError):
    """A document that does not parse as the requested kind."""


def canonical_dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("not valid JSON: %s" % exc)
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object at top level")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise FormatError(
            "unsupported schema_version %r (this build reads %d)"
            % (version, SCHEMA_VERSION))
    return doc


def _need(doc: dict, field: str):
    if field not in doc:
        raise FormatError("missing field %r" % field)
    return doc[field]


def rational_str(x) -> str:
    return str(Fraction(x))


def rational_from_str(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError("bad rational %r: %s" % (s, exc))


# ---------------------------------------------------------------------------
# multicomplexes


def multicomplex_to_doc(mc: Multicomplex) -> dict:
    simplices = []
    for sid in sorted(mc.simplex_ids,
                      key=lambda s: (mc.dimension_of(s), s)):
        facets = {",".join(sorted(sub)): fid
                  for sub, fid in mc.facets(sid).items()}
        simplices.append({"id": sid,
                          "vertices": sorted(mc.vertex_set(sid)),
                          "facets": facets})
    return {"schema_version": SCHEMA_VERSION,
            "vertices": list(mc.vertices),
            "simplices": simplices}


def multicomplex_from_doc(doc: dict) -> Multicomplex:
    vertices = _need(doc, "vertices")
    triples = []
    for entry in _need(doc, "simplices"):
        facets = {frozenset(key.split(",")): fid
                  for key, fid in _need(entry, "facets").items()}
        triples.append((_need(entry, "id"),
                        frozenset(_need(entry, "vertices")), facets))
    return Multicomplex(vertices, triples)


# ---------------------------------------------------------------------------
# chains and cochains (same wire shape)


def _terms_to_doc(obj) -> list:
    return [{"simplex": key.simplex,
             "vertices": list(key.vertices),
             "coeff": rational_str(val)}
            for key, val in obj.items()]


def _terms_from_doc(entries, ring):
    terms = {}
    for entry in entries:
        key = AlgebraicSimplex(_need(entry, "simplex"),
                               tuple(_need(entry, "vertices")))
        val = rational_from_str(_need(entry, "coeff"))
        if ring == RING_INT:
            if val.denominator != 1:
                raise FormatError("non-integer coefficient %s in an "
                                  "integer chain" % val)
            val = val.numerator
        terms[key] = val
    return terms


def _ring_from_doc(doc) -> str:
    ring = _need(doc, "ring")
    if ring not in (RING_INT, RING_RAT):
        raise FormatError("unknown ring %r" % (ring,))
    return ring


def chain_to_doc(chain: Chain) -> dict:
    return {"schema_version": SCHEMA_VERSION, "degree": chain.degree,
            "ring": chain.ring, "terms": _terms_to_doc(chain)}


def chain_from_doc(doc: dict) -> Chain:
    ring = _ring_from_doc(doc)
    return Chain(_need(doc, "degree"), ring,
                 _terms_from_doc(_need(doc, "terms"), ring))


def cochain_to_doc(phi: Cochain) -> dict:
    return {"schema_version": SCHEMA_VERSION, "degree": phi.degree,
            "ring": phi.ring, "terms": _terms_to_doc(phi)}


def cochain_from_doc(doc: dict) -> Cochain:
    ring = _ring_from_doc(doc)
    return Cochain(_need(doc, "degree"), ring,
                   _terms_from_doc(_need(doc, "terms"), ring))


# ---------------------------------------------------------------------------
# group models


def group_to_doc(group) -> dict:
    if isinstance(group, FiniteGroup):
        return {"kind": "finite", "elements": list(group.elements),
                "table": {g: dict(row) for g, row in group.table.items()}}
    if isinstance(group, FreeAbelianGroup):
        return {"kind": "free_abelian", "rank": group.rank}
    raise FormatError("unsupported group model %r" % (group,))


def group_from_doc(doc: dict):
    kind = _need(doc, "kind")
    if kind == "finite":
        return FiniteGroup(_need(doc, "elements"), _need(doc, "table"))
    if kind == "free_abelian":
        return FreeAbelianGroup(int(_need(doc, "rank")))
    raise FormatError("unknown group kind %r" % (kind,))


# ---------------------------------------------------------------------------
# group actions on a multicomplex


def action_to_doc(a: GroupAction) -> dict:
    maps = {}
    for g in a.group.elements:
        m = a.map_of(g)
        maps[g] = {"vertex_map": dict(m.vertex_map),
                   "simplex_map": dict(m.simplex_map)}
    return {"schema_version": SCHEMA_VERSION,
            "elements": list(a.group.elements),
            "table": {g: dict(row) for g, row in a.group.table.items()},
            "maps": maps}


def action_from_doc(doc: dict, mc: Multicomplex) -> GroupAction:
    group = FiniteGroup(_need(doc, "elements"), _need(doc, "table"))
    maps = {}
    for g, entry in _need(doc, "maps").items():
        maps[g] = SimplicialMap(mc, mc, _need(entry, "vertex_map"),
                                _need(entry, "simplex_map"))
    return GroupAction(group, mc, maps)


# ---------------------------------------------------------------------------
# measures, sparse functions, set actions


def measure_to_doc(mu: FiniteSupportMeasure) -> dict:
    weights = {mu.group.element_key(el): rational_str(w)
               for el, w in mu.items()}
    return {"schema_version": SCHEMA_VERSION,
            "group": group_to_doc(mu.group), "weights": weights}


def measure_from_doc(doc: dict) -> FiniteSupportMeasure:
    group = group_from_doc(_need(doc, "group"))
    weights = {group.element_from_key(key): rational_from_str(val)
               for key, val in _need(doc, "weights").items()}
    return FiniteSupportMeasure(group, weights)


def function_to_doc(f: SparseFunction) -> dict:
    values = {}
    for x, v in f.items():
        if not isinstance(x, str):
            raise FormatError(
                "only string-labelled points serialize; got %r" % (x,))
        values[x] = rational_str(v)
    return {"schema_version": SCHEMA_VERSION, "values": values}


def function_from_doc(doc: dict) -> SparseFunction:
    return SparseFunction({x: rational_from_str(v)
                           for x, v in _need(doc, "values").items()})


def _oracle_from_doc(doc: dict, group):
    """The action oracle of a set-action document.

    kind "table" lists, per element key, where each moved point goes;
    kind "translation" makes Z^d shift points written as comma-joined
    integers, leaving all other points alone.
    """
    kind = _need(doc, "kind")
    if kind == "table":
        moves = _need(doc, "moves")

        def act(el, x):
            row = moves.get(group.element_key(group.coerce(el)))
            if row is None:
                raise FormatError(
                    "no move table for element %r"
                    % (group.element_key(el),))
            return row.get(x, x)
        return act
    if kind == "translation":
        if not isinstance(group, FreeAbelianGroup):
            raise FormatError("translation actions need a free abelian group")

        def act(el, x):
            try:
                coords = tuple(int(p) for p in str(x).split(","))
            except ValueError:
                return x
            if len(coords) != group.rank:
                return x
            el = group.coerce(el)
            return ",".join(str(c + e) for c, e in zip(coords, el))
        return act
    raise FormatError("unknown action kind %r" % (kind,))


def set_action_from_doc(doc: dict) -> ActionOnSet:
    points = tuple(_need(doc, "points"))
    blocks = []
    for entry in doc.get("blocks", []):
        group = group_from_doc(_need(entry, "group"))
        blocks.append(OrbitBlock(
            tuple(_need(entry, "points")), group,
            _oracle_from_doc(_need(entry, "action"), group),
            _need(entry, "horizon")))
    group = act = None
    if "group" in doc:
        group = group_from_doc(doc["group"])
        act = _oracle_from_doc(_need(doc, "action"), group)
    return ActionOnSet(group, points, act, blocks or None)


# ---------------------------------------------------------------------------
# covers and colorings


def cover_to_doc(c: Cover, host: str = None) -> dict:
    sets = {str(j): sorted(c.member(j)) for j in c.indices()}
    amenable = {str(j): c.amenable[j] for j in c.amenable}
    return {"schema_version": SCHEMA_VERSION, "host": host,
            "sets": sets, "amenable": amenable}


def cover_from_doc(doc: dict) -> Cover:
    return Cover(_need(doc, "sets"), doc.get("amenable") or {})


def coloring_to_doc(coloring: Coloring) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "assignment": dict(coloring.assignment)}


def coloring_from_doc(doc: dict) -> Coloring:
    return Coloring(_need(doc, "assignment"))
