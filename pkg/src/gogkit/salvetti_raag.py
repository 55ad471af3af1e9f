"""Graph products, right-angled Artin groups, doubles, wedges and vertex links
in covers of Salvetti complexes.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .flag_complex import FlagComplex
from .fp_core import Presentation, commutator, gen, valid_name
from .graphs_of_groups import GraphOfGroups, serre_covolume


def graph_product_presentation(K: FlagComplex, vertex_groups: Mapping[str, Presentation]) -> Presentation:
    """Free product of the vertex groups modulo commutators across every edge of ``K``."""
    if set(vertex_groups) != set(K.vertices):
        raise InputError("need exactly one vertex group per vertex")
    gens: list[str] = []
    rels = []
    for v in K.vertices:
        p = vertex_groups[v]
        clash = set(gens) & set(p.generators)
        if clash:
            raise InputError(f"vertex groups share generator names {sorted(clash)}")
        gens.extend(p.generators)
        rels.extend(p.relators)
    for a, b in K.sorted_edges():
        for x in vertex_groups[a].generators:
            for y in vertex_groups[b].generators:
                rels.append(commutator(gen(x), gen(y)))
    return Presentation(tuple(gens), tuple(rels))


def raag_presentation(L: FlagComplex) -> Presentation:
    """One infinite cyclic factor per vertex, named after the vertex."""
    for v in L.vertices:
        if not valid_name(v):
            raise InputError(f"vertex name {v!r} is not a valid generator name")
    return graph_product_presentation(L, {v: Presentation((v,)) for v in L.vertices})


def _check_subset(J: FlagComplex, V: Iterable[str]) -> list[str]:
    V = list(V)
    missing = [v for v in V if v not in J.vertices]
    if missing:
        raise InputError(f"{missing} are not vertices")
    return [v for v in J.vertices if v in set(V)]


def double(J: FlagComplex, V: Iterable[str]) -> FlagComplex:
    """Each ``v`` in ``V`` becomes ``v+`` and ``v-``; ``x^e, y^d`` adjacent iff ``x, y`` adjacent."""
    Vs = set(_check_subset(J, V))
    copies = {v: ([f"{v}+", f"{v}-"] if v in Vs else [v]) for v in J.vertices}
    verts = [c for v in J.vertices for c in copies[v]]
    if len(set(verts)) != len(verts):
        raise InputError("doubled vertex names collide with existing vertices")
    edges = []
    for a, b in J.sorted_edges():
        for x in copies[a]:
            for y in copies[b]:
                edges.append((x, y))
    return FlagComplex.from_edges(verts, edges)


def wedge(K: FlagComplex, k: int) -> FlagComplex:
    """``k`` copies of ``K`` glued at its first vertex; copy ``c`` renames ``v`` to ``v_c``."""
    if k < 1:
        raise InputError("number of copies must be positive")
    if not K.vertices:
        raise InputError("cannot wedge the empty complex")
    if k == 1:
        return K
    base = K.vertices[0]

    def name(v: str, c: int) -> str:
        return v if v == base else f"{v}_{c}"

    verts = [base] + [name(v, c) for c in range(1, k + 1) for v in K.vertices[1:]]
    edges = [(name(a, c), name(b, c)) for c in range(1, k + 1) for a, b in K.sorted_edges()]
    return FlagComplex.from_edges(verts, edges)


def marked_vertices(K: FlagComplex, k: int) -> list[str]:
    """The first non-basepoint vertex of each copy in ``wedge(K, k)``."""
    if len(K.vertices) < 2:
        raise InputError("marking needs a non-basepoint vertex")
    v = K.vertices[1]
    return [v] if k == 1 else [f"{v}_{c}" for c in range(1, k + 1)]


def _fv_mul(x: tuple, letter: tuple) -> tuple:
    if x and x[-1][0] == letter[0] and x[-1][1] == -letter[1]:
        return x[:-1]
    return x + (letter,)


def _fv_word(x: tuple, w: Sequence[tuple]) -> tuple:
    for l in w:
        x = _fv_mul(x, l)
    return x


def salvetti_link(L: FlagComplex, V: Iterable[str]) -> FlagComplex:
    """Link of a vertex in the cover of the Salvetti complex of ``A_L`` for ``A_L -> F(V)``.

    The cover has one vertex per element of the free group on ``V``.  A
    generator ``u`` gives the edges ``x -> x phi(u)``; a commuting pair
    ``u, w`` gives squares with corners ``x, x phi(u), x phi(u) phi(w),
    x phi(w)``.  The link of the vertex ``1`` has one point per edge end at
    ``1`` (``u+`` leaving, ``u-`` arriving) and one segment per square corner
    at ``1``.  ``V`` must be independent in ``L`` so that it generates a free
    subgroup.
    """
    Vl = _check_subset(L, V)
    for a in Vl:
        for b in Vl:
            if a != b and L.adjacent(a, b):
                raise InputError(f"marked vertices {a}, {b} are adjacent; they do not generate a free group")
    Vs = set(Vl)

    def phi(u: str, e: int = 1) -> tuple:
        return ((u, e),) if u in Vs else ()

    y: tuple = ()
    ends: list[str] = []
    for u in L.vertices:
        # edge (y, u) leaves y; edge (y phi(u)^-1, u) arrives at y
        ends.append(f"{u}+")
        if _fv_word(_fv_word(y, phi(u, -1)), phi(u)) == y:
            ends.append(f"{u}-")
    segments = set()
    for u, w in L.sorted_edges():
        # base x of a square; corner offsets from x and the edge ends meeting there
        corners = [
            ((), (f"{u}+", f"{w}+")),
            (phi(u), (f"{u}-", f"{w}+")),
            (phi(u) + phi(w), (f"{u}-", f"{w}-")),
            (phi(w), (f"{u}+", f"{w}-")),
        ]
        for offset, pair in corners:
            inv = tuple((g, -e) for g, e in reversed(offset))
            x = _fv_word(y, inv)
            if _fv_word(x, offset) == y:
                segments.add(frozenset(pair))
    return FlagComplex(tuple(ends), frozenset(segments))


def link_identity(K: FlagComplex, k: int) -> tuple[FlagComplex, FlagComplex, list[str]]:
    """``(salvetti_link(L, V), double(L, V), V)`` for ``L = wedge(K, k)`` and its marked vertices."""
    L = wedge(K, k)
    V = marked_vertices(K, k)
    return salvetti_link(L, V), double(L, V), V


def tower_covolume(r: int, s: int) -> Fraction:
    """Covolume ``2 / 2^(r^s)`` of the lifted tower lattice (with ``m = 2``)."""
    if r < 2 or s < 1:
        raise InputError("tower covolume needs r >= 2 and s >= 1")
    return Fraction(2, 2 ** (r**s))


def lift_certificate(g: GraphOfGroups) -> dict:
    """Orbit and stabiliser data preserved by lifting a tree action to the Salvetti cover."""
    return {
        "vertex_orbits": len(g.vertices),
        "stabiliser_orders": {v: g.groups[v].order for v in g.vertices},
        "covolume": serre_covolume(g),
    }
