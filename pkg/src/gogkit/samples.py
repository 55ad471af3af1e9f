"""Pseudorandom graphs of finite groups for cross-checks."""
from __future__ import annotations

import random

from . import finite_groups as fg
from .fp_core import gen
from .graphs_of_groups import GEdge, GraphOfGroups
from .local_groups import LocalGroup

SMALL_GROUPS = ("1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2^2", "Z2^3", "S3", "D4", "Q8")


def _named_group(name: str, prefix: str) -> LocalGroup:
    g = fg.standard_group(name)
    g = fg.rename_generators(g, {x: f"{prefix}{x}" for x in g.gen_names})
    return LocalGroup.finite(g, name)


def random_graph_of_groups(rng: random.Random, max_vertices: int = 3, max_edges: int = 4, max_order: int = 8) -> GraphOfGroups:
    """Connected graph of finite groups with cyclic edge groups.

    Each edge group is ``Z_n`` mapped to elements of order ``n`` at both ends;
    when the target has no element of that order the edge group is trivial.
    """
    names = [n for n in SMALL_GROUPS if fg.standard_group(n).order <= max_order]
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{k}" for k in range(nv)]
    groups = {v: _named_group(rng.choice(names), f"{v}") for v in vertices}
    ends = [(vertices[k], vertices[rng.randrange(k)]) for k in range(1, nv)]
    extra = rng.randint(0 if nv > 1 else 1, max(0, max_edges - len(ends)))
    ends += [(rng.choice(vertices), rng.choice(vertices)) for _ in range(extra)]
    edges = []
    for k, (s, t) in enumerate(ends):
        gs, gt = groups[s].table, groups[t].table
        a = rng.randrange(gs.order)
        n = gs.element_order(a)
        cands = [b for b in range(gt.order) if gt.element_order(b) == n]
        z = f"z{k}"
        if not cands:
            a, n, cands = 0, 1, [0]
        b = rng.choice(cands)
        if n == 1:
            edges.append(GEdge(f"e{k}", s, t, LocalGroup.finite(fg.trivial(), "1"), {}, {}))
            continue
        eg = LocalGroup.finite(fg.cyclic(n, z), f"Z{n}")
        edges.append(GEdge(f"e{k}", s, t, eg, {z: gs.word_for(a)}, {z: gt.word_for(b)}))
    return GraphOfGroups(tuple(vertices), groups, tuple(edges))


def z2_free_product() -> GraphOfGroups:
    """``Z2 * Z2`` as a segment of groups; its Bass-Serre tree is a line."""
    a = _named_group("Z2", "a")
    b = _named_group("Z2", "b")
    e = LocalGroup.finite(fg.trivial(), "1")
    return GraphOfGroups(("a", "b"), {"a": a, "b": b}, (GEdge("e", "a", "b", e, {}, {}),))


def unimodular_counterexample():
    """Loop with indices (1, 2): ``Z`` mapped onto ``Z`` and onto ``2Z``."""
    from .graphs_of_groups import EdgeIndexedGraph, SerreGraph

    g = SerreGraph(("v",), (("e", "v", "v"),))
    return EdgeIndexedGraph(g, {("e", 1): 1, ("e", -1): 2})


def bs12_graph() -> GraphOfGroups:
    """The Baumslag-Solitar group ``BS(1,2)`` as a loop of infinite cyclic groups."""
    z = LocalGroup.free_abelian_group(["a"], "Z")
    c = LocalGroup.free_abelian_group(["c"], "Z")
    return GraphOfGroups(("v",), {"v": z}, (GEdge("e", "v", "v", c, {"c": gen("a")}, {"c": gen("a", 2)}),))
