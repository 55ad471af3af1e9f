"""Graphs of groups: Serre graphs, edge indices, valences, unimodularity,
fundamental groups, covolumes and local Bass-Serre tree development.

Edges are stored as pairs ``{e, e~}``: a :class:`GEdge` named ``e`` runs from
``source`` to ``target``; the oriented edge ``(e, +1)`` is that direction and
``(e, -1)`` its reverse.  ``map_from`` is the monomorphism into the source
vertex group and ``map_to`` the one into the target vertex group, so
``idx(e, +1) = [A_source : map_from(A_e)]``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import config
from .errors import BudgetError, DomainError, InputError
from .fp_core import Presentation, Word, concat, format_word, gen, inverse
from .local_groups import (
    LocalGroup,
    MapCheck,
    check_monomorphism,
    local_group_from_obj,
    parse_edge_map,
)

OrientedEdge = tuple[str, int]


def edge_label(oe: OrientedEdge) -> str:
    return oe[0] if oe[1] == 1 else oe[0] + "~"


@dataclass(frozen=True)
class SerreGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise InputError("duplicate edge names")
        vs = set(self.vertices)
        for name, s, t in self.edges:
            if s not in vs or t not in vs:
                raise InputError(f"edge {name} has an unknown endpoint")

    def oriented_edges(self) -> list[OrientedEdge]:
        return [(name, s) for name, _, _ in self.edges for s in (1, -1)]

    def _edge(self, name):
        for e in self.edges:
            if e[0] == name:
                return e
        raise InputError(f"unknown edge {name}")

    def iota(self, oe: OrientedEdge) -> str:
        _, s, t = self._edge(oe[0])
        return s if oe[1] == 1 else t

    def tau(self, oe: OrientedEdge) -> str:
        _, s, t = self._edge(oe[0])
        return t if oe[1] == 1 else s

    @staticmethod
    def bar(oe: OrientedEdge) -> OrientedEdge:
        return (oe[0], -oe[1])

    def outgoing(self, v: str) -> list[OrientedEdge]:
        return [oe for oe in self.oriented_edges() if self.iota(oe) == v]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for _, s, t in self.edges:
            adj[s].add(t)
            adj[t].add(s)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def betti_number(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def bfs_tree(self, root: str | None = None) -> list[str]:
        """Edge names of the BFS spanning tree from ``root`` (default first vertex).

        Neighbours are explored in edge declaration order.
        """
        root = self.vertices[0] if root is None else root
        seen = {root}
        tree = []
        q = deque([root])
        while q:
            v = q.popleft()
            for name, s, t in self.edges:
                for a, b in ((s, t), (t, s)):
                    if a == v and b not in seen:
                        seen.add(b)
                        tree.append(name)
                        q.append(b)
        return tree

    def check_spanning_tree(self, tree: Iterable[str]) -> list[str]:
        tree = list(tree)
        if len(tree) != len(self.vertices) - 1:
            raise InputError("spanning tree has the wrong number of edges")
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for name in tree:
            _, s, t = self._edge(name)
            a, b = find(s), find(t)
            if a == b:
                raise InputError(f"spanning tree contains a cycle at edge {name}")
            parent[a] = b
        return tree

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for name, s, t in self.edges:
            lines.append(f'  "{s}" -> "{t}" [label="{name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LatticeData:
    """Declared graph-of-lattices data, echoed rather than re-derived.

    ``mu`` maps vertex (and optionally edge) names to the Haar measure of the
    projected local group, ``kernel_order`` to the order of the finite kernel,
    ``psi`` maps edge names to a label for the image of the stable letter.
    """

    mu: Mapping[str, Fraction]
    kernel_order: Mapping[str, int] = field(default_factory=dict)
    psi: Mapping[str, str] = field(default_factory=dict)
    flags: Mapping[str, bool] = field(default_factory=dict)
    provenance: str = "declared"

    def to_obj(self):
        return {
            "mu": {k: _frac_str(v) for k, v in sorted(self.mu.items())},
            "kernel_order": dict(sorted(self.kernel_order.items())),
            "psi": dict(sorted(self.psi.items())),
            "flags": dict(sorted(self.flags.items())),
            "provenance": self.provenance,
        }


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=False)
class GEdge:
    name: str
    source: str
    target: str
    group: LocalGroup
    map_from: Mapping[str, Word]
    map_to: Mapping[str, Word]
    index_from: int | None = None
    index_to: int | None = None

    def map_at(self, sign: int) -> Mapping[str, Word]:
        return self.map_from if sign == 1 else self.map_to

    def declared_index(self, sign: int) -> int | None:
        return self.index_from if sign == 1 else self.index_to


@dataclass(frozen=True, eq=False)
class GraphOfGroups:
    vertices: tuple[str, ...]
    groups: Mapping[str, LocalGroup]
    edges: tuple[GEdge, ...]
    lattice: LatticeData | None = None
    checks: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        g = self.graph
        if not g.is_connected():
            raise InputError("graph of groups must be connected")
        if set(self.groups) != set(self.vertices):
            raise InputError("every vertex needs exactly one local group")
        for e in self.edges:
            for sign in (1, -1):
                v = e.source if sign == 1 else e.target
                chk = check_monomorphism(e.map_at(sign), e.group, self.groups[v])
                if chk.injective is False:
                    raise InputError(f"edge map of {edge_label((e.name, sign))} is not injective")
                declared = e.declared_index(sign)
                if chk.index is not None and declared is not None and chk.index != declared:
                    raise InputError(
                        f"declared index {declared} of {edge_label((e.name, sign))} disagrees with computed {chk.index}"
                    )
                self.checks[(e.name, sign)] = chk

    @property
    def graph(self) -> SerreGraph:
        return SerreGraph(self.vertices, tuple((e.name, e.source, e.target) for e in self.edges))

    def edge(self, name: str) -> GEdge:
        for e in self.edges:
            if e.name == name:
                return e
        raise InputError(f"unknown edge {name}")

    def vertex_label(self, v: str) -> int:
        return self.vertices.index(v)

    @property
    def all_finite(self) -> bool:
        return all(g.is_finite for g in self.groups.values()) and all(e.group.is_finite for e in self.edges)

    def to_obj(self) -> dict:
        obj = {
            "vertices": [{"name": v, "group": self.groups[v].to_obj()} for v in self.vertices],
            "edges": [
                {
                    "name": e.name,
                    "from": e.source,
                    "to": e.target,
                    "group": e.group.to_obj(),
                    "map_from": {k: format_word(w) for k, w in e.map_from.items()},
                    "map_to": {k: format_word(w) for k, w in e.map_to.items()},
                    "index_from": e.index_from,
                    "index_to": e.index_to,
                }
                for e in self.edges
            ],
        }
        if self.lattice is not None:
            obj["lattice"] = self.lattice.to_obj()
        return obj


def graph_of_groups_from_obj(obj: dict) -> GraphOfGroups:
    try:
        vertices = [v["name"] for v in obj["vertices"]]
        groups = {v["name"]: local_group_from_obj(v["group"]) for v in obj["vertices"]}
        edges = []
        for e in obj["edges"]:
            eg = local_group_from_obj(e["group"])
            mf = parse_edge_map(e["map_from"], eg, groups[e["from"]])
            mt = parse_edge_map(e["map_to"], eg, groups[e["to"]])
            edges.append(GEdge(e["name"], e["from"], e["to"], eg, mf, mt, e.get("index_from"), e.get("index_to")))
    except KeyError as exc:
        raise InputError(f"graph of groups JSON is missing {exc}") from exc
    lattice = None
    if "lattice" in obj:
        lat = obj["lattice"]
        lattice = LatticeData(
            mu={k: Fraction(v) for k, v in lat.get("mu", {}).items()},
            kernel_order={k: int(v) for k, v in lat.get("kernel_order", {}).items()},
            psi=dict(lat.get("psi", {})),
            flags={k: bool(v) for k, v in lat.get("flags", {}).items()},
        )
    return GraphOfGroups(tuple(vertices), groups, tuple(edges), lattice)


# ---------------------------------------------------------------------------
# indices, valences, unimodularity


@dataclass(frozen=True)
class EdgeIndexedGraph:
    graph: SerreGraph
    idx: Mapping[OrientedEdge, int]

    def __post_init__(self):
        for oe in self.graph.oriented_edges():
            if self.idx.get(oe, 0) < 1:
                raise InputError(f"index of {edge_label(oe)} must be a positive integer")

    def to_dot(self) -> str:
        lines = ["digraph G {"]
        for v in self.graph.vertices:
            lines.append(f'  "{v}";')
        for name, s, t in self.graph.edges:
            lines.append(f'  "{s}" -> "{t}" [label="{self.idx[(name, 1)]}|{self.idx[(name, -1)]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_obj(self):
        return {
            "vertices": list(self.graph.vertices),
            "edges": [
                {"name": n, "from": s, "to": t, "idx": self.idx[(n, 1)], "idx_bar": self.idx[(n, -1)]}
                for n, s, t in self.graph.edges
            ],
        }


def edge_indexed_graph_from_obj(obj: dict) -> EdgeIndexedGraph:
    g = SerreGraph(tuple(obj["vertices"]), tuple((e["name"], e["from"], e["to"]) for e in obj["edges"]))
    idx = {}
    for e in obj["edges"]:
        idx[(e["name"], 1)] = int(e["idx"])
        idx[(e["name"], -1)] = int(e["idx_bar"])
    return EdgeIndexedGraph(g, idx)


def edge_indices(g: GraphOfGroups) -> EdgeIndexedGraph:
    """``idx(e) = [A_iota(e) : alpha_e(A_e)]``, computed or read from declarations."""
    idx = {}
    for e in g.edges:
        for sign in (1, -1):
            chk: MapCheck = g.checks[(e.name, sign)]
            val = chk.index if chk.index is not None else e.declared_index(sign)
            if val is None:
                raise InputError(f"no computable or declared index for {edge_label((e.name, sign))}")
            idx[(e.name, sign)] = val
    return EdgeIndexedGraph(g.graph, idx)


def bass_serre_valences(eg: EdgeIndexedGraph) -> dict[str, int]:
    val = {v: 0 for v in eg.graph.vertices}
    for oe in eg.graph.oriented_edges():
        val[eg.graph.iota(oe)] += eg.idx[oe]
    return val


@dataclass(frozen=True)
class UnimodularityResult:
    unimodular: bool
    witness: tuple[OrientedEdge, ...] = ()
    ratio: Fraction = Fraction(1)

    def __bool__(self):
        return self.unimodular

    def to_obj(self):
        return {
            "unimodular": self.unimodular,
            "witness": [edge_label(oe) for oe in self.witness],
            "ratio": _frac_str(self.ratio),
        }


def check_unimodular(eg: EdgeIndexedGraph, spanning_tree: Sequence[str] | None = None) -> UnimodularityResult:
    """Check that ``prod idx(e)/idx(e~)`` is 1 around every cycle.

    Uses the fundamental cycles of a spanning tree; a failing chord yields the
    closed path (tree path, chord, tree path back) as witness.
    """
    graph = eg.graph
    tree = graph.check_spanning_tree(spanning_tree) if spanning_tree is not None else graph.bfs_tree()
    root = graph.vertices[0]
    pot = {root: Fraction(1)}
    path: dict[str, tuple[OrientedEdge, ...]] = {root: ()}
    tree_set = set(tree)
    changed = True
    while changed:
        changed = False
        for name, s, t in graph.edges:
            if name not in tree_set:
                continue
            for oe, a, b in (((name, 1), s, t), ((name, -1), t, s)):
                if a in pot and b not in pot:
                    pot[b] = pot[a] * Fraction(eg.idx[oe], eg.idx[graph.bar(oe)])
                    path[b] = path[a] + (oe,)
                    changed = True
    for name, s, t in graph.edges:
        if name in tree_set:
            continue
        oe = (name, 1)
        ratio = pot[s] * Fraction(eg.idx[oe], eg.idx[graph.bar(oe)]) / pot[t]
        if ratio != 1:
            back = tuple(graph.bar(x) for x in reversed(path[t]))
            return UnimodularityResult(False, path[s] + (oe,) + back, ratio)
    return UnimodularityResult(True)


def cycle_ratio(eg: EdgeIndexedGraph, cycle: Sequence[OrientedEdge]) -> Fraction:
    r = Fraction(1)
    for oe in cycle:
        r *= Fraction(eg.idx[oe], eg.idx[eg.graph.bar(oe)])
    return r


# ---------------------------------------------------------------------------
# fundamental group

_BAD = re.compile(r"[^A-Za-z0-9_]")


def safe_name(s: str) -> str:
    s = _BAD.sub("_", s)
    if not s or s[0].isdigit():
        s = "_" + s
    return s


def generator_naming(vertices: Sequence[str], groups: Mapping[str, LocalGroup]) -> dict[tuple[str, str], str]:
    """Global names for local generators: bare when unique, ``<vertex>_<gen>`` otherwise."""
    count: dict[str, int] = {}
    for v in vertices:
        for x in groups[v].generators:
            count[x] = count.get(x, 0) + 1
    names = {}
    for v in vertices:
        for x in groups[v].generators:
            names[(v, x)] = x if count[x] == 1 else safe_name(f"{v}_{x}")
    return names


def _rename_word(w: Word, v: str, names) -> Word:
    return tuple((names[(v, x)], e) for x, e in w)


def fundamental_group(g: GraphOfGroups, spanning_tree: Sequence[str] | None = None) -> Presentation:
    """Presentation of the fundamental group relative to a spanning tree.

    Generators: local generators plus a stable letter per non-tree edge pair.
    Relators: local relators; ``alpha_e(x) alpha_e~(x)^-1`` for tree edges;
    ``t alpha_e~(x) t^-1 alpha_e(x)^-1`` for non-tree edges, oriented so that
    ``iota(e)`` is the endpoint listed first among the vertices (loops keep
    their declared orientation).  The stable letter is ``t`` when there is a
    single non-tree edge and ``t_<edge>`` otherwise.
    """
    graph = g.graph
    tree = graph.check_spanning_tree(spanning_tree) if spanning_tree is not None else graph.bfs_tree()
    tree_set = set(tree)
    names = generator_naming(g.vertices, g.groups)
    used = set(names.values())
    chords = [e for e in g.edges if e.name not in tree_set]
    stable = {}
    for e in chords:
        t = "t" if len(chords) == 1 and "t" not in used else safe_name(f"t_{e.name}")
        if t in used:
            raise InputError(f"stable letter name {t} clashes with a local generator")
        stable[e.name] = t
        used.add(t)
    gens = [names[(v, x)] for v in g.vertices for x in g.groups[v].generators] + [stable[e.name] for e in chords]
    rels: list[Word] = []
    for v in g.vertices:
        rels.extend(_rename_word(r, v, names) for r in g.groups[v].presentation.relators)
    for e in g.edges:
        s_label, t_label = g.vertex_label(e.source), g.vertex_label(e.target)
        sign = 1 if s_label <= t_label else -1
        near = e.source if sign == 1 else e.target
        far = e.target if sign == 1 else e.source
        for x in e.group.generators:
            a_near = _rename_word(e.map_at(sign)[x], near, names)
            a_far = _rename_word(e.map_at(-sign)[x], far, names)
            if e.name in tree_set:
                rels.append(concat(a_near, inverse(a_far)))
            else:
                t = gen(stable[e.name])
                rels.append(concat(t, a_far, inverse(t), inverse(a_near)))
    return Presentation(tuple(gens), tuple(rels))


# ---------------------------------------------------------------------------
# covolumes


def serre_covolume(g: GraphOfGroups) -> Fraction:
    """``sum over vertices of 1/|A_v|``."""
    total = Fraction(0)
    for v in g.vertices:
        order = g.groups[v].order
        if order is None:
            raise DomainError(f"vertex group at {v} is not finite; use covolume_sum")
        total += Fraction(1, order)
    return total


@dataclass(frozen=True)
class GeometricTail:
    """Tail terms ``first * ratio**k`` for ``k >= 0``, divided by ``kernel_order``."""

    first: Fraction
    ratio: Fraction
    kernel_order: int = 1

    def total(self) -> Fraction:
        if not 0 <= self.ratio < 1:
            raise DomainError(f"geometric tail with ratio {self.ratio} diverges")
        return Fraction(self.first) / (1 - Fraction(self.ratio)) / self.kernel_order


@dataclass(frozen=True)
class CovolumeSum:
    value: Fraction
    finite_terms: int
    tail: GeometricTail | None = None

    def to_obj(self):
        obj = {"value": _frac_str(self.value), "finite_terms": self.finite_terms}
        if self.tail is not None:
            obj["tail"] = {
                "first": _frac_str(self.tail.first),
                "ratio": _frac_str(self.tail.ratio),
                "kernel_order": self.tail.kernel_order,
            }
        return obj


def covolume_sum(entries, tail: GeometricTail | None = None) -> CovolumeSum:
    """``sum mu_sigma / |K_sigma|`` over finitely many entries plus a declared tail.

    ``entries`` must be a finite sequence of ``(mu, kernel_order)`` pairs; an
    iterator or generator has no declared bound and is refused.
    """
    if not isinstance(entries, (list, tuple)):
        raise InputError("unbounded entry stream: pass a finite sequence and declare any tail as GeometricTail")
    total = Fraction(0)
    for mu, k in entries:
        k = int(k)
        if k < 1:
            raise InputError("kernel orders must be positive")
        mu = Fraction(mu)
        if mu < 0:
            raise InputError("measures must be nonnegative")
        total += mu / k
    if tail is not None:
        total += tail.total()
    return CovolumeSum(total, len(entries), tail)


# ---------------------------------------------------------------------------
# Bass-Serre tree balls


@dataclass(frozen=True)
class TreeNode:
    id: int
    orbit: str
    label: str
    depth: int
    parent: int | None
    via: OrientedEdge | None


@dataclass(frozen=True)
class TreeBall:
    radius: int
    nodes: tuple[TreeNode, ...]
    edges: tuple[tuple[int, int, str], ...]
    orbit_valence: Mapping[str, int]

    def degree(self, node: int) -> int:
        return sum(1 for a, b, _ in self.edges if a == node or b == node)

    def audit(self) -> list[tuple[int, int, int]]:
        """``(node, degree, expected)`` for every interior node whose degree is off."""
        deg = {n.id: 0 for n in self.nodes}
        for a, b, _ in self.edges:
            deg[a] += 1
            deg[b] += 1
        bad = []
        for n in self.nodes:
            if n.depth < self.radius and deg[n.id] != self.orbit_valence[n.orbit]:
                bad.append((n.id, deg[n.id], self.orbit_valence[n.orbit]))
        return bad

    def to_obj(self):
        return {
            "radius": self.radius,
            "nodes": [
                {"id": n.id, "orbit": n.orbit, "label": n.label, "depth": n.depth,
                 "valence": self.orbit_valence[n.orbit]}
                for n in self.nodes
            ],
            "edges": [[a, b, lab] for a, b, lab in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["graph B {"]
        for n in self.nodes:
            lines.append(f'  n{n.id} [label="{n.orbit}:{n.label or "root"}"];')
        for a, b, lab in self.edges:
            lines.append(f'  n{a} -- n{b} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def develop_tree_ball(g: GraphOfGroups, base: str, radius: int) -> TreeBall:
    """Ball of the Bass-Serre tree around the vertex ``A_base``.

    Each tree vertex ``x A_v`` has one neighbour per oriented edge ``e`` at
    ``v`` and left coset of ``alpha_e(A_e)`` in ``A_v``.  The neighbour leading
    back to the parent is the identity coset of the reversed arrival edge.
    """
    if radius < 0:
        raise InputError("radius must be nonnegative")
    if base not in g.vertices:
        raise InputError(f"unknown base vertex {base}")
    if not g.all_finite:
        raise DomainError("tree development needs finite local groups")
    graph = g.graph
    cosets: dict[OrientedEdge, int] = {}
    for e in g.edges:
        for sign in (1, -1):
            v = e.source if sign == 1 else e.target
            vg = g.groups[v].table
            image = vg.closure([vg.evaluate(w) for w in e.map_at(sign).values()])
            cosets[(e.name, sign)] = len(vg.left_cosets(image))
    valence = bass_serre_valences(edge_indices(g))
    budget = config.budget(config.NODE_BUDGET)
    nodes = [TreeNode(0, base, "", 0, None, None)]
    edges = []
    frontier = [0]
    for depth in range(radius):
        nxt = []
        for nid in frontier:
            node = nodes[nid]
            back = graph.bar(node.via) if node.via is not None else None
            for oe in graph.outgoing(node.orbit):
                for k in range(cosets[oe]):
                    if oe == back and k == 0:
                        continue
                    child = TreeNode(
                        len(nodes),
                        graph.tau(oe),
                        f"{node.label}/{edge_label(oe)}:{k}" if node.label else f"{edge_label(oe)}:{k}",
                        depth + 1,
                        nid,
                        oe,
                    )
                    nodes.append(child)
                    if len(nodes) > budget:
                        raise BudgetError(f"tree ball exceeds the node budget {budget}")
                    edges.append((nid, child.id, edge_label(oe)))
                    nxt.append(child.id)
        frontier = nxt
    return TreeBall(radius, tuple(nodes), tuple(edges), valence)
