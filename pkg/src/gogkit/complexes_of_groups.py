"""Cell posets, barycentric subdivisions (scwols) and complexes of groups.

Conventions for a scwol: an edge ``a`` runs from ``i(a)`` (the larger cell) to
``t(a)`` (a face of it).  A pair ``(a, b)`` is composable when
``i(a) = t(b)``; the composite ``ab`` runs from ``i(b)`` to ``t(a)``.

A complex of groups assigns a group ``G_s`` to each vertex, a monomorphism
``psi_a: G_i(a) -> G_t(a)`` to each edge and a twisting element
``g_{a,b}`` in ``G_t(a)`` to each composable pair, subject to

* ``Ad(g_{a,b}) psi_ab = psi_a psi_b``
* ``psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import config
from .errors import BudgetError, DomainError, InputError, UnverifiableError
from .fp_core import Presentation, Word, concat, exponent_sum, format_word, free_reduce, gen, inverse, substitute
from .graphs_of_groups import CovolumeSum, GeometricTail, covolume_sum, generator_naming, safe_name
from .local_groups import LocalGroup, local_group_from_obj, parse_edge_map


@dataclass(frozen=True)
class CellComplex:
    """Finite cell poset given by facet (covering) lists.

    ``facets[s]`` lists the codimension-one faces of ``s``.  Dimensions must
    strictly drop along facets and a cell of dimension ``d > 0`` needs a facet
    of dimension ``d - 1``.
    """

    cells: tuple[str, ...]
    dim: Mapping[str, int]
    facets: Mapping[str, tuple[str, ...]]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if len(set(self.cells)) != len(self.cells):
            raise InputError("duplicate cell names")
        cs = set(self.cells)
        for s in self.cells:
            d = self.dim[s]
            if d < 0:
                raise InputError("cell dimensions must be nonnegative")
            fs = self.facets.get(s, ())
            for f in fs:
                if f not in cs:
                    raise InputError(f"facet {f} of {s} is not a cell")
                if self.dim[f] >= d:
                    raise InputError(f"facet {f} of {s} does not have lower dimension")
            if d > 0 and not any(self.dim[f] == d - 1 for f in fs):
                raise InputError(f"cell {s} of dimension {d} has no facet of dimension {d - 1}")

    def faces(self, s: str) -> set[str]:
        """All cells strictly below ``s``."""
        out = set()
        stack = list(self.facets.get(s, ()))
        while stack:
            f = stack.pop()
            if f not in out:
                out.add(f)
                stack.extend(self.facets.get(f, ()))
        return out

    def strict_pairs(self) -> list[tuple[str, str]]:
        order = {c: i for i, c in enumerate(self.cells)}
        return [(s, t) for s in self.cells for t in sorted(self.faces(s), key=order.get)]

    def to_obj(self):
        return {"cells": [{"name": c, "dim": self.dim[c], "facets": list(self.facets.get(c, ()))} for c in self.cells]}


def cell_complex_from_obj(obj) -> CellComplex:
    cells = [c["name"] for c in obj["cells"]]
    return CellComplex(
        tuple(cells),
        {c["name"]: int(c["dim"]) for c in obj["cells"]},
        {c["name"]: tuple(c.get("facets", ())) for c in obj["cells"]},
    )


def solid_polygon(n: int, prefix: str = "") -> CellComplex:
    """An ``n``-gon with its interior: vertices ``p0..``, edges ``s0..``, face ``F``."""
    cells = [f"{prefix}F"] + [f"{prefix}s{i}" for i in range(n)] + [f"{prefix}p{i}" for i in range(n)]
    dim = {cells[0]: 2}
    facets = {cells[0]: tuple(f"{prefix}s{i}" for i in range(n))}
    for i in range(n):
        dim[f"{prefix}s{i}"] = 1
        dim[f"{prefix}p{i}"] = 0
        facets[f"{prefix}s{i}"] = (f"{prefix}p{i}", f"{prefix}p{(i + 1) % n}")
    return CellComplex(tuple(cells), dim, facets)


@dataclass(frozen=True)
class SubdivisionGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (name, i, t)
    compose: Mapping[tuple[str, str], str] = field(default_factory=dict)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InputError("duplicate vertices in subdivision graph")
        ends = {}
        object.__setattr__(self, "_ends", ends)
        for name, i, t in self.edges:
            if i not in vs or t not in vs:
                raise InputError(f"edge {name} has unknown endpoints")
            if name in ends:
                raise InputError(f"duplicate edge name {name}")
            if i == t:
                raise InputError("scwols have no loops")
            ends[name] = (i, t)
        for (a, b), c in self.compose.items():
            ia, ta = self._ends[a]
            ib, tb = self._ends[b]
            ic, tc = self._ends[c]
            if ia != tb:
                raise InputError(f"({a},{b}) is not composable")
            if ic != ib or tc != ta:
                raise InputError(f"composite of ({a},{b}) has the wrong endpoints")
        for a, (ia, _) in self._ends.items():
            for b, (_, tb) in self._ends.items():
                if ia == tb and (a, b) not in self.compose:
                    raise InputError(f"missing composite for composable pair ({a},{b})")

    def i(self, a: str) -> str:
        return self._ends[a][0]

    def t(self, a: str) -> str:
        return self._ends[a][1]

    @property
    def composable_pairs(self) -> list[tuple[str, str]]:
        return list(self.compose)

    def composable_triples(self) -> list[tuple[str, str, str]]:
        out = []
        for (a, b) in self.compose:
            for (b2, c) in self.compose:
                if b2 == b:
                    out.append((a, b, c))
        return out

    def out_edges(self, v: str) -> list[str]:
        return [n for n, i, _ in self.edges if i == v]

    def in_edges(self, v: str) -> list[str]:
        return [n for n, _, t in self.edges if t == v]

    def bfs_tree(self, root: str | None = None) -> list[str]:
        root = self.vertices[0] if root is None else root
        seen = {root}
        tree = []
        q = deque([root])
        while q:
            v = q.popleft()
            for name, i, t in self.edges:
                for a, b in ((i, t), (t, i)):
                    if a == v and b not in seen:
                        seen.add(b)
                        tree.append(name)
                        q.append(b)
        if len(seen) != len(self.vertices):
            raise InputError("subdivision graph is not connected")
        return tree

    def to_obj(self):
        return {
            "vertices": list(self.vertices),
            "edges": [[n, i, t] for n, i, t in self.edges],
            "composable": [[a, b, c] for (a, b), c in self.compose.items()],
        }

    def to_dot(self, types: Mapping[str, str] | None = None) -> str:
        lines = ["digraph X {"]
        for k, v in enumerate(self.vertices):
            lab = types.get(v, v) if types else v
            lines.append(f'  "{v}" [label="type:{lab} / coset:0"];')
        for n, i, t in self.edges:
            lines.append(f'  "{i}" -> "{t}" [label="{n}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def barycentric(c: CellComplex) -> SubdivisionGraph:
    """One vertex per cell, one edge ``s>t`` per strict face pair, all 2-chains composed."""
    pairs = c.strict_pairs()
    edges = tuple((f"{s}>{t}", s, t) for s, t in pairs)
    by_pair = {(s, t): f"{s}>{t}" for s, t in pairs}
    compose = {}
    for s, r in pairs:
        b = by_pair[(s, r)]
        for r2, t in pairs:
            if r2 == r:
                compose[(by_pair[(r, t)], b)] = by_pair[(s, t)]
    return SubdivisionGraph(c.cells, edges, compose)


@dataclass(frozen=True, eq=False)
class ComplexOfGroups:
    graph: SubdivisionGraph
    groups: Mapping[str, LocalGroup]
    maps: Mapping[str, Mapping[str, Word]]
    twists: Mapping[tuple[str, str], Word] = field(default_factory=dict)
    types: Mapping[str, str] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        g = self.graph
        if set(self.groups) != set(g.vertices):
            raise InputError("every vertex needs exactly one local group")
        for name, i, t in g.edges:
            if name not in self.maps:
                raise InputError(f"missing structure map for edge {name}")
            imgs = self.maps[name]
            if set(imgs) != set(self.groups[i].generators):
                raise InputError(f"structure map of {name} must cover the generators of {i}")
            for w in imgs.values():
                free_reduce(w, self.groups[t].generators)
        for pair, w in self.twists.items():
            if pair not in g.compose:
                raise InputError(f"twist given for non-composable pair {pair}")
            free_reduce(w, self.groups[g.t(pair[0])].generators)

    @property
    def simple(self) -> bool:
        return all(not w for w in self.twists.values())

    def twist(self, a: str, b: str) -> Word:
        return self.twists.get((a, b), ())

    def to_obj(self) -> dict:
        g = self.graph
        return {
            "vertices": [
                {"name": v, "type": self.types.get(v, v), "group": self.groups[v].to_obj()} for v in g.vertices
            ],
            "edges": [
                {"name": n, "i": i, "t": t, "map": {k: format_word(w) for k, w in self.maps[n].items()}}
                for n, i, t in g.edges
            ],
            "composable": [
                {"a": a, "b": b, "ab": c, "twist": format_word(self.twist(a, b))} for (a, b), c in g.compose.items()
            ],
            "simple": self.simple,
        }


def complex_of_groups_from_obj(obj: dict) -> ComplexOfGroups:
    """Build from ``{"cells": [...], "groups": {cell: group}, "maps": {"s>t": {...}}, "twists": [...]}``.

    The scwol is the barycentric subdivision of the cell poset.
    """
    cc = cell_complex_from_obj(obj)
    sg = barycentric(cc)
    groups = {c: local_group_from_obj(obj["groups"][c]) for c in cc.cells}
    maps = {}
    for n, i, t in sg.edges:
        raw = obj.get("maps", {}).get(n)
        if raw is None:
            if groups[i].generators:
                raise InputError(f"missing structure map for {n}")
            raw = {}
        maps[n] = parse_edge_map(raw, groups[i], groups[t])
    twists = {}
    for tw in obj.get("twists", []):
        a, b = tw["a"], tw["b"]
        twists[(a, b)] = parse_edge_map({"_": tw["element"]}, LocalGroup.symbolic(Presentation(("_",))), groups[sg.t(a)])["_"]
    return ComplexOfGroups(sg, groups, maps, twists)


# ---------------------------------------------------------------------------
# cocycle verification


@dataclass(frozen=True)
class CocycleResult:
    ok: bool
    failure: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_obj(self):
        return {"ok": self.ok, "failure": list(self.failure) if self.failure else None, "reason": self.reason}


def _equal_in(group: LocalGroup, u: Word, v: Word) -> bool | None:
    if group.table is not None:
        return group.table.evaluate(u) == group.table.evaluate(v)
    if free_reduce(u) == free_reduce(v):
        return True
    if group.free_abelian:
        return all(exponent_sum(u, x) == exponent_sum(v, x) for x in group.generators)
    return None


def cocycle_check(c: ComplexOfGroups) -> CocycleResult:
    """Check ``Ad(g_ab) psi_ab = psi_a psi_b`` on generators and the cocycle identity."""
    g = c.graph
    if not c.simple and not all(grp.is_finite for grp in c.groups.values()):
        raise UnverifiableError("twisted complex with symbolic local groups cannot be verified")
    for (a, b), ab in g.compose.items():
        target = c.groups[g.t(a)]
        tw = c.twist(a, b)
        for x in c.groups[g.i(b)].generators:
            lhs = concat(tw, c.maps[ab][x], inverse(tw))
            rhs = substitute(c.maps[b][x], c.maps[a])
            eq = _equal_in(target, lhs, rhs)
            if eq is None:
                raise UnverifiableError(f"cannot compare images of {x} along ({a},{b}) in a symbolic group")
            if not eq:
                return CocycleResult(False, (a, b), f"Ad(g) psi_ab != psi_a psi_b on generator {x}")
    for a, b, cc in g.composable_triples():
        ab = g.compose[(a, b)]
        bc = g.compose[(b, cc)]
        target = c.groups[g.t(a)]
        lhs = concat(substitute(c.twist(b, cc), c.maps[a]), c.twist(a, bc))
        rhs = concat(c.twist(a, b), c.twist(ab, cc))
        eq = _equal_in(target, lhs, rhs)
        if eq is None:
            raise UnverifiableError(f"cannot verify the cocycle identity on ({a},{b},{cc})")
        if not eq:
            return CocycleResult(False, (a, b, cc), "cocycle identity fails")
    return CocycleResult(True)


# ---------------------------------------------------------------------------
# fundamental group


def fundamental_group_cog(
    c: ComplexOfGroups, spanning_tree: Sequence[str] | None = None, root: str | None = None
) -> Presentation:
    """Presentation with local generators and one letter per edge.

    Relators: local relators, ``a x a^-1 = psi_a(x)``, ``a b = g_{a,b} (ab)``,
    and tree letters set to 1.  The edge letter of the ``k``-th edge is
    ``e<k>``; local generators use the graph-of-groups naming scheme.
    """
    g = c.graph
    tree = list(spanning_tree) if spanning_tree is not None else g.bfs_tree(root)
    tree_set = set(tree)
    names = generator_naming(g.vertices, c.groups)
    used = set(names.values())
    letter = {}
    for k, (n, _, _) in enumerate(g.edges):
        nm = f"e{k}"
        if nm in used:
            raise InputError(f"edge letter {nm} clashes with a local generator name")
        letter[n] = nm
    gens = [names[(v, x)] for v in g.vertices for x in c.groups[v].generators]
    gens += [letter[n] for n, _, _ in g.edges if n not in tree_set]

    def lw(a: str) -> Word:
        return () if a in tree_set else gen(letter[a])

    def loc(w: Word, v: str) -> Word:
        return tuple((names[(v, x)], e) for x, e in w)

    rels: list[Word] = []
    for v in g.vertices:
        rels.extend(loc(r, v) for r in c.groups[v].presentation.relators)
    for n, i, t in g.edges:
        for x in c.groups[i].generators:
            rels.append(concat(lw(n), gen(names[(i, x)]), inverse(lw(n)), inverse(loc(c.maps[n][x], t))))
    for (a, b), ab in g.compose.items():
        rels.append(concat(lw(a), lw(b), inverse(lw(ab)), inverse(loc(c.twist(a, b), g.t(a)))))
    return Presentation(tuple(gens), tuple(rels))


def complex_covolume_sum(entries, tail: GeometricTail | None = None) -> CovolumeSum:
    return covolume_sum(entries, tail)


# ---------------------------------------------------------------------------
# local development


@dataclass(frozen=True)
class DevVertex:
    id: int
    cell: str
    type: str
    depth: int
    coset: int  # running number among developed vertices over the same cell


@dataclass(frozen=True)
class DevelopmentBall:
    base: str
    radius: int
    vertices: tuple[DevVertex, ...]
    edges: tuple[tuple[int, int, str], ...]  # (larger cell vertex, face vertex, scwol edge)
    inconsistency: str | None = None

    def cofaces(self, v: int) -> list[int]:
        return sorted(a for a, b, _ in self.edges if b == v)

    def faces(self, v: int) -> list[int]:
        return sorted(b for a, b, _ in self.edges if a == v)

    def to_obj(self):
        return {
            "base": self.base,
            "radius": self.radius,
            "vertices": [
                {"id": v.id, "cell": v.cell, "type": v.type, "depth": v.depth, "coset": v.coset} for v in self.vertices
            ],
            "edges": [[a, b, n] for a, b, n in self.edges],
            "inconsistency": self.inconsistency,
        }

    def to_dot(self) -> str:
        lines = ["digraph D {"]
        for v in self.vertices:
            lines.append(f'  d{v.id} [label="type:{v.type} / coset:{v.coset}"];')
        for a, b, n in self.edges:
            lines.append(f'  d{a} -> d{b} [label="{n}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Inconsistent(Exception):
    pass


class _Developer:
    """Congruence closure over developed vertices with group-valued frames.

    Every developed vertex ``x`` over a cell ``s`` labels the vertices above it
    (its cofaces) by left cosets in ``G_s``.  A face fact ``(x, c, y, g)``
    says ``y`` is the face of ``x`` along ``c`` and that the coface of ``x``
    with label ``(b, h)`` is the coface of ``y`` with label ``(cb, g psi_c(h))``.
    Merging two vertices over the same cell records the element relating
    their labellings.
    """

    def __init__(self, c: ComplexOfGroups):
        self.c = c
        g = c.graph
        self.g = g
        self.G = {}
        for v in g.vertices:
            grp = c.groups[v]
            if grp.table is None:
                raise DomainError(f"development needs finite local groups; {v} is symbolic")
            self.G[v] = grp.table
        self.mul = {v: t.mul_list() for v, t in self.G.items()}
        self.inv = {v: [int(x) for x in t.inv] for v, t in self.G.items()}
        self.psi = {}
        self.psi_inv = {}
        self.coset_of = {}
        self.coset_reps = {}
        for n, i, t in g.edges:
            src, dst = self.G[i], self.G[t]
            im = {x: dst.evaluate(w) for x, w in c.maps[n].items()}
            f = src.hom_to(dst, im)
            if len(set(f)) != src.order:
                raise InputError(f"structure map {n} is not injective")
            self.psi[n] = f
            self.psi_inv[n] = {y: x for x, y in enumerate(f)}
            idx = dst.coset_index_map(sorted(set(f)))
            self.coset_of[n] = idx
            reps = {}
            for x in range(dst.order):
                reps.setdefault(idx[x], x)
            self.coset_reps[n] = [reps[k] for k in range(len(reps))]
        self.out = {v: g.out_edges(v) for v in g.vertices}
        self.inn = {v: g.in_edges(v) for v in g.vertices}
        self.cell: list[str] = []
        self.parent: list[tuple[int, int]] = []
        self.faces: dict[int, dict[str, tuple[int, int]]] = {}
        self.slots: dict[int, dict[tuple[str, int], tuple[int, int]]] = {}
        self.expanded: set[int] = set()
        self.queue: deque = deque()

    # group helpers
    def m(self, v, a, b):
        return self.mul[v][a][b]

    def new_vertex(self, cell: str) -> int:
        x = len(self.cell)
        self.cell.append(cell)
        self.parent.append((x, 0))
        self.faces[x] = {}
        self.slots[x] = {}
        return x

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x][0] != x:
            path.append(x)
            x = self.parent[x][0]
        root = x
        cell = self.cell[root]
        # compose gauges from the top of the path down
        acc = 0
        for y in reversed(path):
            acc = self.m(cell, acc, self.parent[y][1])
            self.parent[y] = (root, acc)
        if not path:
            return root, 0
        return root, self.parent[path[0]][1]

    def merge(self, a: int, b: int, t: int) -> None:
        """Identify roots ``a`` and ``b``: label ``v`` at ``a`` is label ``t v`` at ``b``."""
        cell = self.cell[a]
        if a < b:
            a, b, t = b, a, self.inv[cell][t]
        self.parent[a] = (b, t)
        if a in self.expanded:
            self.expanded.add(b)
        for c, (y, gam) in self.faces.pop(a).items():
            self.queue.append((a, c, y, gam))
        for (e, _), (z, gz) in self.slots.pop(a).items():
            self.queue.append((z, e, a, gz))

    def acts_trivially(self, cell: str, t: int) -> bool:
        for a in self.inn[cell]:
            co = self.coset_of[a]
            for r in self.coset_reps[a]:
                if co[self.m(cell, t, r)] != co[r]:
                    return False
        return True

    def process(self) -> None:
        g = self.g
        while self.queue:
            x, c, y, gam = self.queue.popleft()
            xr, s = self.find(x)
            yr, u = self.find(y)
            sig, tau = self.cell[xr], self.cell[yr]
            if g.i(c) != sig or g.t(c) != tau:
                raise _Inconsistent(f"edge {c} does not join cells {sig} and {tau}")
            psi = self.psi[c]
            gg = self.m(tau, self.m(tau, u, gam), psi[self.inv[sig][s]])
            old = self.faces[xr].get(c)
            if old is not None:
                y2r, u2 = self.find(old[0])
                g2 = self.m(tau, u2, old[1])
                t = self.m(tau, g2, self.inv[tau][gg])
                if y2r != yr:
                    self.merge(yr, y2r, t)
                elif t != 0 and not self.acts_trivially(tau, t):
                    raise _Inconsistent(f"vertex over {tau} is forced to have two different frames")
                continue
            self.faces[xr][c] = (yr, gg)
            key = (c, self.coset_of[c][gg])
            other = self.slots[yr].get(key)
            if other is None:
                self.slots[yr][key] = (xr, gg)
            else:
                zr, w = self.find(other[0])
                gz = self.m(tau, other[1], psi[self.inv[sig][w]])
                s0 = self.psi_inv[c][self.m(tau, self.inv[tau][gg], gz)]
                if zr != xr:
                    self.merge(zr, xr, s0)
                    if self.find(xr)[0] != xr:
                        # absorbed: its facts were re-queued and the survivor has composites
                        continue
                elif s0 != 0 and not self.acts_trivially(sig, s0):
                    raise _Inconsistent(f"vertex over {sig} occupies two positions above one face")
            # composites: faces of y, and cofaces of x
            for d, (w_, gw) in list(self.faces[yr].items()):
                dc = g.compose.get((d, c))
                if dc is not None:
                    self.queue.append((xr, dc, w_, self.m(g.t(d), gw, self.psi[d][gg])))
            for (b, _), (z, gz) in list(self.slots[xr].items()):
                cb = g.compose.get((c, b))
                if cb is not None:
                    self.queue.append((z, cb, yr, self.m(tau, gg, psi[gz])))

    def expand(self, x: int) -> None:
        x, _ = self.find(x)
        cell = self.cell[x]
        for c in self.out[cell]:
            if c not in self.faces[x]:
                y = self.new_vertex(self.g.t(c))
                self.queue.append((x, c, y, 0))
                self.process()
                x, _ = self.find(x)
        for a in self.inn[cell]:
            for k, r in enumerate(self.coset_reps[a]):
                if (a, k) not in self.slots[x]:
                    z = self.new_vertex(self.g.i(a))
                    self.queue.append((z, a, x, r))
                    self.process()
                    x, _ = self.find(x)
        self.expanded.add(x)

    def neighbours(self, x: int) -> list[tuple[str, int, int]]:
        out = []
        for c, (y, _) in sorted(self.faces[x].items()):
            out.append((c, 0, self.find(y)[0]))
        for (a, k), (z, _) in sorted(self.slots[x].items()):
            out.append((a, k + 1, self.find(z)[0]))
        return out

    def distances(self, base: int) -> dict[int, int]:
        b = self.find(base)[0]
        dist = {b: 0}
        q = deque([b])
        while q:
            x = q.popleft()
            for _, _, y in self.neighbours(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist


def develop_ball(c: ComplexOfGroups, base: str, radius: int, margin: int = 1) -> DevelopmentBall:
    """Ball of radius ``radius`` (in the subdivision 1-skeleton) of the development.

    Developed greedily: every vertex within ``radius + margin`` gets its full
    local development, and vertices are identified whenever two local charts
    force it.  A contradiction between charts is returned as
    ``inconsistency`` (a non-developability witness for this ball).
    """
    if radius < 0:
        raise InputError("radius must be nonnegative")
    if base not in c.graph.vertices:
        raise InputError(f"unknown base vertex {base}")
    if not c.simple:
        raise DomainError("development is implemented for simple complexes of groups")
    budget = config.budget(config.NODE_BUDGET)
    dev = _Developer(c)
    b0 = dev.new_vertex(base)
    problem = None
    try:
        while True:
            dist = dev.distances(b0)
            todo = sorted((d, x) for x, d in dist.items() if d <= radius + margin and x not in dev.expanded)
            if not todo:
                break
            for _, x in todo:
                if dev.find(x)[0] not in dev.expanded:
                    dev.expand(x)
                if len(dev.cell) > budget:
                    raise BudgetError(f"development exceeds the node budget {budget}")
    except _Inconsistent as exc:
        problem = str(exc)
    dist = dev.distances(b0)
    root = dev.find(b0)[0]
    order = [root]
    seen = {root}
    q = deque([root])
    while q:
        x = q.popleft()
        for _, _, y in dev.neighbours(x):
            if y not in seen and dist.get(y, radius + 1) <= radius:
                seen.add(y)
                order.append(y)
                q.append(y)
    ids = {x: k for k, x in enumerate(order)}
    per_cell: dict[str, int] = {}
    verts = []
    for x in order:
        cell = dev.cell[x]
        k = per_cell.get(cell, 0)
        per_cell[cell] = k + 1
        verts.append(DevVertex(ids[x], cell, c.types.get(cell, cell), dist[x], k))
    edges = []
    for x in order:
        for cname, (y, _) in sorted(dev.faces[x].items()):
            yr = dev.find(y)[0]
            if yr in ids:
                edges.append((ids[x], ids[yr], cname))
    edges.sort()
    return DevelopmentBall(base, radius, tuple(verts), tuple(edges), problem)
