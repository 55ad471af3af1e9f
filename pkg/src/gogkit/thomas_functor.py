"""The two-stage functor from graphs of groups to complexes of groups over a
right-angled building.

``F1`` subdivides every edge: the midpoint carries the edge group and maps to
both endpoints.  ``F2`` replaces every edge ``e`` by a copy of the chamber,
with the midpoint at the cone vertex (type ``{}``) and the endpoints at the
``{i1}``- and ``{i2}``-vertices.  Chamber copies are glued along their
``i1``/``i2``-faces at common endpoints, by type when the graph is
two-coloured and through the (T2) map ``h`` otherwise.

Local groups of the output: a cell of type ``J`` away from ``i1, i2`` in the
copy of ``e`` carries ``G_e x prod_{j in J} Z_{q_j}``; a face cell of type
``J`` containing the home type ``i_k`` of the endpoint ``v`` carries
``G_v x prod_{j in J - i_k} Z_{q_j}``.

Cell names are ``<edge>|{...}`` for chamber-interior cells and
``<vertex>|{...}`` for face cells.  The cyclic factor of type ``i<digits>``
has generator ``x<digits>``; other types use ``x_<type>``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import finite_groups as fg
from .complexes_of_groups import ComplexOfGroups, SubdivisionGraph, cocycle_check, fundamental_group_cog
from .coxeter_buildings import BuildingSpec, check_T1, check_T2, spherical_subsets, type_label
from .errors import DomainError, FunctorInapplicable, InputError
from .fp_core import Presentation, Word, commutator, free_reduce, gen, simplify
from .graphs_of_groups import GraphOfGroups, LatticeData, bass_serre_valences, edge_indices, generator_naming, safe_name
from .local_groups import LocalGroup

_IDX = re.compile(r"^i(\d+)$")


def cyclic_name(i: str) -> str:
    m = _IDX.match(i)
    return f"x{m.group(1)}" if m else safe_name(f"x_{i}")


# ---------------------------------------------------------------------------
# F1


def midpoint_name(e: str) -> str:
    return f"[{e}]"


def F1(g: GraphOfGroups) -> ComplexOfGroups:
    """Complex of groups over the subdivided graph; no composable pairs, no twisting."""
    mids = [midpoint_name(e.name) for e in g.edges]
    if set(mids) & set(g.vertices):
        raise InputError("vertex names collide with edge midpoint names")
    vertices = tuple(g.vertices) + tuple(mids)
    groups = dict(g.groups)
    edges = []
    maps = {}
    types = {v: "vertex" for v in g.vertices}
    for e, m in zip(g.edges, mids):
        groups[m] = e.group
        types[m] = "edge"
        for side, end, mp in (("s", e.source, e.map_from), ("t", e.target, e.map_to)):
            name = f"{e.name}:{side}"
            edges.append((name, m, end))
            maps[name] = dict(mp)
    try:
        idx = edge_indices(g).idx
        indices = {(e.name, s): idx[(e.name, sign)] for e in g.edges for s, sign in (("s", 1), ("t", -1))}
    except InputError:
        indices = None
    meta = {
        "edges": [(e.name, midpoint_name(e.name), e.source, e.target) for e in g.edges],
        "vertices": tuple(g.vertices),
        "indices": indices,
        "lattice": g.lattice,
    }
    return ComplexOfGroups(SubdivisionGraph(vertices, tuple(edges), {}), groups, maps, {}, types, meta)


# ---------------------------------------------------------------------------
# F2


@dataclass(frozen=True)
class CellInfo:
    kind: str  # "interior" or "face"
    base: str  # input edge (interior) or input vertex (face)
    type: tuple[str, ...]  # canonical type J
    types: tuple[tuple[str, ...], ...]  # all types (two when glued through h)
    factors: tuple[tuple[str, int], ...]  # cyclic factors (type, order)


@dataclass(frozen=True)
class F2Data:
    i1: str
    i2: str
    bipartite: bool
    colour: Mapping[str, str] | None
    g: Mapping[str, str]
    h: Mapping[str, str] | None
    cells: Mapping[str, CellInfo]
    home: Mapping[str, str]  # input vertex -> home type of its face cells


def _product_group(base: LocalGroup, factors: list[tuple[str, int]], label: str) -> LocalGroup:
    names = [cyclic_name(i) for i, _ in factors]
    clash = set(names) & set(base.generators)
    if clash:
        raise InputError(f"local generator names {sorted(clash)} clash with cyclic factor names")
    if base.table is not None:
        t = base.table
        for (i, q), x in zip(factors, names):
            t = fg.direct_product(t, fg.cyclic(q, x))
        return LocalGroup.finite(t, label)
    gens = list(base.generators) + names
    rels = list(base.presentation.relators)
    for (i, q), x in zip(factors, names):
        rels.append(gen(x, q))
    for k, x in enumerate(names):
        for y in list(base.generators) + names[:k]:
            rels.append(commutator(gen(y), gen(x)))
    return LocalGroup.symbolic(Presentation(tuple(gens), tuple(rels)), label=label)


def _two_colour(vertices, ends) -> dict[str, int] | None:
    adj = {v: [] for v in vertices}
    for _, _, s, t in ends:
        if s == t:
            return None
        adj[s].append(t)
        adj[t].append(s)
    col = {vertices[0]: 0}
    q = deque([vertices[0]])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in col:
                col[w] = 1 - col[v]
                q.append(w)
            elif col[w] == col[v]:
                return None
    return col


def F2(c1: ComplexOfGroups, spec: BuildingSpec, i1: str, i2: str, require_extension: bool = True) -> tuple[ComplexOfGroups, F2Data]:
    meta = c1.metadata
    if "edges" not in meta:
        raise InputError("F2 expects the output of F1")
    ends = meta["edges"]
    vertices = meta["vertices"]
    if not ends:
        raise InputError("F2 needs at least one edge")
    system = spec.system
    q = spec.q
    g_w = check_T1(system, i1, i2)
    if g_w is None:
        raise FunctorInapplicable(f"(T1) fails for ({i1},{i2}): no symmetry of the Coxeter system sends {i1} to {i2}")
    indices = meta["indices"]
    if indices is None:
        raise InputError("edge indices are neither computable nor declared; cannot match valences")
    valence = {v: 0 for v in vertices}
    for e, _, s, t in ends:
        valence[s] += indices[(e, "s")]
        valence[t] += indices[(e, "t")]
    col = _two_colour(vertices, ends)
    bipartite = col is not None
    h = None
    if not bipartite or q[i1] == q[i2]:
        h = check_T2(spec, i1, i2)
        if h is None:
            raise FunctorInapplicable(f"(T2) fails for ({i1},{i2}): neighbourhoods differ in shape or parameters")
        ext = check_T1(system, i1, i2, extending=h)
        if ext is None and require_extension:
            raise FunctorInapplicable("(T1) holds but no witness g extends the (T2) witness h")
        if ext is not None:
            g_w = ext
    colour = None
    if bipartite:
        part = [v for v in vertices if col[v] == 0], [v for v in vertices if col[v] == 1]
        choices = [(i1, i2), (i2, i1)] if q[i1] != q[i2] else [(i1, i2)]
        for a, b in choices:
            if all(valence[v] == q[a] for v in part[0]) and all(valence[v] == q[b] for v in part[1]):
                colour = {v: (a if col[v] == 0 else b) for v in vertices}
                break
        if colour is None:
            raise InputError(
                f"Bass-Serre valences {dict(valence)} do not match (q_{i1}, q_{i2}) = ({q[i1]}, {q[i2]})"
            )
        home = dict(colour)
    else:
        if q[i1] != q[i2] or any(valence[v] != q[i1] for v in vertices):
            raise InputError(
                f"non-bipartite graph needs every valence equal to q_{i1} = q_{i2}; got {dict(valence)}"
            )
        home = {v: i1 for v in vertices}
    hinv = {b: a for a, b in h.items()} if h is not None else None

    S = spherical_subsets(system)
    pos = {i: k for k, i in enumerate(system.I)}

    def canon(J) -> tuple[str, ...]:
        return tuple(sorted(J, key=pos.get))

    def side_of(e_end, J):
        """(side, face vertex, translation of types) for a chamber type meeting i1 or i2."""
        e, _, s, t = e_end
        k = i1 if i1 in J else i2
        if bipartite:
            v = s if colour[s] == k else t
            side = "s" if v == s and colour[s] == k else "t"
            return side, v, None
        if k == i1:
            return "s", s, None
        return "t", t, hinv

    cells: dict[str, CellInfo] = {}
    order: list[str] = []
    groups: dict[str, LocalGroup] = {}

    def add_cell(name, info, group):
        if name in cells:
            if cells[name].types != info.types and set(info.types) - set(cells[name].types):
                cells[name] = CellInfo(info.kind, info.base, info.type, tuple(sorted(set(cells[name].types) | set(info.types), key=lambda J: [pos[i] for i in J])), info.factors)
            return
        cells[name] = info
        order.append(name)
        groups[name] = group

    # chamber cell for (edge, J): (name, side or None, translation)
    def cell_of(e_end, J):
        e, m, s, t = e_end
        if i1 not in J and i2 not in J:
            return f"{e}|{type_label(J)}", None, None
        side, v, tr = side_of(e_end, J)
        Jc = canon(tr[j] for j in J) if tr else canon(J)
        return f"{v}|{type_label(Jc)}", side, tr

    mapping_side = {}
    for e_end in ends:
        e, m, s, t = e_end
        for J in S:
            name, side, tr = cell_of(e_end, J)
            if side is None:
                factors = [(j, q[j]) for j in J]
                grp = _product_group(c1.groups[m], factors, "x".join([c1.groups[m].label or "G_e"] + [f"Z{q[j]}" for j in J]))
                add_cell(name, CellInfo("interior", e, canon(J), (canon(J),), tuple(factors)), grp)
            else:
                v = s if side == "s" else t
                Jc = canon(tr[j] for j in J) if tr else canon(J)
                hk = home[v]
                factors = [(j, q[j]) for j in Jc if j != hk]
                grp = _product_group(c1.groups[v], factors, "x".join([c1.groups[v].label or "G_v"] + [f"Z{q[j]}" for j in Jc if j != hk]))
                add_cell(name, CellInfo("face", v, Jc, (Jc, canon(J)) if tr else (Jc,), tuple(factors)), grp)
                mapping_side[(e, side)] = v

    # edges of the output scwol, keyed to compute composites
    edge_key: dict[tuple, str] = {}
    edges: list[tuple[str, str, str]] = []
    maps: dict[str, dict[str, Word]] = {}

    def add_edge(key, icell, tcell, mp, suffix=""):
        if key in edge_key:
            return edge_key[key]
        name = f"{icell}>{tcell}{suffix}"
        edge_key[key] = name
        edges.append((name, icell, tcell))
        maps[name] = mp
        return name

    def key_of(e_end, J, K):
        """Key of the chamber edge from type J to type K (J strictly inside K)."""
        e, m, s, t = e_end
        ci, si, _ = cell_of(e_end, J)
        ck, sk, tr = cell_of(e_end, K)
        if si is None and sk is None:
            return ("I", e, J, K), ci, ck, None
        if si is None:
            return ("X", e, sk, J, ck), ci, ck, (sk, tr)
        return ("F", ci, ck), ci, ck, None

    for e_end in ends:
        e, m, s, t = e_end
        loop = s == t
        for J in S:
            for K in S:
                if len(K) <= len(J) or not set(J) < set(K):
                    continue
                key, ci, ck, extra = key_of(e_end, J, K)
                if key[0] == "I":
                    mp = {x: gen(x) for x in groups[ci].generators}
                    add_edge(key, ci, ck, mp)
                elif key[0] == "X":
                    side, tr = extra
                    gedge = c1.maps[f"{e}:{side}"]
                    mp = {x: gedge[x] for x in c1.groups[m].generators}
                    for j in J:
                        jj = tr[j] if tr else j
                        mp[cyclic_name(j)] = gen(cyclic_name(jj))
                    add_edge(key, ci, ck, mp, f"@{side}" if loop else "")
                else:
                    mp = {x: gen(x) for x in groups[ci].generators}
                    add_edge(key, ci, ck, mp)

    # composites: every composable pair arises inside one chamber copy
    compose = {}
    chain_keys = {}
    for e_end in ends:
        for J in S:
            for K in S:
                if not set(J) < set(K):
                    continue
                for L in S:
                    if not set(K) < set(L):
                        continue
                    b = edge_key[key_of(e_end, J, K)[0]]
                    a = edge_key[key_of(e_end, K, L)[0]]
                    ab = edge_key[key_of(e_end, J, L)[0]]
                    prev = chain_keys.setdefault((a, b), ab)
                    if prev != ab:
                        raise InputError("inconsistent composition in the glued chambers")
                    compose[(a, b)] = ab
    ends_of = {n: (i, t) for n, i, t in edges}
    for a, (ia, _) in ends_of.items():
        for b, (_, tb) in ends_of.items():
            if ia == tb and (a, b) not in compose:
                raise InputError(f"glued chambers leave ({a},{b}) without a composite")

    types = {}
    for name in order:
        info = cells[name]
        types[name] = "=".join(type_label(J) for J in info.types)
    sg = SubdivisionGraph(tuple(order), tuple(edges), compose)
    data = F2Data(i1, i2, bipartite, colour, g_w, h, dict(cells), home)
    out_meta = {"f2": data, "edges": ends, "vertices": vertices}
    lat = meta.get("lattice")
    if lat is not None:
        out_meta["lattice"] = _propagate_lattice(lat, data, sg, ends)
    c2 = ComplexOfGroups(sg, groups, maps, {}, types, out_meta)
    res = cocycle_check(c2)
    if not res:
        raise DomainError(f"constructed complex fails the compatibility check at {res.failure}")
    return c2, data


def _propagate_lattice(lat: LatticeData, data: F2Data, sg: SubdivisionGraph, ends) -> LatticeData:
    mu = {}
    kernel = {}
    for name, info in data.cells.items():
        if info.base not in lat.mu:
            raise InputError(f"lattice metadata has no measure for {info.base}")
        mu[name] = Fraction(lat.mu[info.base])
        size = 1
        for _, qj in info.factors:
            size *= qj
        kernel[name] = lat.kernel_order.get(info.base, 1) * size
    psi = {}
    for n, i, t in sg.edges:
        base = data.cells[i].base
        if data.cells[i].kind == "interior" and data.cells[t].kind == "face" and base in lat.psi:
            psi[n] = lat.psi[base]
        else:
            psi[n] = "id"
    return LatticeData(mu, kernel, psi, dict(lat.flags), "propagated")


# ---------------------------------------------------------------------------
# composite and presentation


@dataclass(frozen=True, eq=False)
class ThomasResult:
    f1: ComplexOfGroups
    complex: ComplexOfGroups
    data: F2Data
    raw_presentation: Presentation
    presentation: Presentation

    def lattice_entries(self) -> list[tuple[Fraction, int]]:
        lat = self.complex.metadata.get("lattice")
        if lat is None:
            raise DomainError("no lattice metadata to sum")
        return [(lat.mu[v], lat.kernel_order[v]) for v in self.complex.graph.vertices]


def output_presentation(c2: ComplexOfGroups, data: F2Data) -> tuple[Presentation, Presentation]:
    """Raw presentation (BFS tree from the first cone vertex) and its simplified, renamed form."""
    sg = c2.graph
    ends = c2.metadata["edges"]
    root = f"{ends[0][0]}|{{}}"
    raw = fundamental_group_cog(c2, root=root)
    names = generator_naming(sg.vertices, c2.groups)
    first_edge = ends[0][0]
    rank = {}
    rename = {}
    for (cell, x), nm in names.items():
        info = data.cells[cell]
        rk = 0
        if info.kind == "interior" and info.base == first_edge and len(info.type) == 1:
            if x == cyclic_name(info.type[0]):
                rk = 2
                rename[nm] = x
        rank[nm] = rk
    vertex_names = generator_naming(c2.metadata["vertices"], {v: _face_group(c2, data, v) for v in c2.metadata["vertices"]})
    for v in c2.metadata["vertices"]:
        cell = f"{v}|{type_label((data.home[v],))}"
        for x in _face_group(c2, data, v).generators:
            nm = names[(cell, x)]
            rank[nm] = 3
            rename[nm] = vertex_names[(v, x)]
    for g in raw.generators:
        rank.setdefault(g, 1)
    simp = simplify(raw, rank=lambda g: rank.get(g, 0), max_rank=1)
    letters = [g for g in simp.generators if rank.get(g) == 1]
    if len(letters) == 1:
        rename[letters[0]] = "t"
    else:
        for k, g in enumerate(letters, 1):
            rename[g] = f"t{k}"
    final = {}
    taken = set()
    for g in simp.generators:
        nm = rename.get(g, g)
        if nm in taken or (nm != g and nm in simp.generators and nm not in rename):
            nm = g
        final[g] = nm
        taken.add(nm)
    return raw, simp.rename(final)


def _face_group(c2: ComplexOfGroups, data: F2Data, v: str) -> LocalGroup:
    cell = f"{v}|{type_label((data.home[v],))}"
    return c2.groups[cell]


def thomas(g: GraphOfGroups, spec: BuildingSpec, i1: str, i2: str, require_extension: bool = True) -> ThomasResult:
    c1 = F1(g)
    c2, data = F2(c1, spec, i1, i2, require_extension)
    raw, pres = output_presentation(c2, data)
    return ThomasResult(c1, c2, data, raw, pres)


def expected_cell_count(data: F2Data, spec: BuildingSpec, n_edges: int, vertices) -> int:
    """Direct count: interior types per edge plus face types per input vertex."""
    S = spherical_subsets(spec.system)
    interior = sum(1 for J in S if data.i1 not in J and data.i2 not in J)
    faces = {v: sum(1 for J in S if data.home[v] in J) for v in vertices}
    return interior * n_edges + sum(faces.values())
