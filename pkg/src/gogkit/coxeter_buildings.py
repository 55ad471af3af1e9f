"""Right-angled Coxeter systems, their chambers, and right-angled buildings.

Chambers of the building with parameters ``q`` are modelled as elements of
the graph product of the cyclic groups ``Z_{q_i}`` over the commutation
graph.  An element is a tuple of syllables ``(i, k)`` with ``1 <= k < q_i``,
in the lexicographically least shortlex order among its commutation
rearrangements.  ``i``-adjacency is right multiplication by a nontrivial
``i``-syllable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import config
from .complexes_of_groups import CellComplex
from .errors import BudgetError, DomainError, InputError
from .flag_complex import FlagComplex

INF = 0  # encodes m = infinity


@dataclass(frozen=True)
class RightAngledCoxeterSystem:
    I: tuple[str, ...]
    commuting: frozenset[frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(self.I))
        object.__setattr__(self, "commuting", frozenset(frozenset(p) for p in self.commuting))
        if not self.I:
            raise InputError("the index set must be nonempty")
        if len(set(self.I)) != len(self.I):
            raise InputError("duplicate generators in the index set")
        for p in self.commuting:
            if len(p) != 2 or not p <= set(self.I):
                raise InputError(f"bad commuting pair {sorted(p)}")

    @classmethod
    def from_pairs(cls, I: Sequence[str], pairs) -> "RightAngledCoxeterSystem":
        return cls(tuple(I), frozenset(frozenset(p) for p in pairs))

    def m(self, i: str, j: str) -> int:
        """1 on the diagonal, 2 for commuting pairs, ``INF`` (0) otherwise."""
        if i == j:
            return 1
        return 2 if frozenset((i, j)) in self.commuting else INF

    def commute(self, i: str, j: str) -> bool:
        return i != j and frozenset((i, j)) in self.commuting

    def pos(self, i: str) -> int:
        return self.I.index(i)

    def graph(self) -> FlagComplex:
        return FlagComplex(self.I, self.commuting)

    def to_obj(self):
        return {"I": list(self.I), "commuting_pairs": [list(e) for e in self.graph().sorted_edges()]}


@dataclass(frozen=True)
class BuildingSpec:
    system: RightAngledCoxeterSystem
    q: Mapping[str, int]

    def __post_init__(self):
        if set(self.q) != set(self.system.I):
            raise InputError("building parameters must be given for every generator")
        for i, v in self.q.items():
            if not isinstance(v, int) or v < 2:
                raise InputError(f"parameter q_{i} = {v} must be an integer >= 2")

    def to_obj(self):
        d = self.system.to_obj()
        d["q"] = {i: self.q[i] for i in self.system.I}
        return d


def system_from_obj(obj: dict) -> RightAngledCoxeterSystem:
    try:
        return RightAngledCoxeterSystem.from_pairs([str(i) for i in obj["I"]], [tuple(map(str, p)) for p in obj.get("commuting_pairs", [])])
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad Coxeter system description: {exc}") from exc


def spec_from_obj(obj: dict) -> BuildingSpec:
    sysm = system_from_obj(obj)
    if "q" not in obj:
        raise InputError("building spec needs parameters q")
    q = obj["q"]
    if isinstance(q, list):
        q = dict(zip(sysm.I, q))
    return BuildingSpec(sysm, {str(k): v for k, v in q.items()})


def pentagon_system() -> RightAngledCoxeterSystem:
    """Commutation graph the 5-cycle ``i1 - i3 - i4 - i2 - i5 - i1``."""
    return RightAngledCoxeterSystem.from_pairs(
        ["i1", "i2", "i3", "i4", "i5"], [("i1", "i3"), ("i3", "i4"), ("i4", "i2"), ("i2", "i5"), ("i5", "i1")]
    )


def pentagon_spec(q1: int = 10, q2: int = 10, q3: int = 2, q4: int = 2, q5: int = 2) -> BuildingSpec:
    return BuildingSpec(pentagon_system(), {"i1": q1, "i2": q2, "i3": q3, "i4": q4, "i5": q5})


def type_label(J: Sequence[str]) -> str:
    return "{" + ",".join(J) + "}"


def spherical_subsets(system: RightAngledCoxeterSystem, budget: int | None = None) -> list[tuple[str, ...]]:
    """Cliques of the commutation graph, ``()`` first, then by size and positions."""
    return system.graph().cliques(budget)


def nerve(system: RightAngledCoxeterSystem) -> FlagComplex:
    return system.graph()


def chamber(system: RightAngledCoxeterSystem) -> tuple[CellComplex, dict[str, tuple[str, ...]]]:
    """The chamber as a cell poset on the spherical subsets, and each cell's type.

    Larger types are smaller cells: ``J u {k}`` is a facet of ``J``.  The cell
    of type ``J`` has dimension ``(size of the largest spherical set containing
    J) - |J|``.
    """
    S = spherical_subsets(system)
    sset = {frozenset(J) for J in S}
    top = {}
    for J in S:
        top[J] = max(len(K) for K in S if set(J) <= set(K))
    names = {J: type_label(J) for J in S}
    cells = tuple(names[J] for J in S)
    dim = {names[J]: top[J] - len(J) for J in S}
    facets = {}
    for J in S:
        fs = []
        for k in system.I:
            if k not in J and frozenset(J) | {k} in sset:
                K = tuple(i for i in system.I if i in J or i == k)
                fs.append(names[K])
        facets[names[J]] = tuple(fs)
    return CellComplex(cells, dim, facets), {names[J]: J for J in S}


# ---------------------------------------------------------------------------
# symmetry conditions


def _require_infinite(system: RightAngledCoxeterSystem, i1: str, i2: str) -> None:
    for i in (i1, i2):
        if i not in system.I:
            raise InputError(f"unknown generator {i}")
    if i1 == i2 or system.m(i1, i2) != INF:
        raise DomainError(f"the symmetry conditions need m({i1},{i2}) = infinity")


def _search(
    system: RightAngledCoxeterSystem,
    domain: Sequence[str],
    codomain: Sequence[str],
    fixed: Mapping[str, str],
    q: Mapping[str, int] | None = None,
) -> dict[str, str] | None:
    """Lexicographically least m-preserving bijection ``domain -> codomain`` extending ``fixed``."""
    if len(domain) != len(codomain):
        return None
    dset, cset = set(domain), set(codomain)
    deg = {i: sum(system.commute(i, j) for j in domain) for i in domain}
    cdeg = {i: sum(system.commute(i, j) for j in codomain) for i in codomain}
    order = sorted(codomain, key=system.pos)
    dom = sorted(domain, key=system.pos)
    for a, b in fixed.items():
        if a not in dset or b not in cset:
            return None
    img: dict[str, str] = {}
    used: set[str] = set()

    def ok(a: str, b: str) -> bool:
        if b in used or deg[a] != cdeg[b]:
            return False
        if q is not None and q[a] != q[b]:
            return False
        return all(system.m(a, x) == system.m(b, img[x]) for x in img)

    def rec(k: int) -> bool:
        if k == len(dom):
            return True
        a = dom[k]
        cands = [fixed[a]] if a in fixed else order
        for b in cands:
            if ok(a, b):
                img[a] = b
                used.add(b)
                if rec(k + 1):
                    return True
                del img[a]
                used.discard(b)
        return False

    return dict(img) if rec(0) else None


def check_T1(
    system: RightAngledCoxeterSystem, i1: str, i2: str, extending: Mapping[str, str] | None = None
) -> dict[str, str] | None:
    """A bijection ``g`` of ``I`` preserving ``m`` with ``g(i1) = i2`` (optionally extending a partial map)."""
    _require_infinite(system, i1, i2)
    fixed = dict(extending or {})
    if fixed.get(i1, i2) != i2:
        return None
    fixed[i1] = i2
    g = _search(system, system.I, system.I, fixed)
    if g is not None:
        assert verify_T1(system, i1, i2, g)
    return g


def verify_T1(system: RightAngledCoxeterSystem, i1: str, i2: str, g: Mapping[str, str]) -> bool:
    if sorted(g) != sorted(system.I) or sorted(g.values()) != sorted(system.I) or g[i1] != i2:
        return False
    return all(system.m(a, b) == system.m(g[a], g[b]) for a in system.I for b in system.I)


def finite_neighbourhood(system: RightAngledCoxeterSystem, i: str) -> list[str]:
    return [j for j in system.I if system.m(i, j) != INF]


def check_T2(spec: BuildingSpec, i1: str, i2: str) -> dict[str, str] | None:
    """A bijection between the finite-m neighbourhoods of ``i1`` and ``i2`` preserving m and q."""
    system = spec.system
    _require_infinite(system, i1, i2)
    h = _search(system, finite_neighbourhood(system, i1), finite_neighbourhood(system, i2), {i1: i2}, spec.q)
    if h is not None:
        assert verify_T2(spec, i1, i2, h)
    return h


def verify_T2(spec: BuildingSpec, i1: str, i2: str, h: Mapping[str, str]) -> bool:
    system = spec.system
    dom, cod = finite_neighbourhood(system, i1), finite_neighbourhood(system, i2)
    if sorted(h) != sorted(dom) or sorted(h.values()) != sorted(cod) or h[i1] != i2:
        return False
    if any(spec.q[a] != spec.q[h[a]] for a in dom):
        return False
    return all(system.m(a, b) == system.m(h[a], h[b]) for a in dom for b in dom)


# ---------------------------------------------------------------------------
# chambers as graph-product elements

Syllable = tuple[int, int]  # (generator position, exponent)


class GraphProduct:
    def __init__(self, spec: BuildingSpec):
        self.spec = spec
        I = spec.system.I
        self.n = len(I)
        self.q = [spec.q[i] for i in I]
        self.comm = [[spec.system.commute(a, b) for b in I] for a in I]

    def normal_form(self, w: Sequence[Syllable]) -> tuple[Syllable, ...]:
        """Lexicographically least rearrangement of a reduced syllable word."""
        rest = list(w)
        out = []
        while rest:
            best = None
            for k, (i, _) in enumerate(rest):
                if all(self.comm[j][i] for j, _ in rest[:k]):
                    if best is None or i < rest[best][0]:
                        best = k
            out.append(rest.pop(best))
        return tuple(out)

    def right_mul(self, w: tuple[Syllable, ...], i: int, k: int) -> tuple[Syllable, ...]:
        k %= self.q[i]
        if k == 0:
            return w
        lst = list(w)
        for j in range(len(lst) - 1, -1, -1):
            x, e = lst[j]
            if x == i:
                e2 = (e + k) % self.q[i]
                if e2:
                    lst[j] = (i, e2)
                else:
                    del lst[j]
                return self.normal_form(lst)
            if not self.comm[x][i]:
                break
        lst.append((i, k))
        return self.normal_form(lst)

    def label(self, w: Sequence[Syllable]) -> str:
        if not w:
            return "1"
        I = self.spec.system.I
        return " ".join(f"{I[i]}^{e}" for i, e in w)


@dataclass(frozen=True)
class ResidueCheck:
    type: str
    size: int
    expected: int
    members: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.size == self.expected


@dataclass(frozen=True)
class ChamberBall:
    spec: BuildingSpec
    radius: int
    chambers: tuple[str, ...]
    distance: tuple[int, ...]
    edges: tuple[tuple[int, int, str], ...]  # undirected, a < b, adjacency type
    residues: tuple[ResidueCheck, ...]

    @property
    def audit_ok(self) -> bool:
        return all(r.ok for r in self.residues)

    def failures(self) -> list[ResidueCheck]:
        return [r for r in self.residues if not r.ok]

    def residue_sizes(self, i: str) -> list[int]:
        return [r.size for r in self.residues if r.type == i]

    def sphere_sizes(self) -> list[int]:
        out = [0] * (self.radius + 1)
        for d in self.distance:
            out[d] += 1
        return out

    def to_obj(self):
        return {
            "radius": self.radius,
            "chambers": [{"id": k, "word": w, "distance": d} for k, (w, d) in enumerate(zip(self.chambers, self.distance))],
            "edges": [[a, b, i] for a, b, i in self.edges],
            "residues": [
                {"type": r.type, "size": r.size, "expected": r.expected, "ok": r.ok} for r in self.residues
            ],
            "audit_ok": self.audit_ok,
        }

    def to_dot(self) -> str:
        palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "cyan", "magenta", "gray", "olive"]
        I = self.spec.system.I
        color = {i: palette[k % len(palette)] for k, i in enumerate(I)}
        lines = ["graph C {"]
        for k, w in enumerate(self.chambers):
            lines.append(f'  c{k} [label="{w}"];')
        for a, b, i in self.edges:
            lines.append(f'  c{a} -- c{b} [color={color[i]}, label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def chamber_graph_ball(spec: BuildingSpec, radius: int, budget: int | None = None) -> ChamberBall:
    """Chambers within gallery distance ``radius`` of the identity chamber, with a residue audit.

    The audit covers every ``i``-residue all of whose chambers lie in the ball
    and checks it has exactly ``q_i`` chambers.
    """
    if radius < 0:
        raise InputError("radius must be nonnegative")
    budget = config.budget(config.NODE_BUDGET) if budget is None else budget
    gp = GraphProduct(spec)
    I = spec.system.I
    index = {(): 0}
    words: list[tuple[Syllable, ...]] = [()]
    dist = [0]
    q = deque([0])
    while q:
        a = q.popleft()
        if dist[a] == radius:
            continue
        for i in range(gp.n):
            for k in range(1, gp.q[i]):
                w = gp.right_mul(words[a], i, k)
                if w not in index:
                    if len(words) >= budget:
                        raise BudgetError(f"chamber ball exceeds the node budget {budget}")
                    index[w] = len(words)
                    words.append(w)
                    dist.append(dist[a] + 1)
                    q.append(index[w])
    edges = set()
    nbrs: dict[tuple[int, int], list[int]] = {}
    for a, w in enumerate(words):
        for i in range(gp.n):
            inside = []
            for k in range(1, gp.q[i]):
                b = index.get(gp.right_mul(w, i, k))
                if b is not None:
                    inside.append(b)
                    edges.add((min(a, b), max(a, b), I[i]))
            nbrs[(a, i)] = inside
    residues = []
    for i in range(gp.n):
        seen: set[int] = set()
        for a in range(len(words)):
            if a in seen:
                continue
            comp = {a}
            stack = [a]
            while stack:
                x = stack.pop()
                for y in nbrs[(x, i)]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            if all(len(nbrs[(x, i)]) == gp.q[i] - 1 for x in comp):
                residues.append(ResidueCheck(I[i], len(comp), gp.q[i], tuple(sorted(comp))))
    residues.sort(key=lambda r: (spec.system.pos(r.type), r.members))
    return ChamberBall(
        spec,
        radius,
        tuple(gp.label(w) for w in words),
        tuple(dist),
        tuple(sorted(edges)),
        tuple(residues),
    )
