"""Flag complexes stored as their 1-skeleton."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import config
from .errors import BudgetError, InputError


@dataclass(frozen=True)
class FlagComplex:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertices in flag complex")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= vs:
                raise InputError(f"bad edge {sorted(e)}")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "FlagComplex":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self, v: str) -> list[str]:
        return [u for u in self.vertices if u != v and self.adjacent(u, v)]

    def sorted_edges(self) -> list[tuple[str, str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        return sorted((tuple(sorted(e, key=pos.get)) for e in self.edges), key=lambda e: (pos[e[0]], pos[e[1]]))

    def cliques(self, budget: int | None = None) -> list[tuple[str, ...]]:
        """All cliques including the empty one, ordered by size then positions."""
        budget = config.budget(config.CLIQUE_BUDGET) if budget is None else budget
        vs = self.vertices
        n = len(vs)
        nbr = [{j for j in range(n) if j != i and self.adjacent(vs[i], vs[j])} for i in range(n)]
        out: list[tuple[int, ...]] = [()]

        def grow(clique: tuple[int, ...], cand: set[int]):
            for j in sorted(cand):
                c = clique + (j,)
                out.append(c)
                if len(out) > budget:
                    raise BudgetError(f"more than {budget} cliques")
                grow(c, {k for k in cand if k > j} & nbr[j])

        grow((), set(range(n)))
        out.sort(key=lambda c: (len(c), c))
        return [tuple(vs[i] for i in c) for c in out]

    def simplices(self) -> list[tuple[str, ...]]:
        return self.cliques()[1:]

    def induced(self, keep: Iterable[str]) -> "FlagComplex":
        ks = set(keep)
        vs = tuple(v for v in self.vertices if v in ks)
        return FlagComplex(vs, frozenset(e for e in self.edges if e <= ks))

    def to_obj(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    def to_dot(self) -> str:
        lines = ["graph L {"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{a}" -- "{b}";' for a, b in self.sorted_edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def flag_complex_from_obj(obj: dict) -> FlagComplex:
    try:
        vs = [str(v) for v in obj["vertices"]]
        es = [(str(a), str(b)) for a, b in obj.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad flag complex description: {exc}") from exc
    for a, b in es:
        if a == b:
            raise InputError("flag complexes have no loops")
    return FlagComplex.from_edges(vs, es)


def same_labelled_graph(a: FlagComplex, b: FlagComplex) -> bool:
    return set(a.vertices) == set(b.vertices) and a.edges == b.edges
