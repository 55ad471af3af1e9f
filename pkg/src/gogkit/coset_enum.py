"""Todd-Coxeter coset enumeration (HLT strategy with immediate coincidences).

An enumeration that fails to close within ``max_cosets`` live cosets is
reported as overflowed.  Infinite index looks exactly like overflow; there is
no way to tell the two apart from a partial table.

Cosets are numbered from 0 and coset 0 is the subgroup itself.  Generators act
on the right: ``c . g = rows[c][g]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import config
from .errors import BudgetError, InputError, StateError
from .finite_groups import from_permutations
from .fp_core import AbelianInvariants, Presentation, Word, abelianization, format_word, free_reduce


@dataclass(frozen=True)
class CosetTable:
    presentation: Presentation
    subgroup: tuple[Word, ...]
    status: str  # "complete" or "overflowed"
    index: int
    # rows[c][col]: col 2i is generator i, col 2i+1 its inverse
    rows: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def _require_complete(self):
        if not self.complete:
            raise StateError("coset table is not complete (enumeration overflowed)")

    def column(self, g: str, e: int) -> int:
        i = self.presentation.generators.index(g)
        return 2 * i + (0 if e == 1 else 1)

    def act(self, c: int, w: Word) -> int:
        self._require_complete()
        for g, e in w:
            c = self.rows[c][self.column(g, e)]
        return c

    def permutation(self, w: Word) -> tuple[int, ...]:
        self._require_complete()
        return tuple(self.act(c, w) for c in range(self.index))

    def generator_permutations(self) -> dict[str, tuple[int, ...]]:
        self._require_complete()
        return {g: tuple(r[2 * i] for r in self.rows) for i, g in enumerate(self.presentation.generators)}

    def contains(self, w: Word) -> bool:
        """Membership of ``w`` in the subgroup."""
        return self.act(0, w) == 0

    def check_closed(self) -> bool:
        """Every relator fixes every coset and every subgroup generator fixes coset 0."""
        self._require_complete()
        for r in self.presentation.relators:
            for c in range(self.index):
                if self.act(c, r) != c:
                    return False
        return all(self.act(0, w) == 0 for w in self.subgroup)

    def is_transitive(self) -> bool:
        self._require_complete()
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for d in self.rows[c]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return len(seen) == self.index

    def is_normal(self) -> bool:
        """Each conjugate ``g h g^-1`` (``g`` a generator or inverse) lies in the subgroup."""
        for h in self.subgroup:
            for g in self.presentation.generators:
                for e in (1, -1):
                    w = free_reduce(((g, e),) + h + ((g, -e),))
                    if not self.contains(w):
                        return False
        return True


class _Enumerator:
    def __init__(self, p: Presentation, subgroup: Sequence[Word], max_cosets: int):
        self.p = p
        self.ngen = len(p.generators)
        self.ncols = 2 * self.ngen
        col = {}
        for i, g in enumerate(p.generators):
            col[(g, 1)] = 2 * i
            col[(g, -1)] = 2 * i + 1
        self.rels = [[col[l] for l in r] for r in p.relators]
        self.subs = [[col[l] for l in free_reduce(w, p.generators)] for w in subgroup]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.overflow = False

    @staticmethod
    def inv(x: int) -> int:
        return x ^ 1

    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c: int, x: int) -> None:
        if self.live >= self.max_cosets:
            self.overflow = True
            return
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        r, s = self.rep(k), self.rep(l)
        if r == s:
            return
        if r > s:
            r, s = s, r
        self.parent[s] = r
        self.live -= 1
        queue.append(s)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        t = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f < 0:
                    continue
                if t[f][x ^ 1] == e:
                    t[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] >= 0:
                    self.merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] >= 0:
                    self.merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        t = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])
            if self.overflow:
                return

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def run(self) -> None:
        for w in self.subs:
            if w:
                self.scan_and_fill(0, w)
            if self.overflow:
                return
        c = 0
        while c < len(self.table):
            for r in self.rels:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
                if self.overflow:
                    return
            if self.alive(c):
                for x in range(self.ncols):
                    if self.table[c][x] < 0:
                        self.define(c, x)
                        if self.overflow:
                            return
            c += 1

    def result(self, subgroup) -> CosetTable:
        if self.overflow:
            rows = tuple(tuple(r) for r in self.table)
            return CosetTable(self.p, tuple(subgroup), "overflowed", self.live, rows)
        alive = [c for c in range(len(self.table)) if self.alive(c)]
        renum = {c: k for k, c in enumerate(alive)}
        rows = tuple(tuple(renum[self.table[c][x]] for x in range(self.ncols)) for c in alive)
        return CosetTable(self.p, tuple(subgroup), "complete", len(alive), rows)


def todd_coxeter(p: Presentation, subgroup: Sequence[Word], max_cosets: int | None = None) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup`` in ``p``.

    Returns an overflowed table (never raises) when more than ``max_cosets``
    cosets are live at once.
    """
    max_cosets = config.budget(config.MAX_COSETS) if max_cosets is None else max_cosets
    if max_cosets < 1:
        raise InputError("max_cosets must be positive")
    subgroup = tuple(free_reduce(w, p.generators) for w in subgroup)
    en = _Enumerator(p, subgroup, max_cosets)
    en.run()
    return en.result(subgroup)


@dataclass(frozen=True)
class QuotientFingerprint:
    order: int
    element_orders: tuple[tuple[int, int], ...]
    abelian: AbelianInvariants

    def as_dict(self):
        return {
            "order": self.order,
            "element_orders": {str(k): v for k, v in self.element_orders},
            "abelian": self.abelian.as_dict(),
        }


def coset_action_image(t: CosetTable) -> QuotientFingerprint:
    """Order, element-order multiset and abelian invariants of the coset action image."""
    t._require_complete()
    perms = t.generator_permutations()
    try:
        grp = from_permutations(perms)
    except InputError as exc:
        raise BudgetError(f"coset action image too large: {exc}") from exc
    ab = abelianization(grp.presentation())
    return QuotientFingerprint(grp.order, tuple(grp.element_order_counts().items()), ab)


@dataclass(frozen=True)
class WitnessReport:
    index: int
    results: tuple[tuple[Word, bool], ...]

    @property
    def certificate(self) -> bool:
        return all(ok for _, ok in self.results)

    def as_list(self):
        return [{"word": format_word(w), "nontrivial": ok} for w, ok in self.results]


def witnesses_nontrivial(t: CosetTable, witnesses: Sequence[Word]) -> WitnessReport:
    t._require_complete()
    ident = tuple(range(t.index))
    res = tuple((w, t.permutation(free_reduce(w, t.presentation.generators)) != ident) for w in witnesses)
    return WitnessReport(t.index, res)


def verify_torsion_witness(
    p: Presentation, subgroup: Sequence[Word], witnesses: Sequence[Word], max_cosets: int | None = None
) -> WitnessReport:
    """For each witness, whether it acts nontrivially on the cosets of ``subgroup``."""
    t = todd_coxeter(p, subgroup, max_cosets)
    if not t.complete:
        raise BudgetError(f"coset enumeration overflowed at {t.index} live cosets")
    return witnesses_nontrivial(t, witnesses)
