"""Finite groups stored as multiplication tables with named generators.

Element ``0`` is always the identity.  Tables are numpy integer arrays; the
hot loops (hom counting, development) read a cached nested-list copy.
"""
from __future__ import annotations

import itertools
import random
import re
from collections import deque
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import config
from .errors import InputError
from .fp_core import Presentation, Word, commutator, concat, gen, inverse, power


class FiniteGroup:
    def __init__(
        self, mul, generators: dict[str, int], name: str = "", relators: Sequence[Word] | None = None, inv=None
    ):
        mul = np.asarray(mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.shape != (n, n) or n < 1:
            raise InputError("multiplication table must be square and nonempty")
        if n > config.MAX_FINITE_ORDER:
            raise InputError(f"finite group of order {n} exceeds the limit {config.MAX_FINITE_ORDER}")
        self.mul = mul
        self.order = n
        self.identity = 0
        self.generators = dict(generators)
        self.name = name
        self._relators = None if relators is None else tuple(relators)
        if inv is None:
            rows, cols = np.nonzero(mul == 0)
            if len(rows) != n or np.any(np.bincount(rows, minlength=n) != 1):
                raise InputError("table has no unique inverse; not a group")
            inv = np.zeros(n, dtype=np.int64)
            inv[rows] = cols
        self.inv = inv
        for g, x in self.generators.items():
            if not 0 <= x < n:
                raise InputError(f"generator {g} refers to element {x} outside the table")

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    @property
    def gen_names(self) -> tuple[str, ...]:
        return tuple(self.generators)

    def mul_list(self) -> list[list[int]]:
        return self._mul_list

    @cached_property
    def _mul_list(self):
        return self.mul.tolist()

    def check_axioms(self, samples: int = 2000) -> None:
        """Identity, Latin-square and associativity checks.

        Associativity is exhaustive for tables up to order 160, sampled beyond.
        """
        m = self.mul
        n = self.order
        ar = np.arange(n)
        if not (np.array_equal(m[0], ar) and np.array_equal(m[:, 0], ar)):
            raise InputError("element 0 is not a two-sided identity")
        for row in (m, m.T):
            s = np.sort(row, axis=1)
            if not np.array_equal(s, np.broadcast_to(ar, (n, n))):
                raise InputError("table is not a Latin square")
        if n ** 3 <= 4_096_000:
            left = m[m, :]  # left[a,b,c] = (ab)c
            right = m[:, m]  # right[a,b,c] = a(bc)
            if not np.array_equal(left, right):
                raise InputError("table is not associative")
        else:
            rng = random.Random(0)
            for _ in range(samples):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if m[m[a, b], c] != m[a, m[b, c]]:
                    raise InputError("table is not associative")

    def op(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.mul[y, x])
            k += 1
        return k

    def evaluate(self, w: Word) -> int:
        x = 0
        for g, e in w:
            try:
                y = self.generators[g]
            except KeyError:
                raise InputError(f"generator {g!r} not in group {self.name or ''}") from None
            x = int(self.mul[x, y if e == 1 else self.inv[y]])
        return x

    def closure(self, elements: Sequence[int]) -> list[int]:
        """Sorted elements of the subgroup generated by ``elements``."""
        seen = {0}
        frontier = [0]
        gens = [int(x) for x in elements]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.mul[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def left_cosets(self, subgroup: Sequence[int]) -> list[list[int]]:
        """Left cosets ``xH`` ordered by least element; each coset sorted."""
        sub = list(subgroup)
        seen = set()
        cosets = []
        for x in range(self.order):
            if x in seen:
                continue
            c = sorted({int(self.mul[x, h]) for h in sub})
            seen.update(c)
            cosets.append(c)
        return cosets

    def coset_index_map(self, subgroup: Sequence[int]) -> list[int]:
        """element -> index of its left coset, with cosets as in :meth:`left_cosets`."""
        idx = [0] * self.order
        for k, c in enumerate(self.left_cosets(subgroup)):
            for x in c:
                idx[x] = k
        return idx

    @cached_property
    def _bfs(self) -> tuple[list[Word], list[tuple[int, int, str, int]]]:
        """Shortest words from the identity and the BFS tree as ``(child, parent, g, e)``."""
        words: list[Word | None] = [None] * self.order
        words[0] = ()
        tree = []
        q = deque([0])
        letters = [(g, self.mul[:, x].tolist(), 1) for g, x in self.generators.items()] + [
            (g, self.mul[:, int(self.inv[x])].tolist(), -1) for g, x in self.generators.items()
        ]
        while q:
            x = q.popleft()
            for g, col, e in letters:
                z = col[x]
                if words[z] is None:
                    words[z] = words[x] + ((g, e),)
                    tree.append((z, x, g, e))
                    q.append(z)
        if any(w is None for w in words):
            raise InputError("named generators do not generate the group")
        return words, tree

    @property
    def _words(self) -> list[Word]:
        return self._bfs[0]

    def word_for(self, x: int) -> Word:
        return self._words[x]

    def is_generated(self) -> bool:
        try:
            self._words
        except InputError:
            return False
        return True

    def presentation(self) -> Presentation:
        """Presentation on the named generators.

        Uses the stored relators when given, else the Cayley-graph relators
        ``w(x) g w(xg)^-1`` over non-tree edges of the BFS tree.
        """
        if self._relators is not None:
            return Presentation(self.gen_names, self._relators)
        words = self._words
        rels = []
        for x in range(self.order):
            for g, y in self.generators.items():
                r = concat(words[x], gen(g), inverse(words[int(self.mul[x, y])]))
                if r:
                    rels.append(r)
        return Presentation(self.gen_names, tuple(rels))

    def hom_to(self, target: "FiniteGroup", images: dict[str, int]) -> list[int]:
        """Extend generator images to a homomorphism; raise if not well defined."""
        f = [0] * self.order
        step = {(g, 1): target.mul[:, images[g]].tolist() for g in self.generators}
        step.update({(g, -1): target.mul[:, int(target.inv[images[g]])].tolist() for g in self.generators})
        for z, x, g, e in self._bfs[1]:
            f[z] = step[(g, e)][f[x]]
        fa = np.asarray(f, dtype=np.int64)
        for g, s in self.generators.items():
            if np.any(fa[self.mul[:, s]] != target.mul[fa, images[g]]):
                raise InputError("generator images do not define a homomorphism")
        return f

    def element_order_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for x in range(self.order):
            k = self.element_order(x)
            counts[k] = counts.get(k, 0) + 1
        return dict(sorted(counts.items()))


def from_permutations(perms: dict[str, Sequence[int]], name: str = "") -> FiniteGroup:
    """Group generated by permutations (given as image lists on 0..d-1)."""
    perms = {g: tuple(int(i) for i in p) for g, p in perms.items()}
    degrees = {len(p) for p in perms.values()}
    if len(degrees) > 1:
        raise InputError("permutations must act on the same set")
    d = degrees.pop() if degrees else 0
    for p in perms.values():
        if sorted(p) != list(range(d)):
            raise InputError(f"{p} is not a permutation")
    ident = tuple(range(d))
    elements = [ident]
    index = {ident: 0}
    i = 0
    gens = list(perms.values())
    while i < len(elements):
        x = elements[i]
        for p in gens:
            y = tuple(p[j] for j in x)  # x then p, i.e. composition p o x
            if y not in index:
                if len(elements) >= config.MAX_FINITE_ORDER:
                    raise InputError("generated permutation group too large")
                index[y] = len(elements)
                elements.append(y)
        i += 1
    n = len(elements)
    mul = np.zeros((n, n), dtype=np.int64)
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            # product x*y acts as "first y then x" on points: (x*y)(j) = x(y(j))
            mul[a, b] = index[tuple(x[y[j]] for j in range(d))]
    return FiniteGroup(mul, {g: index[p] for g, p in perms.items()}, name=name)


def cyclic(n: int, name: str = "x") -> FiniteGroup:
    if n < 1:
        raise InputError("cyclic group order must be positive")
    ar = np.arange(n)
    mul = (ar[:, None] + ar[None, :]) % n
    gens = {name: 1 % n} if n > 1 else {}
    rels = (gen(name, n),) if n > 1 else ()
    return FiniteGroup(mul, gens, name=f"Z{n}", relators=rels)


def trivial() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int64), {}, name="1", relators=())


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    """``G x H`` with element ``(a, b)`` stored at ``a * |H| + b``."""
    clash = set(g.generators) & set(h.generators)
    if clash:
        raise InputError(f"generator names clash in direct product: {sorted(clash)}")
    n, m = g.order, h.order
    if n * m > config.MAX_FINITE_ORDER:
        raise InputError("direct product too large for a table")
    a = np.arange(n * m)
    ga, ha = a // m, a % m
    mul = g.mul[ga[:, None], ga[None, :]] * m + h.mul[ha[:, None], ha[None, :]]
    gens = {k: v * m for k, v in g.generators.items()}
    gens.update({k: v for k, v in h.generators.items()})
    rels = None
    if g._relators is not None and h._relators is not None:
        rels = list(g._relators) + list(h._relators)
        rels += [commutator(gen(x), gen(y)) for x in g.generators for y in h.generators]
    return FiniteGroup(mul, gens, name=name or f"{g.name}x{h.name}", relators=rels)


@lru_cache(maxsize=64)
def elementary_abelian(r: int, prefix: str = "v") -> FiniteGroup:
    """``Z_2^r`` as bit vectors, generator ``prefix<i>`` is bit ``i``."""
    n = 1 << r
    ar = np.arange(n)
    mul = ar[:, None] ^ ar[None, :]
    names = [f"{prefix}{i}" for i in range(r)]
    rels = [gen(x, 2) for x in names]
    rels += [commutator(gen(x), gen(y)) for x, y in itertools.combinations(names, 2)]
    # every element is its own inverse
    return FiniteGroup(mul, {x: 1 << i for i, x in enumerate(names)}, name=f"Z2^{r}", relators=rels, inv=ar)


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return trivial()
    s = list(range(n))
    s[0], s[1] = 1, 0
    c = [(i + 1) % n for i in range(n)]
    perms = {"s": s, "c": c} if n > 2 else {"s": s}
    grp = from_permutations(perms, name=f"S{n}")
    if n == 3:
        grp._relators = (gen("s", 2), gen("c", 3), power((("s", 1), ("c", 1)), 2))
    return grp


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` (rotation ``r``, reflection ``s``)."""
    r = [(i + 1) % n for i in range(n)]
    s = [(-i) % n for i in range(n)]
    grp = from_permutations({"r": r, "s": s}, name=f"D{n}")
    grp._relators = (gen("r", n), gen("s", 2), power((("r", 1), ("s", 1)), 2))
    return grp


def quaternion() -> FiniteGroup:
    # left regular action of Q8 on itself, elements 1,-1,i,-i,j,-j,k,-k
    table = {
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }
    elems = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mult(x, y):
        sx, bx = (-1, x[1:]) if x.startswith("-") else (1, x)
        sy, by = (-1, y[1:]) if y.startswith("-") else (1, y)
        s = sx * sy
        if bx == "1":
            b = by
        elif by == "1":
            b = bx
        else:
            b = table[(bx, by)]
        if b.startswith("-"):
            s, b = -s, b[1:]
        return b if s == 1 else "-" + b

    idx = {e: i for i, e in enumerate(elems)}
    mul = [[idx[mult(x, y)] for y in elems] for x in elems]
    return FiniteGroup(mul, {"i": idx["i"], "j": idx["j"]}, name="Q8")


_STD_RE = re.compile(r"^(Z|S|D)(\d+)$|^Q8$|^1$|^Z2\^(\d+)$")


def standard_group(name: str) -> FiniteGroup:
    """Small named groups: ``Zn``, ``Sn``, ``Dn`` (order 2n), ``Q8``, ``Z2^r``, ``1``."""
    m = _STD_RE.match(name)
    if not m:
        raise InputError(f"unknown standard group {name!r}")
    if name == "Q8":
        return quaternion()
    if name == "1":
        return trivial()
    if m.group(3) is not None:
        return elementary_abelian(int(m.group(3)))
    kind, n = m.group(1), int(m.group(2))
    if kind == "Z":
        return cyclic(n)
    if kind == "S":
        return symmetric(n)
    return dihedral(n)


def rename_generators(g: FiniteGroup, mapping: dict[str, str]) -> FiniteGroup:
    gens = {mapping.get(k, k): v for k, v in g.generators.items()}
    rels = None
    if g._relators is not None:
        rels = [tuple((mapping.get(x, x), e) for x, e in r) for r in g._relators]
    return FiniteGroup(g.mul, gens, name=g.name, relators=rels, inv=g.inv)
