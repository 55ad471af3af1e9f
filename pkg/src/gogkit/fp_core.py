"""Words, finitely presented groups, abelianization and hom-count fingerprints.

A word is a tuple of ``(generator, exponent)`` letters with exponent ``+1`` or
``-1``.  Words are kept freely reduced; relators of a :class:`Presentation` are
additionally cyclically reduced.

Text grammar::

    < a, b, t | [a,b], t a^2 b^-1 t^-1 = a^2 b >

``[x,y]`` expands to ``x y x^-1 y^-1`` and ``u = v`` to ``u v^-1``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import config
from .errors import BudgetError, InputError

Letter = tuple[str, int]
Word = tuple[Letter, ...]

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def valid_name(name: str) -> bool:
    return bool(_NAME_RE.match(name))


def free_reduce(letters: Iterable[Letter], generators: Iterable[str] | None = None) -> Word:
    """Cancel adjacent ``g g^-1`` pairs.

    ``generators`` restricts the admissible generator names; an unknown name
    raises :class:`InputError`.
    """
    allowed = None if generators is None else set(generators)
    out: list[Letter] = []
    for g, e in letters:
        if e not in (1, -1):
            raise InputError(f"exponent must be +1 or -1, got {e!r}")
        if allowed is not None and g not in allowed:
            raise InputError(f"unknown generator {g!r}")
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i][0] == w[j - 1][0] and w[i][1] == -w[j - 1][1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def concat(*words: Word) -> Word:
    return free_reduce(l for w in words for l in w)


def gen(name: str, power: int = 1) -> Word:
    e = 1 if power > 0 else -1
    return tuple((name, e) for _ in range(abs(power)))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = inverse(w), -n
    return free_reduce(l for _ in range(n) for l in w)


def commutator(x: Word, y: Word) -> Word:
    return concat(x, y, inverse(x), inverse(y))


def conjugate(w: Word, by: Word) -> Word:
    """``by * w * by^-1``."""
    return concat(by, w, inverse(by))


def substitute(w: Word, images: dict[str, Word]) -> Word:
    """Replace each generator by its image word (generators without an image are kept)."""
    out: list[Letter] = []
    for g, e in w:
        img = images.get(g)
        if img is None:
            out.append((g, e))
        else:
            out.extend(img if e == 1 else inverse(img))
    return free_reduce(out)


def exponent_sum(w: Word, g: str) -> int:
    return sum(e for h, e in w if h == g)


def canonical_cyclic_key(w: Word) -> Word:
    """Representative of ``w`` up to cyclic rotation and inversion."""
    w = cyclic_reduce(w)
    if not w:
        return w
    best = None
    for cand in (w, inverse(w)):
        for i in range(len(cand)):
            rot = cand[i:] + cand[:i]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise InputError(f"duplicate generator names in {gens}")
        for g in gens:
            if not valid_name(g):
                raise InputError(f"invalid generator name {g!r}")
        rels = []
        for r in self.relators:
            r = cyclic_reduce(free_reduce(r, gens))
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    def __str__(self):
        return format_presentation(self)

    def rename(self, mapping: dict[str, str]) -> "Presentation":
        gens = tuple(mapping.get(g, g) for g in self.generators)
        rels = tuple(tuple((mapping.get(g, g), e) for g, e in r) for r in self.relators)
        return Presentation(gens, rels)

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        for a, b in zip(t, t[1:]):
            if b % a:
                raise InputError(f"torsion coefficients {t} are not a divisor chain")
        if any(d < 2 for d in t):
            raise InputError("torsion coefficients must be >= 2")
        object.__setattr__(self, "torsion", t)

    def as_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def tietze_counts(p: Presentation) -> tuple[int, int]:
    return len(p.generators), len(p.relators)


# ---------------------------------------------------------------------------
# text grammar

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(s: str) -> list[str]:
    toks = []
    pos = 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if m is None:
            break
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, generators: Sequence[str] | None):
        self.toks = _tokenize(text)
        self.i = 0
        self.generators = None if generators is None else set(generators)
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if t is None or (expected is not None and t != expected):
            raise InputError(f"expected {expected or 'token'} at position {self.i} in {self.text!r}, got {t!r}")
        self.i += 1
        return t

    def word(self) -> Word:
        letters: list[Letter] = []
        while True:
            t = self.peek()
            if t is None or t in (",", ")", "]", "|", ">", "="):
                return free_reduce(letters)
            letters.extend(self.factor())

    def factor(self) -> Word:
        t = self.take()
        if t == "(":
            base = self.word()
            self.take(")")
        elif t == "[":
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            base = commutator(x, y)
        elif t == "1":
            base = ()
        elif valid_name(t):
            if self.generators is not None and t not in self.generators:
                raise InputError(f"unknown generator {t!r}")
            base = ((t, 1),)
        else:
            raise InputError(f"unexpected token {t!r} in {self.text!r}")
        if self.peek() == "^":
            self.take("^")
            sign = 1
            if self.peek() == "-":
                self.take("-")
                sign = -1
            n = self.take()
            if not n.isdigit():
                raise InputError(f"bad exponent {n!r}")
            base = power(base, sign * int(n))
        return base

    def relation(self) -> Word:
        lhs = self.word()
        if self.peek() == "=":
            self.take("=")
            rhs = self.word()
            return concat(lhs, inverse(rhs))
        return lhs


def parse_word(text: str, generators: Sequence[str] | None = None) -> Word:
    p = _Parser(text, generators)
    w = p.word()
    if p.peek() is not None:
        raise InputError(f"trailing input in word {text!r}")
    return w


def parse_relation(text: str, generators: Sequence[str] | None = None) -> Word:
    p = _Parser(text, generators)
    w = p.relation()
    if p.peek() is not None:
        raise InputError(f"trailing input in relation {text!r}")
    return w


def parse_presentation(text: str) -> Presentation:
    toks_parser = _Parser(text, None)
    toks_parser.take("<")
    gens: list[str] = []
    while toks_parser.peek() not in ("|", None):
        g = toks_parser.take()
        if not valid_name(g):
            raise InputError(f"invalid generator token {g!r}")
        gens.append(g)
        if toks_parser.peek() == ",":
            toks_parser.take(",")
    toks_parser.take("|")
    toks_parser.generators = set(gens)
    rels: list[Word] = []
    while toks_parser.peek() not in (">", None):
        rels.append(toks_parser.relation())
        if toks_parser.peek() == ",":
            toks_parser.take(",")
    toks_parser.take(">")
    if toks_parser.peek() is not None:
        raise InputError("trailing input after presentation")
    return Presentation(tuple(gens), tuple(rels))


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, e = w[i]
        j = i
        while j < len(w) and w[j] == (g, e):
            j += 1
        n = (j - i) * e
        parts.append(g if n == 1 else f"{g}^{n}")
        i = j
    return " ".join(parts)


def format_presentation(p: Presentation) -> str:
    gens = ", ".join(p.generators)
    rels = ", ".join(format_word(r) for r in p.relators)
    return f"< {gens} | {rels} >".replace("  ", " ")


def presentation_to_obj(p: Presentation) -> dict:
    return {
        "generators": list(p.generators),
        "relators": [[[g, e] for g, e in r] for r in p.relators],
    }


def presentation_from_obj(obj: dict) -> Presentation:
    try:
        gens = tuple(obj["generators"])
        rels = tuple(tuple((str(g), int(e)) for g, e in r) for r in obj.get("relators", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed presentation JSON: {exc}") from exc
    return Presentation(gens, rels)


def presentation_to_json(p: Presentation) -> str:
    return json.dumps(presentation_to_obj(p), sort_keys=True)


def presentation_from_json(text: str) -> Presentation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return presentation_from_obj(obj)


def load_presentation(text: str) -> Presentation:
    """Accept either the text grammar or the JSON schema."""
    s = text.strip()
    if s.startswith("{"):
        return presentation_from_json(s)
    return parse_presentation(s)


# ---------------------------------------------------------------------------
# abelianization


def relation_matrix(p: Presentation) -> list[list[int]]:
    return [[exponent_sum(r, g) for g in p.generators] for r in p.relators]


def smith_diagonal(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisor order.

    Exact integer arithmetic; the pivot is always an entry of minimal absolute
    value in the remaining block.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            if p < 0:
                a[t] = [-x for x in a[t]]
                p = -p
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), t, j)
                _, pi, pj = best
                a[t], a[pi] = a[pi], a[t]
                if pj != t:
                    for row in a:
                        row[t], row[pj] = row[pj], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianization(p: Presentation) -> AbelianInvariants:
    diag = smith_diagonal(relation_matrix(p), len(p.generators))
    rank = len(diag)
    torsion = tuple(sorted(d for d in diag if d > 1))
    return AbelianInvariants(len(p.generators) - rank, torsion)


# ---------------------------------------------------------------------------
# hom counting


def count_homs(p: Presentation, target, cap: int | None = None, check_target: bool = True) -> int:
    """Exact number of homomorphisms from ``p`` to a finite group table.

    ``target`` needs ``order``, ``mul`` (nested list table), ``inv`` and
    ``identity``.  The search is exhaustive backtracking: each generator is
    assigned in turn and a relator is evaluated as soon as all of its
    generators are assigned.  Generators absent from every relator contribute
    a factor ``|target|`` without enumeration.
    """
    cap = config.budget(config.HOM_COUNT_CAP) if cap is None else cap
    n = target.order
    k = len(p.generators)
    if n ** k > cap:
        raise BudgetError(f"hom enumeration needs {n}^{k} candidates, over the cap {cap}")
    if check_target:
        target.check_axioms()
    mul = target.mul_list()
    inv = list(target.inv)
    e = target.identity
    index = {g: i for i, g in enumerate(p.generators)}
    rels = [[(index[g], s) for g, s in r] for r in p.relators]
    used = sorted({i for r in rels for i, _ in r})
    free_count = k - len(used)

    # order constrained generators greedily: those in short relators first
    weight = {i: 0 for i in used}
    for r in rels:
        for i, _ in r:
            weight[i] += 1.0 / len(r)
    order = sorted(used, key=lambda i: (-weight[i], i))
    pos = {g: j for j, g in enumerate(order)}
    buckets: list[list[list[tuple[int, int]]]] = [[] for _ in order]
    for r in rels:
        buckets[max(pos[i] for i, _ in r)].append(r)

    img = [e] * k
    count = 0

    def holds(r):
        x = e
        for i, s in r:
            x = mul[x][img[i] if s == 1 else inv[img[i]]]
        return x == e

    def search(j):
        nonlocal count
        if j == len(order):
            count += 1
            return
        gi = order[j]
        checks = buckets[j]
        for v in range(n):
            img[gi] = v
            if all(holds(r) for r in checks):
                search(j + 1)

    search(0)
    return count * n ** free_count


# ---------------------------------------------------------------------------
# Tietze simplification


def _dedupe(rels: Iterable[Word]) -> tuple[Word, ...]:
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = canonical_cyclic_key(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return tuple(out)


def simplify(
    p: Presentation,
    rank: Callable[[str], int] | None = None,
    max_rank: int | None = None,
    max_length: int = 400,
) -> Presentation:
    """Eliminate generators that occur exactly once in some relator.

    Elimination is an isomorphism of presented groups.  Candidates are tried in
    order of ``(rank(g), len(relator), position)``; generators with rank above
    ``max_rank`` are kept.  Duplicate relators (up to rotation and inversion)
    are dropped.
    """
    rank = rank or (lambda g: 0)
    gens = list(p.generators)
    rels = list(_dedupe(p.relators))
    while True:
        best = None
        for ri, r in enumerate(rels):
            counts: dict[str, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            for g, c in counts.items():
                if c != 1:
                    continue
                rk = rank(g)
                if max_rank is not None and rk > max_rank:
                    continue
                key = (rk, len(r), gens.index(g), ri)
                if best is None or key < best[0]:
                    best = (key, g, ri)
        if best is None:
            break
        _, g, ri = best
        r = rels[ri]
        k = next(i for i, (h, _) in enumerate(r) if h == g)
        rot = r[k:] + r[:k]
        e = rot[0][1]
        rest = rot[1:]
        image = inverse(rest) if e == 1 else rest
        new_rels = [substitute(s, {g: image}) for j, s in enumerate(rels) if j != ri]
        if any(len(s) > max_length for s in new_rels):
            # refuse runaway substitutions; keep g
            rank_g = rank
            rank = (lambda g0, gg=g, rk=rank_g: 10**9 if g0 == gg else rk(g0))
            if max_rank is None:
                max_rank = 10**9 - 1
            continue
        rels = list(_dedupe(new_rels))
        gens.remove(g)
    return Presentation(tuple(gens), tuple(rels))


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    abelian: AbelianInvariants
    homs: tuple[tuple[str, int], ...] = field(default=())

    def as_dict(self):
        return {"abelian": self.abelian.as_dict(), "homs": dict(self.homs)}


def fingerprint(p: Presentation, targets: Sequence[str] = ("Z2", "Z3", "S3"), cap: int | None = None) -> Fingerprint:
    """Isomorphism invariants: abelian invariants plus hom counts into small groups.

    The presentation is Tietze-simplified first (which preserves the group).
    """
    from .finite_groups import standard_group

    q = simplify(p)
    homs = tuple((name, count_homs(q, standard_group(name), cap=cap)) for name in targets)
    return Fingerprint(abelianization(q), homs)
