"""Local groups for graphs and complexes of groups.

A local group always has a presentation.  Finite ones also carry a
multiplication table; symbolic ones may be flagged free abelian, which makes
indices of subgroups given by generator images computable as determinants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import finite_groups as fg
from .errors import InputError
from .finite_groups import FiniteGroup
from .fp_core import (
    Presentation,
    Word,
    abelianization,
    exponent_sum,
    format_word,
    free_reduce,
    gen,
    parse_presentation,
    parse_word,
    presentation_from_obj,
)

EdgeMap = Mapping[str, Word]


@dataclass(frozen=True, eq=False)
class LocalGroup:
    presentation: Presentation
    table: FiniteGroup | None = field(default=None, repr=False)
    free_abelian: bool = False
    label: str = ""

    def __post_init__(self):
        if self.table is not None and set(self.table.gen_names) != set(self.presentation.generators):
            raise InputError("table generators and presentation generators differ")
        if self.free_abelian:
            ab = abelianization(self.presentation)
            if ab.free_rank != len(self.presentation.generators) or ab.torsion:
                raise InputError("group flagged free abelian does not abelianize to Z^n on its generators")

    @classmethod
    def finite(cls, table: FiniteGroup, label: str = "") -> "LocalGroup":
        return cls(table.presentation(), table, False, label or table.name)

    @classmethod
    def symbolic(cls, p: Presentation | str, free_abelian: bool = False, label: str = "") -> "LocalGroup":
        if isinstance(p, str):
            p = parse_presentation(p)
        return cls(p, None, free_abelian, label)

    @classmethod
    def free_abelian_group(cls, names: list[str], label: str = "") -> "LocalGroup":
        rels = [free_reduce(gen(x) + gen(y) + gen(x, -1) + gen(y, -1)) for i, x in enumerate(names) for y in names[i + 1:]]
        return cls(Presentation(tuple(names), tuple(rels)), None, True, label or f"Z^{len(names)}")

    @property
    def generators(self) -> tuple[str, ...]:
        return self.presentation.generators

    @property
    def is_finite(self) -> bool:
        return self.table is not None

    @property
    def order(self) -> int | None:
        return self.table.order if self.table is not None else None

    def evaluate(self, w: Word) -> int:
        if self.table is None:
            raise InputError("cannot evaluate words in a symbolic group")
        return self.table.evaluate(w)

    def rename(self, mapping: dict[str, str]) -> "LocalGroup":
        table = fg.rename_generators(self.table, mapping) if self.table is not None else None
        return LocalGroup(self.presentation.rename(mapping), table, self.free_abelian, self.label)

    def to_obj(self) -> dict:
        if self.table is not None:
            return {
                "table": self.table.mul.tolist(),
                "generators": dict(self.table.generators),
                "relators": [format_word(r) for r in self.presentation.relators],
                "label": self.label,
            }
        return {"presentation": str(self.presentation), "free_abelian": self.free_abelian, "label": self.label}


def local_group_from_obj(obj) -> LocalGroup:
    """Parse the inline local-group JSON forms.

    ``{"finite": "Z2", "names": ["a"]}``, ``{"permutations": {"a": [1,0]}}``,
    ``{"table": [[...]], "generators": {"a": 1}}`` or
    ``{"presentation": "< a, b | [a,b] >", "free_abelian": true}``.
    """
    if isinstance(obj, str):
        obj = {"finite": obj}
    if not isinstance(obj, dict):
        raise InputError(f"bad local group description {obj!r}")
    label = obj.get("label", "")
    if "finite" in obj:
        g = fg.standard_group(obj["finite"])
        names = obj.get("names")
        if names is not None:
            if len(names) != len(g.gen_names):
                raise InputError(f"{obj['finite']} has {len(g.gen_names)} generators, got names {names}")
            g = fg.rename_generators(g, dict(zip(g.gen_names, names)))
        return LocalGroup.finite(g, label or obj["finite"])
    if "permutations" in obj:
        g = fg.from_permutations(obj["permutations"])
        g.check_axioms()
        return LocalGroup.finite(g, label)
    if "table" in obj:
        rels = None
        if "relators" in obj:
            rels = [parse_word(r, list(obj["generators"])) for r in obj["relators"]]
        g = FiniteGroup(obj["table"], obj["generators"], relators=rels)
        g.check_axioms()
        return LocalGroup.finite(g, label)
    if "presentation" in obj:
        p = obj["presentation"]
        p = presentation_from_obj(p) if isinstance(p, dict) else parse_presentation(p)
        return LocalGroup.symbolic(p, bool(obj.get("free_abelian", False)), label)
    raise InputError(f"bad local group description {obj!r}")


def parse_edge_map(obj: Mapping[str, str | list], src: LocalGroup, dst: LocalGroup) -> dict[str, Word]:
    out = {}
    for g, w in obj.items():
        if isinstance(w, str):
            out[g] = parse_word(w, dst.generators)
        else:
            out[g] = free_reduce(((str(x), int(e)) for x, e in w), dst.generators)
    check_map_shape(out, src, dst)
    return out


def check_map_shape(images: EdgeMap, src: LocalGroup, dst: LocalGroup) -> None:
    if set(images) != set(src.generators):
        raise InputError(f"edge map must give images for exactly {list(src.generators)}, got {list(images)}")
    for w in images.values():
        free_reduce(w, dst.generators)


def integer_det(m: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class MapCheck:
    """Outcome of checking an edge monomorphism."""

    index: int | None  # [dst : image], None when not computable
    injective: bool | None  # None when not verifiable
    element_map: tuple[int, ...] | None = None


def check_monomorphism(images: EdgeMap, src: LocalGroup, dst: LocalGroup) -> MapCheck:
    """Verify a generator-image map where possible and compute the image index."""
    check_map_shape(images, src, dst)
    if src.table is not None and dst.table is not None:
        im = {g: dst.table.evaluate(w) for g, w in images.items()}
        f = src.table.hom_to(dst.table, im)
        image = set(f)
        injective = len(image) == src.order
        if dst.order % len(image):
            raise InputError("image size does not divide the target order")
        return MapCheck(dst.order // len(image), injective, tuple(f))
    if src.free_abelian and dst.free_abelian:
        rows = [[exponent_sum(images[g], x) for x in dst.generators] for g in src.generators]
        if len(src.generators) != len(dst.generators):
            injective = None
            return MapCheck(None, injective)
        d = abs(integer_det(rows))
        if d == 0:
            raise InputError("edge map between free abelian groups is not injective (determinant 0)")
        return MapCheck(d, True)
    if dst.table is not None:
        # symbolic source into a finite group: index of the image subgroup is computable
        elems = [dst.table.evaluate(w) for w in images.values()]
        sub = dst.table.closure(elems)
        return MapCheck(dst.order // len(sub), None)
    return MapCheck(None, None)


def measure_of(group: LocalGroup) -> Fraction | None:
    return Fraction(1, group.order) if group.order is not None else None
