"""Named example groups with their graph-of-groups forms and metadata.

Naming scheme:

* ``lm``: generators ``a, b, t`` over the loop with vertex group ``Z^2 = <a,b>``
  and edge group ``<u,w>`` mapped by ``u -> a^2 b, w -> a^-1 b^2`` (source
  side) and ``u -> a^2 b^-1, w -> a b^2`` (target side).
* ``gamma_n``: generators ``a, f, t``; ``a^(f^i)`` is flattened to the word
  ``f^i a f^-i``.  The graph form uses ``a0..a{n-1}, f``.
* ``bk_gamma``: ``v0..v{r-1}, t`` with ``t v_i t^-1 = v_{i-1}``; the edge group
  is ``<w1..w{r-1}>`` (functions vanishing at 0).
* ``bk_lambda``: the index-two kernel of ``t -> 1``, two vertices ``x, y``.
* ``lambda_kl``: ``a, b, x3, x4, x5, t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from . import finite_groups as fg
from .errors import InputError
from .fp_core import (
    Presentation,
    Word,
    commutator,
    concat,
    conjugate,
    gen,
    inverse,
    parse_presentation,
    parse_word,
    power,
    tietze_counts,
)
from .graphs_of_groups import GEdge, GraphOfGroups, bass_serre_valences, edge_indices, serre_covolume
from .local_groups import LocalGroup

LM_TEXT = "< a, b, t | [a,b], t a^2 b^-1 t^-1 = a^2 b, t a b^2 t^-1 = a^-1 b^2 >"

LAMBDA_KL_TEXT = (
    "< a, b, x3, x4, x5, t | x3^{k}, x4^{k}, x5^{l}, [a,b], [a,x3], [a,x4], [a,x5], [b,x3], [b,x4], [b,x5], "
    "[x3,x4], t a^2 b^-1 t^-1 = a^2 b, t a b^2 t^-1 = a^-1 b^2, t x3 t^-1 = x4, [t,x5] >"
)

DELTA_WORDS = (
    "a",
    "b",
    "x3 t x4 t^-1",
    "x3 x4 t^-2",
    "(x5 x3)^2",
    "(x5 x4)^2",
    "t^-1 x3 x4 t^-1",
    "(t x5 x4 t^-1)^2",
)

TORSION_WITNESSES = ("x3", "x4", "x5", "x3 x4")


@dataclass(frozen=True, eq=False)
class RegistryEntry:
    name: str
    presentation: Presentation
    metadata: dict = field(default_factory=dict)
    graph: GraphOfGroups | None = None


def _w(text: str, gens) -> Word:
    return parse_word(text, gens)


def lm_graph() -> GraphOfGroups:
    z2 = LocalGroup.free_abelian_group(["a", "b"], "Z^2")
    l1 = LocalGroup.free_abelian_group(["u", "w"], "L1")
    g = z2.generators
    mf = {"u": _w("a^2 b", g), "w": _w("a^-1 b^2", g)}
    mt = {"u": _w("a^2 b^-1", g), "w": _w("a b^2", g)}
    return GraphOfGroups(("v",), {"v": z2}, (GEdge("e", "v", "v", l1, mf, mt, 5, 5),))


def gamma_n_presentation(n: int) -> Presentation:
    a, f, t = gen("a"), gen("f"), gen("t")

    def af(i: int) -> Word:
        return conjugate(a, power(f, i))

    rels = [
        power(f, n),
        concat(t, power(a, 2), inverse(af(1)), inverse(t), inverse(concat(power(a, 2), af(1)))),
        concat(t, a, power(af(1), 2), inverse(t), inverse(concat(inverse(a), power(af(1), 2)))),
    ]
    for i in range(n):
        for j in range(i + 1, n):
            rels.append(commutator(af(i), af(j)))
    return Presentation(("a", "f", "t"), tuple(rels))


def gamma_n_graph(n: int) -> GraphOfGroups:
    names = [f"a{i}" for i in range(n)] + ["f"]
    rels = [gen("f", n)]
    rels += [commutator(gen(f"a{i}"), gen(f"a{j}")) for i in range(n) for j in range(i + 1, n)]
    rels += [concat(conjugate(gen(f"a{i}"), gen("f")), gen(f"a{(i + 1) % n}", -1)) for i in range(n)]
    vertex = LocalGroup.symbolic(Presentation(tuple(names), tuple(rels)), label=f"Z^{n} x| Z{n}")
    edge_names = ["u", "w"] + [f"c{i}" for i in range(2, n)]
    edge = LocalGroup.free_abelian_group(edge_names, f"Z^{n}")
    mf = {"u": _w("a0^2 a1", names), "w": _w("a0^-1 a1^2", names)}
    mt = {"u": _w("a0^2 a1^-1", names), "w": _w("a0 a1^2", names)}
    for i in range(2, n):
        mf[f"c{i}"] = gen(f"a{i}")
        mt[f"c{i}"] = gen(f"a{i}")
    return GraphOfGroups(("v",), {"v": vertex}, (GEdge("e", "v", "v", edge, mf, mt, 5 * n, 5 * n),))


def bk_groups(r: int) -> tuple[LocalGroup, LocalGroup, dict, dict]:
    v = LocalGroup.finite(fg.elementary_abelian(r, "v"), f"V{r}")
    w_table = fg.elementary_abelian(r - 1, "w")
    w_table = fg.rename_generators(w_table, {f"w{i}": f"w{i + 1}" for i in range(r - 1)})
    w = LocalGroup.finite(w_table, f"W{r}")
    map_from = {f"w{i}": gen(f"v{i - 1}") for i in range(1, r)}
    map_to = {f"w{i}": gen(f"v{i}") for i in range(1, r)}
    return v, w, map_from, map_to


def bk_gamma_graph(r: int) -> GraphOfGroups:
    v, w, mf, mt = bk_groups(r)
    return GraphOfGroups(("v",), {"v": v}, (GEdge("e", "v", "v", w, mf, mt),))


def bk_lambda_graph(r: int) -> GraphOfGroups:
    v, w, mf, mt = bk_groups(r)
    edges = (GEdge("e1", "x", "y", w, mf, mt), GEdge("e2", "y", "x", w, mf, mt))
    return GraphOfGroups(("x", "y"), {"x": v, "y": v}, edges)


def lambda_kl_presentation(k: int, l: int) -> Presentation:
    return parse_presentation(LAMBDA_KL_TEXT.replace("{k}", str(k)).replace("{l}", str(l)))


def delta_subgroup(p: Presentation) -> list[Word]:
    return [parse_word(s, p.generators) for s in DELTA_WORDS]


def torsion_witnesses(p: Presentation) -> list[Word]:
    return [parse_word(s, p.generators) for s in TORSION_WITNESSES]


EXAMPLES = ("lm", "gamma_n", "bk_gamma", "bk_lambda", "lambda_kl")


def example_registry(name: str, n: int | None = None, r: int | None = None, k: int | None = None, l: int | None = None) -> RegistryEntry:
    """Explicit presentations with their graph forms and derived metadata."""
    from .graphs_of_groups import fundamental_group

    if name == "lm":
        g = lm_graph()
        p = parse_presentation(LM_TEXT)
        meta = {"valence": bass_serre_valences(edge_indices(g))["v"]}
    elif name == "gamma_n":
        n = 2 if n is None else n
        if n < 2:
            raise InputError("gamma_n needs n >= 2")
        g = gamma_n_graph(n)
        p = gamma_n_presentation(n)
        meta = {"valence": bass_serre_valences(edge_indices(g))["v"], "n": n}
    elif name in ("bk_gamma", "bk_lambda"):
        r = 1 if r is None else r
        if not 1 <= r <= 12:
            raise InputError("r must lie in 1..12")
        g = bk_gamma_graph(r) if name == "bk_gamma" else bk_lambda_graph(r)
        p = fundamental_group(g)
        vals = bass_serre_valences(edge_indices(g))
        meta = {"valence": vals[g.vertices[0]], "covolume": serre_covolume(g), "r": r}
    elif name == "lambda_kl":
        k = 2 if k is None else k
        l = 2 if l is None else l
        if k < 2 or l < 2:
            raise InputError("lambda_kl needs k, l >= 2")
        g = None
        p = lambda_kl_presentation(k, l)
        meta = {"k": k, "l": l}
    else:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    gens, rels = tietze_counts(p)
    meta.update({"generators": gens, "relators": rels})
    return RegistryEntry(name, p, meta, g)

