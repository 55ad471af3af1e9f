"""Machine-checkable claims with computed and expected values.

Each check returns ``(computed, expected, passed)``; ``run_suite`` wraps them
into a report with timings.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complexes_of_groups import fundamental_group_cog
from .coset_enum import coset_action_image, todd_coxeter, witnesses_nontrivial
from .coxeter_buildings import chamber_graph_ball, pentagon_spec
from .errors import GogkitError, InputError
from .flag_complex import FlagComplex, same_labelled_graph
from .fp_core import abelianization, canonical_cyclic_key, fingerprint, parse_presentation, parse_word
from .graphs_of_groups import (
    bass_serre_valences,
    check_unimodular,
    develop_tree_ball,
    edge_indices,
    GEdge,
    GraphOfGroups,
    fundamental_group,
    serre_covolume,
)
from .local_groups import LocalGroup
from .registry import (
    LM_TEXT,
    bk_gamma_graph,
    bk_lambda_graph,
    delta_subgroup,
    example_registry,
    gamma_n_graph,
    lambda_kl_presentation,
    lm_graph,
    torsion_witnesses,
)
from .salvetti_raag import link_identity
from .samples import bs12_graph, random_graph_of_groups, unimodular_counterexample, z2_free_product
from .thomas_functor import F1, thomas
from . import finite_groups as fg

SEED = 20240611


@dataclass
class Claim:
    id: str
    anchor: str
    computed: object
    expected: object
    status: str  # pass, fail, unverifiable
    seconds: float = 0.0
    budget: float | None = None

    def to_obj(self):
        return {
            "id": self.id,
            "anchor": self.anchor,
            "computed": self.computed,
            "expected": self.expected,
            "status": self.status,
        }


@dataclass
class VerificationReport:
    claims: list[Claim] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.claims if c.status != "unverifiable")

    def to_obj(self):
        return {"ok": self.ok, "claims": [c.to_obj() for c in self.claims]}

    def lines(self) -> list[str]:
        return [f"[{c.status.upper()}] {c.id}: {c.anchor} ({c.seconds:.3f}s)" for c in self.claims]


def _relator_keys(p) -> list:
    return sorted(canonical_cyclic_key(r) for r in p.relators)


def check_lm():
    entry = example_registry("lm")
    explicit = parse_presentation(LM_TEXT)
    derived = fundamental_group(lm_graph())
    computed = {
        "generators": entry.metadata["generators"],
        "relators": entry.metadata["relators"],
        "valence": entry.metadata["valence"],
        "graph_form_matches": derived.generators == explicit.generators and _relator_keys(derived) == _relator_keys(explicit),
    }
    expected = {"generators": 3, "relators": 3, "valence": 10, "graph_form_matches": True}
    return computed, expected, computed == expected


def check_gamma():
    computed, expected = {}, {}
    for n in range(2, 9):
        e = example_registry("gamma_n", n=n)
        computed[str(n)] = [e.metadata["generators"], e.metadata["relators"], e.metadata["valence"]]
        expected[str(n)] = [3, n * (n - 1) // 2 + 3, 10 * n]
    return computed, expected, computed == expected


def check_lambda22():
    p = lambda_kl_presentation(2, 2)
    t = todd_coxeter(p, delta_subgroup(p), max_cosets=10_000)
    if not t.complete:
        return {"status": t.status}, {"status": "complete"}, False
    img = coset_action_image(t)
    wit = witnesses_nontrivial(t, torsion_witnesses(p))
    computed = {
        "index": t.index,
        "image_order": img.order,
        "abelian": list(img.abelian.torsion) if img.abelian.free_rank == 0 else img.abelian.as_dict(),
        "element_orders": {str(k): v for k, v in img.element_orders},
        "witnesses_nontrivial": [ok for _, ok in wit.results],
    }
    expected = {
        "index": 16,
        "image_order": 16,
        "abelian": [2, 2, 2],
        "element_orders": {"1": 1, "2": 11, "4": 4},
        "witnesses_nontrivial": [True, True, True, True],
    }
    return computed, expected, computed == expected


def check_bk_tower():
    computed, expected = {}, {}
    cov = {}
    for r in range(1, 11):
        g, l = bk_gamma_graph(r), bk_lambda_graph(r)
        cov[r] = serre_covolume(g)
        val = bass_serre_valences(edge_indices(g))["v"]
        computed[f"r{r}"] = [str(cov[r]), str(serre_covolume(l)), val]
        expected[f"r{r}"] = [str(Fraction(1, 2**r)), str(Fraction(2, 2**r)), 4]
    ratios_ok = all(cov[r] / cov[s] == 2 ** (s - r) for r in range(1, 11) for s in range(r, 11) if s % r == 0)
    computed["ratios"] = ratios_ok
    expected["ratios"] = True
    return computed, expected, computed == expected


SINGLE_EDGE_TABLE = {
    "{}": ("e", []),
    "{i1}": ("v", []),
    "{i2}": ("w", []),
    "{i3}": ("e", ["i3"]),
    "{i4}": ("e", ["i4"]),
    "{i5}": ("e", ["i5"]),
    "{i1,i3}": ("v", ["i3"]),
    "{i1,i5}": ("v", ["i5"]),
    "{i2,i4}": ("w", ["i4"]),
    "{i2,i5}": ("w", ["i5"]),
    "{i3,i4}": ("e", ["i3", "i4"]),
}


def single_edge() -> GraphOfGroups:
    """A single edge ``S3 <- Z2 -> Z2^2``; Bass-Serre valences 3 and 2."""
    s3 = LocalGroup.finite(fg.symmetric(3), "S3")
    z2 = LocalGroup.finite(fg.cyclic(2, "z"), "Z2")
    v4 = LocalGroup.finite(fg.elementary_abelian(2, "w"), "Z2^2")
    return GraphOfGroups(
        ("v", "w"),
        {"v": s3, "w": v4},
        (GEdge("e", "v", "w", z2, {"z": parse_word("s", s3.generators)}, {"z": parse_word("w0", v4.generators)}),),
    )


def check_pentagon():
    g = single_edge()
    spec = pentagon_spec(3, 2, 2, 3, 4)
    res = thomas(g, spec, "i1", "i2")
    c = res.complex
    computed = {}
    base_order = {"e": 2, "v": 6, "w": 4}
    ok = True
    for cell in c.graph.vertices:
        info = res.data.cells[cell]
        label = c.types[cell]
        computed[label] = (info.base, [j for j, _ in info.factors])
        order = base_order[info.base]
        for _, qj in info.factors:
            order *= qj
        ok &= c.groups[cell].order == order
    computed = {k: [v[0], v[1]] for k, v in computed.items()}
    expected = {k: [v[0], v[1]] for k, v in SINGLE_EDGE_TABLE.items()}
    return computed, expected, ok and computed == expected


def check_lambda_kl():
    computed, expected = {}, {}
    lm = lm_graph()
    for k, l in ((2, 2), (2, 3), (3, 2)):
        spec = pentagon_spec(10, 10, k, k, l)
        out = thomas(lm, spec, "i1", "i2").presentation
        fo = fingerprint(out, targets=("Z2", "Z4", "S3"))
        fp = fingerprint(lambda_kl_presentation(k, l), targets=("Z2", "Z4", "S3"))
        computed[f"{k},{l}"] = {"abelian": fo.abelian.as_dict(), "homs": dict(fo.homs), "generators": len(out.generators)}
        expected[f"{k},{l}"] = {"abelian": fp.abelian.as_dict(), "homs": dict(fp.homs), "generators": 6}
    return computed, expected, computed == expected


def random_graphs(count: int = 5, seed: int = SEED) -> list[GraphOfGroups]:
    rng = random.Random(seed)
    return [random_graph_of_groups(rng) for _ in range(count)]


def check_functor_fingerprint():
    computed, expected = [], []
    for g in random_graphs():
        a = fingerprint(fundamental_group(g))
        b = fingerprint(fundamental_group_cog(F1(g)))
        computed.append({"abelian": b.abelian.as_dict(), "homs": dict(b.homs)})
        expected.append({"abelian": a.abelian.as_dict(), "homs": dict(a.homs)})
    return computed, expected, computed == expected


def check_development():
    computed, expected = {}, {}
    for name, g, base in (
        ("bk_gamma_2", bk_gamma_graph(2), "v"),
        ("bk_gamma_3", bk_gamma_graph(3), "v"),
        ("bk_lambda_2", bk_lambda_graph(2), "x"),
        ("z2_free_product", z2_free_product(), "a"),
    ):
        ball = develop_tree_ball(g, base, 3)
        computed[name] = {"nodes": len(ball.nodes), "audit_failures": len(ball.audit())}
        expected[name] = {"nodes": computed[name]["nodes"], "audit_failures": 0}
    ch = chamber_graph_ball(pentagon_spec(10, 10, 2, 2, 2), 2)
    bad = [(r.type, r.size, r.expected) for r in ch.failures()]
    computed["pentagon_residues"] = {"complete": len(ch.residues), "failures": len(bad)}
    expected["pentagon_residues"] = {"complete": len(ch.residues), "failures": 0}
    passed = computed == expected and len(ch.residues) > 0
    return computed, expected, passed


def all_flag_complexes(max_vertices: int = 5, min_vertices: int = 2):
    for m in range(min_vertices, max_vertices + 1):
        vs = tuple(f"k{i}" for i in range(m))
        pairs = list(combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            yield FlagComplex.from_edges(vs, [p for b, p in enumerate(pairs) if mask >> b & 1])


def check_double_link():
    total = 0
    equal = 0
    counts_ok = True
    first_bad = None
    for K in all_flag_complexes():
        for k in range(1, 5):
            link, dbl, V = link_identity(K, k)
            L_size = len(K.vertices) + (k - 1) * (len(K.vertices) - 1)
            counts_ok &= len(dbl.vertices) == L_size + len(V)
            total += 1
            if same_labelled_graph(link, dbl):
                equal += 1
            elif first_bad is None:
                first_bad = {
                    "K_vertices": len(K.vertices),
                    "k": k,
                    "link_vertices": len(link.vertices),
                    "double_vertices": len(dbl.vertices),
                }
    computed = {"cases": total, "link_equals_double": equal, "double_counts": counts_ok, "first_mismatch": first_bad}
    expected = {"cases": total, "link_equals_double": total, "double_counts": True, "first_mismatch": None}
    return computed, expected, computed == expected


def check_unimodular_b1():
    loops = {
        "lm": lm_graph(),
        **{f"gamma_{n}": gamma_n_graph(n) for n in range(2, 9)},
        **{f"bk_gamma_{r}": bk_gamma_graph(r) for r in range(1, 11)},
        **{f"bk_lambda_{r}": bk_lambda_graph(r) for r in range(1, 11)},
    }
    computed, expected = {}, {}
    for name, g in loops.items():
        computed[name] = bool(check_unimodular(edge_indices(g)))
        expected[name] = True
    computed["index_1_2_loop"] = bool(check_unimodular(unimodular_counterexample()))
    computed["bs12"] = bool(check_unimodular(edge_indices(bs12_graph())))
    expected["index_1_2_loop"] = False
    expected["bs12"] = False
    graphs = dict(loops)
    graphs.update({f"random_{k}": g for k, g in enumerate(random_graphs())})
    graphs["bs12"] = bs12_graph()
    b1_ok = {}
    for name, g in graphs.items():
        rank = abelianization(fundamental_group(g)).free_rank
        b1_ok[name] = rank >= g.graph.betti_number()
    computed["b1_bound"] = all(b1_ok.values())
    expected["b1_bound"] = True
    return computed, expected, computed == expected


CHECKS = {
    "lm": ("LM lattice presentation and tree valence", check_lm, 0.1),
    "gamma_n": ("higher-rank LM family: Tietze counts and valence", check_gamma, 0.1),
    "lambda22": ("index-16 torsion-free subgroup of Lambda(2,2)", check_lambda22, 1.0),
    "bk_tower": ("Bass-Kulkarni tower covolumes and valence", check_bk_tower, 0.1),
    "pentagon": ("pentagon functor: local groups of a single edge", check_pentagon, 0.1),
    "lambda_kl": ("functor output versus explicit Lambda(k,l)", check_lambda_kl, 30.0),
    "functor_fingerprint": ("subdivision preserves fundamental group", check_functor_fingerprint, 60.0),
    "development": ("tree valences and building residues", check_development, 5.0),
    "double_link": ("Salvetti cover vertex link equals the double", check_double_link, 5.0),
    "unimodular_b1": ("unimodularity of loops and the b1 bound", check_unimodular_b1, 1.0),
}


def run_claim(cid: str) -> Claim:
    if cid not in CHECKS:
        raise InputError(f"unknown claim {cid!r}; choose from {', '.join(CHECKS)}")
    anchor, fn, limit = CHECKS[cid]
    t0 = time.perf_counter()
    try:
        computed, expected, passed = fn()
        status = "pass" if passed else "fail"
    except GogkitError as exc:
        computed, expected, status = {"error": str(exc)}, None, "fail"
    dt = time.perf_counter() - t0
    return Claim(cid, anchor, computed, expected, status, dt, limit)


def run_suite(suite: str = "paper", only: list[str] | None = None) -> VerificationReport:
    if suite != "paper":
        raise InputError(f"unknown suite {suite!r}; the only suite is 'paper'")
    ids = only or list(CHECKS)
    return VerificationReport([run_claim(c) for c in ids])
