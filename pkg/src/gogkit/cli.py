"""Command line interface: ``gogkit <subcommand> ...``.

Exit codes: 0 success, 1 input error, 2 budget or overflow, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import registry
from .complexes_of_groups import (
    barycentric,
    cell_complex_from_obj,
    complex_of_groups_from_obj,
    develop_ball,
    fundamental_group_cog,
)
from .coset_enum import coset_action_image, todd_coxeter, witnesses_nontrivial
from .coxeter_buildings import (
    chamber,
    chamber_graph_ball,
    check_T1,
    check_T2,
    spec_from_obj,
    spherical_subsets,
    system_from_obj,
    type_label,
)
from .errors import GogkitError, InputError
from .flag_complex import flag_complex_from_obj
from .fp_core import (
    Presentation,
    abelianization,
    load_presentation,
    parse_word,
    presentation_to_obj,
)
from .graphs_of_groups import (
    GeometricTail,
    bass_serre_valences,
    check_unimodular,
    covolume_sum,
    develop_tree_ball,
    edge_indexed_graph_from_obj,
    edge_indices,
    fundamental_group,
    graph_of_groups_from_obj,
    serre_covolume,
)
from .salvetti_raag import double, wedge
from .thomas_functor import thomas
from .verify import CHECKS, run_suite


def canonical(obj):
    """JSON-ready copy: fractions as ``p/q``, tuples as lists, keys as strings."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Presentation):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def read_presentation(arg: str) -> Presentation:
    """A file (text or JSON) or an inline presentation string."""
    if os.path.exists(arg):
        try:
            with open(arg) as fh:
                return load_presentation(fh.read())
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from exc
    return load_presentation(arg)


BUILTIN_GRAPHS = {
    "lm": lambda p: registry.lm_graph(),
    "gamma_n": lambda p: registry.gamma_n_graph(p or 2),
    "bk_gamma": lambda p: registry.bk_gamma_graph(p or 1),
    "bk_lambda": lambda p: registry.bk_lambda_graph(p or 1),
}


def read_graph(arg: str):
    """A graph-of-groups JSON file, or a built-in name such as ``lm`` or ``bk_gamma:3``."""
    if not os.path.exists(arg):
        name, _, param = arg.partition(":")
        if name in BUILTIN_GRAPHS:
            try:
                return BUILTIN_GRAPHS[name](int(param) if param else None)
            except ValueError as exc:
                raise InputError(f"bad parameter in {arg!r}") from exc
        raise InputError(f"{arg} is neither a file nor a built-in graph ({', '.join(BUILTIN_GRAPHS)})")
    return graph_of_groups_from_obj(read_json(arg))


def _pair(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise InputError(f"expected i1,i2 but got {text!r}")
    return parts[0], parts[1]


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, obj, text: str | None = None, dot: str | None = None) -> None:
        if self.fmt == "dot":
            if dot is None:
                raise InputError("this subcommand has no DOT output")
            sys.stdout.write(dot)
        elif self.fmt == "text" and text is not None:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")
        else:
            sys.stdout.write(dump_json(obj))


# ---------------------------------------------------------------------------
# subcommands


def cmd_example(a, out: Output):
    e = registry.example_registry(a.name, n=a.n, r=a.r, k=a.k, l=a.l)
    obj = {}
    if a.emit in ("presentation", "both"):
        obj["presentation"] = str(e.presentation)
    if a.emit in ("metadata", "both"):
        obj["metadata"] = e.metadata
    lines = []
    if "presentation" in obj:
        lines.append(obj["presentation"])
    if "metadata" in obj:
        lines += [f"{k}: {canonical(v)}" for k, v in sorted(e.metadata.items())]
    dot = e.graph.graph.to_dot() if e.graph is not None else None
    out.emit(obj, "\n".join(lines), dot)


def cmd_fundamental_group(a, out: Output):
    if not os.path.exists(a.input) or "cells" not in read_json(a.input):
        g = read_graph(a.input)
        tree = a.tree.split(",") if a.tree else None
        p = fundamental_group(g, tree)
    else:
        c = complex_of_groups_from_obj(read_json(a.input))
        p = fundamental_group_cog(c, a.tree.split(",") if a.tree else None)
    out.emit({"presentation": str(p), "structured": presentation_to_obj(p)}, str(p))


def cmd_abelianize(a, out: Output):
    ab = abelianization(read_presentation(a.input))
    text = " x ".join(["Z"] * ab.free_rank + [f"Z{d}" for d in ab.torsion]) or "1"
    out.emit(ab.as_dict(), text)


def read_words(arg: str, generators) -> list:
    """Words from a file (one per line or comma separated) or an inline comma separated list."""
    text = arg
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    items = [w.strip() for line in text.splitlines() for w in line.split(",")]
    return [parse_word(w, generators) for w in items if w and not w.startswith("#")]


def cmd_coset_enum(a, out: Output):
    p = read_presentation(a.input)
    sub = read_words(a.subgroup, p.generators) if a.subgroup else []
    t = todd_coxeter(p, sub, a.max_cosets)
    obj = {"status": t.status, "index": t.index}
    if not t.complete:
        out.emit(obj, f"overflowed with {t.index} live cosets")
        return 2
    obj["fingerprint"] = coset_action_image(t).as_dict()
    if a.witnesses:
        rep = witnesses_nontrivial(t, read_words(a.witnesses, p.generators))
        obj["witnesses"] = rep.as_list()
    out.emit(obj, f"index {t.index}")
    return 0


def cmd_covolume(a, out: Output):
    g = read_graph(a.input)
    v = serre_covolume(g)
    out.emit({"covolume": v}, canonical(v))


def cmd_covolume_sum(a, out: Output):
    obj = read_json(a.input)
    entries = [(Fraction(str(mu)), int(k)) for mu, k in obj.get("entries", [])]
    tail = None
    if "tail" in obj:
        t = obj["tail"]
        tail = GeometricTail(Fraction(str(t["first"])), Fraction(str(t["ratio"])), int(t.get("kernel_order", 1)))
    res = covolume_sum(entries, tail)
    out.emit(res.to_obj(), canonical(res.value))


def _edge_indexed(arg: str):
    if os.path.exists(arg):
        obj = read_json(arg)
        if obj.get("edges") and "idx" in obj["edges"][0]:
            return edge_indexed_graph_from_obj(obj)
    return edge_indices(read_graph(arg))


def cmd_valences(a, out: Output):
    eg = _edge_indexed(a.input)
    vals = bass_serre_valences(eg)
    out.emit({"valences": vals}, "\n".join(f"{v}: {n}" for v, n in vals.items()), eg.to_dot())


def cmd_check_unimodular(a, out: Output):
    eg = _edge_indexed(a.input)
    res = check_unimodular(eg, a.tree.split(",") if a.tree else None)
    out.emit(res.to_obj(), "unimodular" if res.unimodular else f"not unimodular: {res.to_obj()['witness']}")


def cmd_develop(a, out: Output):
    if os.path.exists(a.input) and "cells" in read_json(a.input):
        c = complex_of_groups_from_obj(read_json(a.input))
        ball = develop_ball(c, a.base or c.graph.vertices[0], a.radius)
        out.emit(ball.to_obj(), f"{len(ball.vertices)} vertices, {len(ball.edges)} edges", ball.to_dot())
        return
    g = read_graph(a.input)
    ball = develop_tree_ball(g, a.base or g.vertices[0], a.radius)
    bad = ball.audit()
    obj = ball.to_obj()
    obj["audit_failures"] = [list(b) for b in bad]
    out.emit(obj, f"{len(ball.nodes)} nodes, {len(bad)} audit failures", ball.to_dot())


def cmd_barycentric(a, out: Output):
    cc = cell_complex_from_obj(read_json(a.input))
    sg = barycentric(cc)
    obj = sg.to_obj()
    obj["counts"] = {"vertices": len(sg.vertices), "edges": len(sg.edges), "composable": len(sg.compose)}
    out.emit(obj, f"{len(sg.vertices)} vertices, {len(sg.edges)} edges, {len(sg.compose)} composable pairs", sg.to_dot())


def cmd_spherical_sets(a, out: Output):
    system = system_from_obj(read_json(a.input))
    S = spherical_subsets(system)
    cc, _ = chamber(system)
    obj = {"count": len(S), "sets": [list(J) for J in S]}
    out.emit(obj, "\n".join(type_label(J) for J in S), barycentric(cc).to_dot())


def cmd_check_t1(a, out: Output):
    system = system_from_obj(read_json(a.input))
    i1, i2 = _pair(a.edge)
    g = check_T1(system, i1, i2)
    out.emit({"holds": g is not None, "witness": g}, "absent" if g is None else " ".join(f"{k}->{v}" for k, v in g.items()))


def cmd_check_t2(a, out: Output):
    spec = spec_from_obj(read_json(a.input))
    i1, i2 = _pair(a.edge)
    h = check_T2(spec, i1, i2)
    out.emit({"holds": h is not None, "witness": h}, "absent" if h is None else " ".join(f"{k}->{v}" for k, v in h.items()))


def cmd_chamber_ball(a, out: Output):
    spec = spec_from_obj(read_json(a.input))
    ball = chamber_graph_ball(spec, a.radius)
    out.emit(ball.to_obj(), f"{len(ball.chambers)} chambers, audit {'ok' if ball.audit_ok else 'FAILED'}", ball.to_dot())
    return 0 if ball.audit_ok else 3


def cmd_thomas(a, out: Output):
    g = read_graph(a.input)
    spec = spec_from_obj(read_json(a.building))
    i1, i2 = _pair(a.edge)
    res = thomas(g, spec, i1, i2, require_extension=not a.allow_nonextending)
    obj = {}
    if a.emit in ("complex", "both"):
        cobj = res.complex.to_obj()
        d = res.data
        cobj["symmetry"] = {"g": d.g, "h": d.h, "bipartite": d.bipartite, "colour": d.colour}
        lat = res.complex.metadata.get("lattice")
        if lat is not None:
            cobj["lattice"] = lat.to_obj()
            cobj["covolume_sum"] = covolume_sum(res.lattice_entries()).to_obj()
        obj["complex"] = cobj
    if a.emit in ("presentation", "both"):
        obj["presentation"] = str(res.presentation)
    out.emit(obj, str(res.presentation), res.complex.graph.to_dot(res.complex.types))


def cmd_double(a, out: Output):
    K = flag_complex_from_obj(read_json(a.input))
    V = [v for v in a.over.split(",") if v] if a.over else []
    D = double(K, V)
    out.emit(D.to_obj(), f"{len(D.vertices)} vertices, {len(D.edges)} edges", D.to_dot())


def cmd_wedge(a, out: Output):
    K = flag_complex_from_obj(read_json(a.input))
    W = wedge(K, a.copies)
    out.emit(W.to_obj(), f"{len(W.vertices)} vertices, {len(W.edges)} edges", W.to_dot())


def cmd_verify(a, out: Output):
    only = [c for c in a.only.split(",") if c] if a.only else None
    rep = run_suite(a.suite, only)
    out.emit(rep.to_obj(), "\n".join(rep.lines()))
    return 0 if rep.ok else 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    ap = argparse.ArgumentParser(prog="gogkit", description="Graphs and complexes of groups toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("example", cmd_example, "built-in presentations")
    p.add_argument("name", choices=registry.EXAMPLES)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--emit", choices=("presentation", "metadata", "both"), default="both")

    p = add("fundamental-group", cmd_fundamental_group, "presentation of a graph or complex of groups")
    p.add_argument("input")
    p.add_argument("--tree", help="comma separated spanning tree edges")

    p = add("abelianize", cmd_abelianize, "abelian invariants of a presentation")
    p.add_argument("input", help="file or inline presentation")

    p = add("coset-enum", cmd_coset_enum, "Todd-Coxeter enumeration")
    p.add_argument("input", help="file or inline presentation")
    p.add_argument("--subgroup", help="words file or comma separated subgroup generators")
    p.add_argument("--max-cosets", type=int)
    p.add_argument("--witnesses", help="words file or comma separated words expected to act nontrivially")

    p = add("covolume", cmd_covolume, "Serre covolume of a graph of finite groups")
    p.add_argument("input")

    p = add("covolume-sum", cmd_covolume_sum, "sum of mu/|K| entries with an optional geometric tail")
    p.add_argument("input")

    p = add("valences", cmd_valences, "Bass-Serre tree valences")
    p.add_argument("input")

    p = add("check-unimodular", cmd_check_unimodular, "unimodularity of an edge-indexed graph")
    p.add_argument("input")
    p.add_argument("--tree")

    p = add("develop", cmd_develop, "ball in the Bass-Serre tree or in a development")
    p.add_argument("input")
    p.add_argument("--base")
    p.add_argument("--radius", type=int, default=2)

    p = add("barycentric", cmd_barycentric, "barycentric subdivision of a cell poset")
    p.add_argument("input")

    p = add("spherical-sets", cmd_spherical_sets, "spherical subsets of a right-angled Coxeter system")
    p.add_argument("input")

    p = add("check-t1", cmd_check_t1, "symmetry condition (T1)")
    p.add_argument("input")
    p.add_argument("--edge", required=True)

    p = add("check-t2", cmd_check_t2, "symmetry condition (T2)")
    p.add_argument("input")
    p.add_argument("--edge", required=True)

    p = add("chamber-ball", cmd_chamber_ball, "ball in the chamber graph of a right-angled building")
    p.add_argument("input")
    p.add_argument("--radius", type=int, default=1)

    p = add("thomas", cmd_thomas, "functor from a graph of groups to a complex of groups")
    p.add_argument("input")
    p.add_argument("--building", required=True)
    p.add_argument("--edge", required=True)
    p.add_argument("--emit", choices=("complex", "presentation", "both"), default="both")
    p.add_argument("--allow-nonextending", action="store_true", help="do not require g to extend h")

    p = add("double", cmd_double, "double of a flag complex over a vertex set")
    p.add_argument("input")
    p.add_argument("--over", default="")

    p = add("wedge", cmd_wedge, "wedge of copies of a pointed flag complex")
    p.add_argument("input")
    p.add_argument("--copies", type=int, required=True)

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=("paper",))
    p.add_argument("--only", help=f"comma separated claim ids from: {', '.join(CHECKS)}")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.fn(args, Output(args.format))
    except GogkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
