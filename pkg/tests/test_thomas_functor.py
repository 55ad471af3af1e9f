import random
from dataclasses import replace
from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from gogkit.complexes_of_groups import cocycle_check, develop_ball
from gogkit.coxeter_buildings import RightAngledCoxeterSystem, BuildingSpec, pentagon_spec
from gogkit.errors import FunctorInapplicable, InputError
from gogkit.fp_core import abelianization, fingerprint
from gogkit.graphs_of_groups import LatticeData, bass_serre_valences, covolume_sum, edge_indices
from gogkit.registry import bk_gamma_graph, lambda_kl_presentation, lm_graph
from gogkit.samples import random_graph_of_groups
from gogkit.thomas_functor import F1, expected_cell_count, thomas
from gogkit.verify import SINGLE_EDGE_TABLE, single_edge


def test_single_edge_local_groups():
    res = thomas(single_edge(), pentagon_spec(3, 2, 2, 3, 4), "i1", "i2")
    c = res.complex
    assert len(c.graph.vertices) == 11
    table = {c.types[v]: (res.data.cells[v].base, [j for j, _ in res.data.cells[v].factors]) for v in c.graph.vertices}
    assert table == {k: (b, f) for k, (b, f) in SINGLE_EDGE_TABLE.items()}
    base_order = {"e": 2, "v": 6, "w": 4}
    q = pentagon_spec(3, 2, 2, 3, 4).q
    for v in c.graph.vertices:
        info = res.data.cells[v]
        expected = base_order[info.base]
        for j, _ in info.factors:
            expected *= q[j]
        assert c.groups[v].order == expected
    assert cocycle_check(c).ok


def test_single_edge_development_at_vertex():
    res = thomas(single_edge(), pentagon_spec(3, 2, 2, 3, 4), "i1", "i2")
    cell = next(v for v in res.complex.graph.vertices if res.complex.types[v] == "{i1}")
    ball = develop_ball(res.complex, cell, 1)
    # the i1 face sits in q1 = 3 chambers
    assert sum(1 for x in ball.vertices if x.type == "{}") == 3


def test_lm_functor_output():
    res = thomas(lm_graph(), pentagon_spec(10, 10, 2, 2, 2), "i1", "i2")
    assert len(res.complex.graph.vertices) == 8
    p = res.presentation
    assert set(p.generators) == {"a", "b", "x3", "x4", "x5", "t"}


@pytest.mark.parametrize("k,l", [(2, 2), (2, 3), (3, 2)])
def test_lambda_kl_fingerprints(k, l):
    out = thomas(lm_graph(), pentagon_spec(10, 10, k, k, l), "i1", "i2").presentation
    targets = ("Z2", "Z4", "S3")
    assert fingerprint(out, targets) == fingerprint(lambda_kl_presentation(k, l), targets)


def test_valence_mismatch_rejected():
    with pytest.raises(InputError):
        thomas(lm_graph(), pentagon_spec(4, 4, 2, 2, 2), "i1", "i2")


def test_T2_failure_blocks_non_bipartite():
    with pytest.raises(FunctorInapplicable):
        thomas(lm_graph(), pentagon_spec(10, 10, 2, 3, 2), "i1", "i2")


def test_T1_failure_blocks_functor():
    s = RightAngledCoxeterSystem.from_pairs(["i1", "i2", "i3", "i4"], [("i1", "i3"), ("i2", "i3"), ("i2", "i4")])
    with pytest.raises(FunctorInapplicable):
        thomas(lm_graph(), BuildingSpec(s, {i: 10 for i in s.I}), "i1", "i2")


def test_lattice_metadata_propagates():
    g = replace(bk_gamma_graph(2), lattice=LatticeData({"v": Fraction(1, 4), "e": Fraction(1, 2)}, psi={"e": "swap"}))
    res = thomas(g, pentagon_spec(4, 4, 2, 2, 3), "i1", "i2")
    lat = res.complex.metadata["lattice"]
    assert lat.provenance == "propagated"
    assert "swap" in lat.psi.values()
    # interior types {}, {i3}, {i4}, {i5}, {i3,i4} at mu 1/2; face types {i1}, {i1,i3}, {i1,i5} at mu 1/4
    interior = Fraction(1, 2) * (1 + Fraction(1, 2) + Fraction(1, 2) + Fraction(1, 3) + Fraction(1, 4))
    face = Fraction(1, 4) * (1 + Fraction(1, 2) + Fraction(1, 3))
    assert covolume_sum(res.lattice_entries()).value == interior + face == Fraction(7, 4)


@given(st.integers(0, 10**6), st.integers(2, 3), st.integers(2, 3))
def test_random_loops_local_groups(seed, q3, q5):
    rng = random.Random(seed)
    g = random_graph_of_groups(rng, max_vertices=1, max_edges=2, max_order=6)
    k = bass_serre_valences(edge_indices(g))[g.vertices[0]]
    spec = pentagon_spec(k, k, q3, q3, q5)
    res = thomas(g, spec, "i1", "i2")
    c = res.complex
    assert len(c.graph.vertices) == expected_cell_count(res.data, spec, len(g.edges), g.vertices)
    assert cocycle_check(c).ok
    for v in c.graph.vertices:
        info = res.data.cells[v]
        base = g.groups[info.base] if info.kind == "face" else g.edge(info.base).group
        expected = base.order
        for j, _ in info.factors:
            expected *= spec.q[j]
        assert c.groups[v].order == expected
    # the cyclic factors add x-generators; killing them recovers the input abelianization rank
    assert abelianization(res.presentation).free_rank == abelianization(res.raw_presentation).free_rank


@given(st.integers(0, 10**6))
def test_F1_records_indices(seed):
    g = random_graph_of_groups(random.Random(seed))
    c = F1(g)
    idx = edge_indices(g).idx
    for e in g.edges:
        assert c.metadata["indices"][(e.name, "s")] == idx[(e.name, 1)]
        assert c.metadata["indices"][(e.name, "t")] == idx[(e.name, -1)]
