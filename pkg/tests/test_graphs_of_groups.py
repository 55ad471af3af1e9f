import json
import random
from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from gogkit.errors import DomainError, InputError
from gogkit.fp_core import abelianization, gen, tietze_counts
from gogkit.graphs_of_groups import (
    GEdge,
    GeometricTail,
    GraphOfGroups,
    bass_serre_valences,
    check_unimodular,
    covolume_sum,
    develop_tree_ball,
    edge_indices,
    fundamental_group,
    graph_of_groups_from_obj,
    serre_covolume,
)
from gogkit.local_groups import LocalGroup
from gogkit import finite_groups as fg
from gogkit.registry import (
    LM_TEXT,
    bk_gamma_graph,
    bk_lambda_graph,
    example_registry,
    gamma_n_graph,
    gamma_n_presentation,
    lm_graph,
)
from gogkit.fp_core import parse_presentation
from gogkit.samples import bs12_graph, random_graph_of_groups, unimodular_counterexample, z2_free_product


def oracle_valences(g: GraphOfGroups) -> dict:
    """Independent oracle: sum of |A_v| / |A_e| over edge ends at v."""
    val = {v: 0 for v in g.vertices}
    for e in g.edges:
        for v in (e.source, e.target):
            val[v] += g.groups[v].order // e.group.order
    return val


def test_lm_presentation_and_valence():
    e = example_registry("lm")
    assert e.presentation == parse_presentation(LM_TEXT)
    assert fundamental_group(lm_graph()) == parse_presentation(LM_TEXT)
    assert bass_serre_valences(edge_indices(lm_graph())) == {"v": 10}
    assert tietze_counts(e.presentation) == (3, 3)


@pytest.mark.parametrize("n", range(2, 9))
def test_gamma_n_counts(n):
    assert tietze_counts(gamma_n_presentation(n)) == (3, n * (n - 1) // 2 + 3)
    assert bass_serre_valences(edge_indices(gamma_n_graph(n))) == {"v": 10 * n}


@pytest.mark.parametrize("r", range(1, 11))
def test_bass_kulkarni_covolumes(r):
    assert serre_covolume(bk_gamma_graph(r)) == Fraction(1, 2**r)
    assert serre_covolume(bk_lambda_graph(r)) == Fraction(2, 2**r)
    assert bass_serre_valences(edge_indices(bk_gamma_graph(r))) == {"v": 4}


def test_covolume_index_in_tower():
    for r in range(1, 6):
        for rp in range(r, 11, r):
            ratio = serre_covolume(bk_gamma_graph(r)) / serre_covolume(bk_gamma_graph(rp))
            assert ratio == 2 ** (rp - r)


def test_covolume_needs_finite_groups():
    with pytest.raises(DomainError):
        serre_covolume(lm_graph())


def test_covolume_sum_with_tail():
    res = covolume_sum([(Fraction(1, 2), 1)], GeometricTail(Fraction(1, 4), Fraction(1, 2)))
    assert res.value == Fraction(1)
    with pytest.raises(DomainError):
        covolume_sum([], GeometricTail(Fraction(1), Fraction(1)))
    with pytest.raises(InputError):
        covolume_sum(iter([(1, 1)]))


def test_unimodular_examples():
    assert check_unimodular(edge_indices(lm_graph())).unimodular
    assert check_unimodular(edge_indices(bk_lambda_graph(3))).unimodular
    bad = check_unimodular(unimodular_counterexample())
    assert not bad.unimodular and bad.ratio == Fraction(1, 2)
    assert not check_unimodular(edge_indices(bs12_graph())).unimodular


def test_non_injective_map_rejected():
    z2 = LocalGroup.finite(fg.cyclic(2, "a"), "Z2")
    z4 = LocalGroup.finite(fg.cyclic(4, "z"), "Z4")
    with pytest.raises(InputError):
        GraphOfGroups(("v",), {"v": z2}, (GEdge("e", "v", "v", z4, {"z": gen("a")}, {"z": gen("a")}),))


def test_json_round_trip():
    for g in (lm_graph(), bk_lambda_graph(3), z2_free_product()):
        obj = json.loads(json.dumps(g.to_obj()))
        assert graph_of_groups_from_obj(obj).to_obj() == g.to_obj()


def test_tree_ball_z2_free_product_is_a_line():
    ball = develop_tree_ball(z2_free_product(), "a", 3)
    assert not ball.audit()
    assert len(ball.nodes) == 7


def test_tree_ball_bass_kulkarni():
    for r in (1, 2, 3):
        ball = develop_tree_ball(bk_gamma_graph(r), "v", 3)
        assert not ball.audit()
        # 4-regular tree: 1 + 4 + 12 + 36 vertices
        assert len(ball.nodes) == 53


@given(st.integers(0, 10**6))
def test_random_graph_valences_and_b1(seed):
    g = random_graph_of_groups(random.Random(seed))
    vals = bass_serre_valences(edge_indices(g))
    assert vals == oracle_valences(g)
    b1 = len(g.edges) - len(g.vertices) + 1
    assert abelianization(fundamental_group(g)).free_rank >= b1
    assert check_unimodular(edge_indices(g)).unimodular == _oracle_unimodular(g)
    ball = develop_tree_ball(g, g.vertices[0], 2)
    assert not ball.audit()


def _oracle_unimodular(g: GraphOfGroups) -> bool:
    # finite groups: idx ratios telescope through |A_v|, so every cycle product is 1
    return all(x.is_finite for x in g.groups.values())


@given(st.integers(0, 10**6))
def test_covolume_matches_definition(seed):
    g = random_graph_of_groups(random.Random(seed))
    expected = sum((Fraction(1, g.groups[v].order) for v in g.vertices), Fraction(0))
    assert serre_covolume(g) == expected
