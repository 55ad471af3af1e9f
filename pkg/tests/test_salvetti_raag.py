import itertools
from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from conftest import brute_hom_count
from gogkit.errors import InputError
from gogkit.finite_groups import standard_group
from gogkit.flag_complex import FlagComplex, same_labelled_graph
from gogkit.fp_core import Presentation, abelianization, count_homs, gen
from gogkit.registry import bk_lambda_graph
from gogkit.salvetti_raag import (
    double,
    graph_product_presentation,
    lift_certificate,
    link_identity,
    marked_vertices,
    raag_presentation,
    salvetti_link,
    tower_covolume,
    wedge,
)


@st.composite
def flag_complexes(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_n, max_n))
    vs = [chr(ord("a") + k) for k in range(n)]
    es = [e for e in itertools.combinations(vs, 2) if draw(st.booleans())]
    return FlagComplex.from_edges(vs, es)


def independent_subset(K: FlagComplex, draw) -> list:
    V = []
    for v in K.vertices:
        if draw(st.booleans()) and not any(K.adjacent(v, u) for u in V):
            V.append(v)
    return V


def test_cliques_match_subset_scan():
    K = FlagComplex.from_edges("abcd", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    got = set(K.cliques())
    scan = {
        c
        for r in range(5)
        for c in itertools.combinations(K.vertices, r)
        if all(K.adjacent(x, y) for x, y in itertools.combinations(c, 2))
    }
    assert got == scan and len(got) == 10


@given(flag_complexes(), st.data())
def test_double_counts_and_involution(K, data):
    V = data.draw(st.lists(st.sampled_from(K.vertices), unique=True))
    D = double(K, V)
    assert len(D.vertices) == len(K.vertices) + len(V)
    mult = {v: 2 if v in V else 1 for v in K.vertices}
    assert len(D.edges) == sum(mult[a] * mult[b] for a, b in K.sorted_edges())

    def swap(x: str) -> str:
        if x.endswith("+"):
            return x[:-1] + "-"
        if x.endswith("-"):
            return x[:-1] + "+"
        return x

    assert frozenset(frozenset(map(swap, e)) for e in D.edges) == D.edges
    # the doubled copies of a vertex are never adjacent to each other
    assert all(not D.adjacent(f"{v}+", f"{v}-") for v in V)


def test_double_over_nothing_is_identity():
    K = FlagComplex.from_edges("abc", [("a", "b")])
    assert same_labelled_graph(double(K, []), K)


@given(flag_complexes(min_n=2), st.integers(1, 4))
def test_wedge_counts(K, k):
    W = wedge(K, k)
    assert len(W.vertices) == 1 + k * (len(K.vertices) - 1)
    assert len(W.edges) == k * len(K.edges)
    assert len(marked_vertices(K, k)) == k


def test_wedge_rejects_nonpositive():
    with pytest.raises(InputError):
        wedge(FlagComplex.from_edges("ab", []), 0)


@given(flag_complexes(max_n=4))
def test_raag_abelianization_and_homs(L):
    p = raag_presentation(L)
    ab = abelianization(p)
    assert ab.free_rank == len(L.vertices) and ab.torsion == ()
    assert count_homs(p, standard_group("Z2")) == 2 ** len(L.vertices)
    s3 = standard_group("S3")
    assert count_homs(p, s3) == brute_hom_count(p, s3)


@given(flag_complexes(max_n=4), st.data())
def test_graph_product_of_cyclic_groups(L, data):
    qs = {v: data.draw(st.integers(2, 4)) for v in L.vertices}
    p = graph_product_presentation(L, {v: Presentation((v,), (gen(v, qs[v]),)) for v in L.vertices})
    ab = abelianization(p)
    order = 1
    for d in ab.torsion:
        order *= d
    expected = 1
    for q in qs.values():
        expected *= q
    assert ab.free_rank == 0 and order == expected


@given(flag_complexes(), st.data())
def test_link_is_double_over_all_vertices(L, data):
    V = independent_subset(L, data.draw)
    link = salvetti_link(L, V)
    assert same_labelled_graph(link, double(L, L.vertices))
    assert len(link.vertices) == 2 * len(L.vertices)


def test_link_of_wedge_differs_from_double_over_marked_set():
    K = FlagComplex.from_edges("ab", [("a", "b")])
    link, dbl, V = link_identity(K, 1)
    assert V == ["b"]
    assert len(link.vertices) == 4 and len(dbl.vertices) == 3
    assert not same_labelled_graph(link, dbl)


def test_link_rejects_adjacent_marked_vertices():
    K = FlagComplex.from_edges("ab", [("a", "b")])
    with pytest.raises(InputError):
        salvetti_link(K, ["a", "b"])


@pytest.mark.parametrize("r", range(2, 5))
def test_tower_covolume_ratios(r):
    for s in range(1, 3):
        assert tower_covolume(r, s) == Fraction(2, 2 ** (r**s))
        assert tower_covolume(r, s) / tower_covolume(r, s + 1) == 2 ** (r ** (s + 1) - r**s)


def test_lift_certificate_keeps_covolume():
    cert = lift_certificate(bk_lambda_graph(3))
    assert cert["covolume"] == Fraction(2, 8)
    assert cert["vertex_orbits"] == 2
