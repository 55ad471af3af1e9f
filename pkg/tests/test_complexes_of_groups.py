import random

from hypothesis import given, strategies as st
import pytest

from gogkit.complexes_of_groups import (
    barycentric,
    cocycle_check,
    complex_of_groups_from_obj,
    develop_ball,
    fundamental_group_cog,
    solid_polygon,
)
from gogkit.errors import DomainError, InputError
from gogkit.fp_core import fingerprint
from gogkit.graphs_of_groups import develop_tree_ball, fundamental_group
from gogkit.samples import random_graph_of_groups, z2_free_product
from gogkit.thomas_functor import F1


def polygon_of_groups(n: int, bad: bool = False, group: str = "Z2") -> dict:
    """Every cell carries ``group`` with identity maps; ``bad`` breaks commutativity at p0."""
    cc = solid_polygon(n)
    obj = cc.to_obj()
    groups = {c["name"]: {"finite": group, "names": [f"g_{c['name']}"]} for c in obj["cells"]}
    maps = {}
    for s, t in cc.strict_pairs():
        maps[f"{s}>{t}"] = {f"g_{s}": f"g_{t}"}
    if bad:
        groups["p0"] = {"finite": "Z2^2", "names": ["w0", "w1"]}
        for s in ("F", "s0", f"s{n - 1}"):
            maps[f"{s}>p0"] = {f"g_{s}": "w0"}
        maps["F>p0"] = {"g_F": "w1"}
    obj["groups"] = groups
    obj["maps"] = maps
    return obj


@given(st.integers(3, 12))
def test_barycentric_counts(n):
    sg = barycentric(solid_polygon(n))
    assert len(sg.vertices) == 2 * n + 1
    assert len(sg.edges) == 4 * n
    assert len(sg.compose) == 2 * n


def test_pentagon_subdivision():
    sg = barycentric(solid_polygon(5))
    assert (len(sg.vertices), len(sg.edges), len(sg.compose)) == (11, 20, 10)


def test_cell_poset_rejects_bad_grading():
    from gogkit.complexes_of_groups import CellComplex

    with pytest.raises(InputError):
        CellComplex(("a", "b"), {"a": 1, "b": 1}, {"a": ("b",)})


def test_cocycle_passes_and_fails():
    good = complex_of_groups_from_obj(polygon_of_groups(4))
    assert cocycle_check(good).ok
    bad = complex_of_groups_from_obj(polygon_of_groups(4, bad=True))
    res = cocycle_check(bad)
    assert not res.ok and res.failure is not None


def test_twisted_complex_not_developed():
    obj = polygon_of_groups(3)
    obj["twists"] = [{"a": "s0>p0", "b": "F>s0", "element": "g_p0"}]
    c = complex_of_groups_from_obj(obj)
    with pytest.raises(DomainError):
        develop_ball(c, "F", 2)


def test_trivial_groups_develop_to_the_cell():
    for n in (3, 4, 5):
        obj = solid_polygon(n).to_obj()
        obj["groups"] = {c["name"]: "1" for c in obj["cells"]}
        ball = develop_ball(complex_of_groups_from_obj(obj), "F", 3)
        assert ball.inconsistency is None
        assert len(ball.vertices) == 2 * n + 1


def test_constant_group_polygon_develops_to_the_cell():
    # identity maps everywhere: every local development is a single chamber
    ball = develop_ball(complex_of_groups_from_obj(polygon_of_groups(5)), "F", 3)
    assert len(ball.vertices) == 11


def test_z2_line_development_matches_tree():
    g = z2_free_product()
    ball = develop_ball(F1(g), "a", 6)
    tree = develop_tree_ball(g, "a", 3)
    assert sum(1 for v in ball.vertices if v.type == "vertex") == len(tree.nodes)


@given(st.integers(0, 10**6))
def test_development_of_subdivided_graph_matches_tree(seed):
    g = random_graph_of_groups(random.Random(seed), max_order=6)
    v = g.vertices[0]
    ball = develop_ball(F1(g), v, 4)
    tree = develop_tree_ball(g, v, 2)
    assert ball.inconsistency is None
    assert sum(1 for x in ball.vertices if x.type == "vertex") == len(tree.nodes)


@given(st.integers(0, 10**6))
def test_subdivision_preserves_fundamental_group(seed):
    g = random_graph_of_groups(random.Random(seed))
    assert fingerprint(fundamental_group_cog(F1(g))) == fingerprint(fundamental_group(g))
