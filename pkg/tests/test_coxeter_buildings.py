import itertools
from fractions import Fraction

from hypothesis import given, strategies as st
import pytest

from gogkit.coxeter_buildings import (
    INF,
    BuildingSpec,
    RightAngledCoxeterSystem,
    chamber,
    chamber_graph_ball,
    check_T1,
    check_T2,
    finite_neighbourhood,
    pentagon_spec,
    pentagon_system,
    spherical_subsets,
    verify_T1,
    verify_T2,
)
from gogkit.errors import BudgetError, DomainError


@st.composite
def systems(draw, max_n=6):
    n = draw(st.integers(2, max_n))
    I = [f"i{k + 1}" for k in range(n)]
    pairs = [p for p in itertools.combinations(I, 2) if draw(st.booleans())]
    return RightAngledCoxeterSystem.from_pairs(I, pairs)


@st.composite
def specs(draw, max_n=5, max_q=4):
    s = draw(systems(max_n))
    return BuildingSpec(s, {i: draw(st.integers(2, max_q)) for i in s.I})


def brute_cliques(s: RightAngledCoxeterSystem) -> set:
    out = set()
    for mask in range(2 ** len(s.I)):
        J = [i for k, i in enumerate(s.I) if mask >> k & 1]
        if all(s.commute(a, b) for a, b in itertools.combinations(J, 2)):
            out.add(tuple(J))
    return out


def brute_T1(s: RightAngledCoxeterSystem, i1: str, i2: str):
    """Lexicographically least m-preserving permutation with g(i1) = i2, by exhaustive search."""
    for perm in itertools.permutations(s.I):
        g = dict(zip(s.I, perm))
        if g[i1] == i2 and all(s.m(a, b) == s.m(g[a], g[b]) for a in s.I for b in s.I):
            return g
    return None


def series_inverse(a: list, n: int) -> list:
    out = [Fraction(0)] * n
    out[0] = 1 / Fraction(a[0])
    for k in range(1, n):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, k + 1) if j < len(a)) / a[0]
    return out


def growth_oracle(spec: BuildingSpec, radius: int) -> list:
    """Sphere sizes from the growth series formula ``1/W = sum_J prod_{j in J} (1/W_j - 1)``."""
    n = radius + 1
    total = [Fraction(0)] * n
    for J in brute_cliques(spec.system):
        term = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for j in J:
            inv = series_inverse([1, spec.q[j] - 1], n)
            factor = [inv[0] - 1] + inv[1:]
            term = [sum(term[a] * factor[k - a] for a in range(k + 1)) for k in range(n)]
        total = [x + y for x, y in zip(total, term)]
    return [int(x) for x in series_inverse(total, n)]


def test_pentagon_spherical_sets():
    S = spherical_subsets(pentagon_system())
    assert len(S) == 11
    assert S[0] == ()


@given(systems())
def test_cliques_match_exhaustive_scan(s):
    S = spherical_subsets(s)
    assert len(S) == len(set(S))
    assert set(S) == brute_cliques(s)
    assert [len(J) for J in S] == sorted(len(J) for J in S)


def test_clique_budget():
    I = [f"i{k}" for k in range(12)]
    full = RightAngledCoxeterSystem.from_pairs(I, itertools.combinations(I, 2))
    with pytest.raises(BudgetError):
        spherical_subsets(full, budget=100)


def test_two_commuting_generators_chamber():
    s = RightAngledCoxeterSystem.from_pairs(["i1", "i2"], [("i1", "i2")])
    cc, types = chamber(s)
    assert len(cc.cells) == 4
    assert cc.dim["{}"] == 2 and cc.dim["{i1,i2}"] == 0


def test_pentagon_T1_and_T2():
    s = pentagon_system()
    g = check_T1(s, "i1", "i2")
    assert g == {"i1": "i2", "i2": "i1", "i3": "i4", "i4": "i3", "i5": "i5"}
    h = check_T2(pentagon_spec(10, 10, 2, 2, 2), "i1", "i2")
    assert h == {"i1": "i2", "i3": "i4", "i5": "i5"}
    assert check_T2(pentagon_spec(10, 10, 2, 3, 2), "i1", "i2") is None


def test_T1_needs_infinite_m():
    with pytest.raises(DomainError):
        check_T1(pentagon_system(), "i1", "i3")


def test_T1_absent_for_asymmetric_system():
    # i1 has degree 1 and i2 degree 2
    s = RightAngledCoxeterSystem.from_pairs(["i1", "i2", "i3", "i4"], [("i1", "i3"), ("i2", "i3"), ("i2", "i4")])
    assert check_T1(s, "i1", "i2") is None


@given(systems(), st.data())
def test_T1_agrees_with_brute_force(s, data):
    pairs = [(a, b) for a in s.I for b in s.I if s.m(a, b) == INF]
    if not pairs:
        return
    i1, i2 = data.draw(st.sampled_from(pairs))
    g = check_T1(s, i1, i2)
    assert g == brute_T1(s, i1, i2)
    if g is not None:
        assert verify_T1(s, i1, i2, g)


@given(specs(), st.data())
def test_T1_restricts_to_T2_for_constant_q(spec, data):
    s = spec.system
    pairs = [(a, b) for a in s.I for b in s.I if s.m(a, b) == INF]
    if not pairs:
        return
    i1, i2 = data.draw(st.sampled_from(pairs))
    flat = BuildingSpec(s, {i: 3 for i in s.I})
    g = check_T1(s, i1, i2)
    if g is not None:
        h = {a: g[a] for a in finite_neighbourhood(s, i1)}
        assert verify_T2(flat, i1, i2, h)
        assert check_T2(flat, i1, i2) is not None
    h = check_T2(spec, i1, i2)
    if h is not None:
        assert verify_T2(spec, i1, i2, h)


def test_pentagon_chamber_ball():
    ball = chamber_graph_ball(pentagon_spec(10, 10, 2, 2, 2), 2)
    assert ball.sphere_sizes() == [1, 21, 239] == growth_oracle(pentagon_spec(10, 10, 2, 2, 2), 2)
    assert ball.audit_ok
    assert set(ball.residue_sizes("i1")) == {10}
    assert set(ball.residue_sizes("i3")) == {2}


def test_commuting_pair_is_a_grid():
    s = RightAngledCoxeterSystem.from_pairs(["i1", "i2"], [("i1", "i2")])
    ball = chamber_graph_ball(BuildingSpec(s, {"i1": 2, "i2": 3}), 2)
    assert len(ball.chambers) == 6
    assert len(ball.residues) == 5 and ball.audit_ok


@given(specs(max_n=4, max_q=3))
def test_sphere_sizes_match_growth_series(spec):
    ball = chamber_graph_ball(spec, 3)
    assert ball.sphere_sizes() == growth_oracle(spec, 3)
    assert ball.sphere_sizes()[1] == sum(q - 1 for q in spec.q.values())
    assert ball.audit_ok
