from hypothesis import given, strategies as st
import pytest

from gogkit.coset_enum import coset_action_image, todd_coxeter, verify_torsion_witness, witnesses_nontrivial
from gogkit.errors import StateError
from gogkit.finite_groups import standard_group
from gogkit.fp_core import parse_presentation, parse_word
from gogkit.registry import delta_subgroup, lambda_kl_presentation, torsion_witnesses

GROUPS = ("Z4", "Z6", "S3", "D4", "Q8", "Z2^3", "S4")


def test_trivial_subgroup_gives_order():
    p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >")
    t = todd_coxeter(p, [])
    assert t.complete and t.index == 6
    assert t.check_closed() and t.is_transitive()


def test_subgroup_index():
    p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >")
    assert todd_coxeter(p, [parse_word("b", p.generators)]).index == 2
    assert todd_coxeter(p, [parse_word("a", p.generators)]).index == 3


def test_overflow_is_reported_not_raised():
    p = parse_presentation("< a, b | >")
    t = todd_coxeter(p, [], max_cosets=100)
    assert t.status == "overflowed"
    with pytest.raises(StateError):
        t.permutation(parse_word("a", p.generators))


@given(st.sampled_from(GROUPS), st.data())
def test_index_matches_table(name, data):
    g = standard_group(name)
    p = g.presentation()
    elems = data.draw(st.lists(st.integers(0, g.order - 1), max_size=2))
    sub = [g.word_for(x) for x in elems]
    t = todd_coxeter(p, sub)
    assert t.complete
    assert t.index == g.order // len(g.closure(elems))
    assert all(t.contains(w) for w in sub)


@given(st.sampled_from(GROUPS))
def test_regular_action_image_is_the_group(name):
    g = standard_group(name)
    fp = coset_action_image(todd_coxeter(g.presentation(), []))
    assert fp.order == g.order
    assert dict(fp.element_orders) == g.element_order_counts()


def test_lambda22_torsion_free_subgroup():
    p = lambda_kl_presentation(2, 2)
    t = todd_coxeter(p, delta_subgroup(p), max_cosets=10_000)
    assert t.complete and t.index == 16
    fp = coset_action_image(t)
    assert fp.order == 16
    assert fp.abelian.torsion == (2, 2, 2)
    assert dict(fp.element_orders) == {1: 1, 2: 11, 4: 4}
    rep = witnesses_nontrivial(t, torsion_witnesses(p))
    assert rep.certificate
    assert verify_torsion_witness(p, delta_subgroup(p), torsion_witnesses(p)).certificate


def test_image_fingerprint_against_table_oracle():
    # the image computed from permutations agrees with brute force composition
    p = lambda_kl_presentation(2, 2)
    t = todd_coxeter(p, delta_subgroup(p), max_cosets=10_000)
    perms = t.generator_permutations()
    seen = {tuple(range(t.index))}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for q in perms.values():
            y = tuple(q[i] for i in x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    assert len(seen) == 16
