from hypothesis import given, strategies as st
import pytest

from conftest import abelian_hom_count, brute_hom_count, presentations, words
from gogkit.errors import InputError
from gogkit.finite_groups import standard_group
from gogkit.fp_core import (
    Presentation,
    abelianization,
    conjugate,
    count_homs,
    cyclic_reduce,
    fingerprint,
    format_word,
    free_reduce,
    gen,
    inverse,
    load_presentation,
    parse_presentation,
    parse_word,
    presentation_from_json,
    presentation_to_json,
    simplify,
    smith_diagonal,
)


def test_cyclic_group_abelianization():
    ab = abelianization(parse_presentation("< a | a^2 >"))
    assert ab.free_rank == 0 and ab.torsion == (2,)


def test_free_group_and_z2():
    assert abelianization(parse_presentation("< a, b | >")).free_rank == 2
    ab = abelianization(parse_presentation("< a, b | [a,b] >"))
    assert (ab.free_rank, ab.torsion) == (2, ())


def test_smith_divisor_chain():
    # Z2 x Z3 is Z6; Z2 x Z4 stays as it is
    assert abelianization(parse_presentation("< a, b | a^2, b^3, [a,b] >")).torsion == (6,)
    assert abelianization(parse_presentation("< a, b | a^2, b^4, [a,b] >")).torsion == (2, 4)


def test_smith_diagonal_known_matrix():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_parse_relation_forms():
    p = parse_presentation("< a, b | a^3 = b^2, [a, b] >")
    assert len(p.relators) == 2
    assert format_word(parse_word("a^-1 b^2", p.generators)) == "a^-1 b^2"


def test_parse_rejects_undeclared_generator():
    with pytest.raises(InputError):
        parse_presentation("< a | b^2 >")


def test_relators_stored_cyclically_reduced():
    p = Presentation(("a", "b"), ((("b", -1), ("a", 1), ("a", 1), ("b", 1)),))
    assert p.relators == ((("a", 1), ("a", 1)),)


def test_json_round_trip():
    p = parse_presentation("< a, b, t | [a,b], t a t^-1 = b >")
    assert presentation_from_json(presentation_to_json(p)) == p
    assert load_presentation(presentation_to_json(p)) == p


@given(words())
def test_inverse_cancels(w):
    assert free_reduce(w + inverse(w)) == ()


@given(words())
def test_cyclic_reduce_idempotent(w):
    r = cyclic_reduce(free_reduce(w))
    assert cyclic_reduce(r) == r


@given(presentations(), st.data())
def test_abelianization_invariant_under_edits(p, data):
    rels = list(p.relators)
    if rels:
        k = data.draw(st.integers(0, len(rels) - 1))
        r = rels[k]
        edit = data.draw(st.sampled_from(("invert", "rotate", "conjugate", "permute")))
        if edit == "invert":
            rels[k] = inverse(r)
        elif edit == "rotate":
            s = data.draw(st.integers(0, len(r)))
            rels[k] = r[s:] + r[:s]
        elif edit == "conjugate":
            rels[k] = conjugate(r, gen(p.generators[0]))
        else:
            rels.reverse()
    q = Presentation(p.generators, tuple(rels))
    assert abelianization(q) == abelianization(p)
    for name in ("Z2", "S3"):
        t = standard_group(name)
        assert count_homs(q, t) == count_homs(p, t)


@given(presentations(max_rels=2, max_len=5))
def test_hom_count_matches_brute_force(p):
    for name in ("Z2", "Z3", "S3"):
        t = standard_group(name)
        assert count_homs(p, t) == brute_hom_count(p, t)


@given(presentations(max_rels=3, max_len=6))
def test_hom_count_into_cyclic_matches_invariants(p):
    ab = abelianization(p)
    for n in (2, 3, 4, 6):
        assert count_homs(p, standard_group(f"Z{n}")) == abelian_hom_count(ab.free_rank, ab.torsion, n)


@given(st.lists(st.integers(1, 12), min_size=1, max_size=4))
def test_diagonal_presentation(orders):
    gens = tuple(f"g{k}" for k in range(len(orders)))
    rels = [gen(g, n) for g, n in zip(gens, orders)]
    rels += [((gens[i], 1), (gens[j], 1), (gens[i], -1), (gens[j], -1)) for i in range(len(gens)) for j in range(i)]
    p = Presentation(gens, tuple(rels))
    ab = abelianization(p)
    order = 1
    for d in ab.torsion:
        order *= d
    expected = 1
    for n in orders:
        expected *= n
    assert ab.free_rank == 0 and order == expected
    assert count_homs(p, standard_group("Z4")) == abelian_hom_count(0, ab.torsion, 4)


@given(presentations(max_rels=3, max_len=5))
def test_simplify_preserves_fingerprint(p):
    q = simplify(p)
    assert len(q.generators) <= len(p.generators)
    assert abelianization(q) == abelianization(p)
    for name in ("Z2", "S3"):
        t = standard_group(name)
        assert count_homs(q, t) == count_homs(p, t)


def test_fingerprint_of_s3_presentation():
    fp = fingerprint(parse_presentation("< a, b | a^2, b^3, (a b)^2 >"))
    assert fp.abelian.torsion == (2,)
    # Hom(S3, Z2) = 2, Hom(S3, Z3) = 1, Hom(S3, S3) = 10
    assert dict(fp.homs) == {"Z2": 2, "Z3": 1, "S3": 10}
