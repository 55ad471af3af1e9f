import itertools
from math import gcd

from hypothesis import settings, strategies as st

from gogkit.fp_core import Presentation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GENS = ("a", "b", "c")


@st.composite
def words(draw, gens=GENS, max_len=6):
    n = draw(st.integers(0, max_len))
    return tuple((draw(st.sampled_from(gens)), draw(st.sampled_from((1, -1)))) for _ in range(n))


@st.composite
def presentations(draw, gens=GENS, max_rels=3, max_len=6):
    k = draw(st.integers(1, len(gens)))
    g = gens[:k]
    rels = draw(st.lists(words(g, max_len), max_size=max_rels))
    return Presentation(g, tuple(rels))


def brute_hom_count(p: Presentation, table) -> int:
    """Independent oracle: try every assignment of generators to elements."""
    count = 0
    idx = {g: k for k, g in enumerate(p.generators)}
    for images in itertools.product(range(table.order), repeat=len(p.generators)):
        ok = True
        for r in p.relators:
            x = table.identity
            for g, e in r:
                y = images[idx[g]]
                x = int(table.mul[x][y if e == 1 else table.inv[y]])
            if x != table.identity:
                ok = False
                break
        count += ok
    return count


def abelian_hom_count(free_rank: int, torsion, n: int) -> int:
    out = n**free_rank
    for d in torsion:
        out *= gcd(d, n)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
