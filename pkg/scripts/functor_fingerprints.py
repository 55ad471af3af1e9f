"""Fingerprints of random graphs of finite groups before and after subdivision."""
import random
import sys

from gogkit.complexes_of_groups import fundamental_group_cog
from gogkit.fp_core import fingerprint
from gogkit.graphs_of_groups import fundamental_group
from gogkit.samples import random_graph_of_groups
from gogkit.thomas_functor import F1
from gogkit.verify import SEED

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rng = random.Random(SEED)
bad = 0
for k in range(count):
    g = random_graph_of_groups(rng)
    a = fingerprint(fundamental_group(g))
    b = fingerprint(fundamental_group_cog(F1(g)))
    groups = " ".join(g.groups[v].label for v in g.vertices)
    print(f"{k:3d} V={len(g.vertices)} E={len(g.edges)} [{groups}] {a.as_dict()} {'ok' if a == b else 'MISMATCH'}")
    bad += a != b
print(f"{count - bad}/{count} agree")
