"""Typed local groups produced from a single edge of groups over the pentagon building."""
from gogkit.coxeter_buildings import pentagon_spec
from gogkit.graphs_of_groups import covolume_sum
from gogkit.thomas_functor import thomas
from gogkit.verify import single_edge

res = thomas(single_edge(), pentagon_spec(3, 2, 2, 3, 4), "i1", "i2")
c = res.complex
print(f"{'type':12s} {'base':5s} {'factors':12s} order")
for v in c.graph.vertices:
    info = res.data.cells[v]
    factors = ",".join(f"Z{q}" for _, q in info.factors) or "-"
    print(f"{c.types[v]:12s} {info.base:5s} {factors:12s} {c.groups[v].order}")
print()
print("fundamental group:", res.presentation)
