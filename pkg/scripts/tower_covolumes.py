"""Covolumes and valences along the Bass-Kulkarni tower."""
from gogkit.graphs_of_groups import bass_serre_valences, edge_indices, serre_covolume
from gogkit.registry import bk_gamma_graph, bk_lambda_graph
from gogkit.salvetti_raag import tower_covolume

print(f"{'r':>3} {'Gamma_r':>10} {'Lambda_r':>10} {'valence':>8}")
for r in range(1, 11):
    g = bk_gamma_graph(r)
    val = bass_serre_valences(edge_indices(g))["v"]
    print(f"{r:>3} {str(serre_covolume(g)):>10} {str(serre_covolume(bk_lambda_graph(r))):>10} {val:>8}")
print()
print("lifted tower 2/2^(r^s):")
for r in (2, 3):
    print(" ", r, [str(tower_covolume(r, s)) for s in (1, 2, 3)])
