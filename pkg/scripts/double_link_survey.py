"""Compare the vertex link in the Salvetti cover with doubles of the wedge.

For every flag complex K on 2..5 vertices and k = 1..4 copies, the link of
wedge(K, k) over its marked vertices is compared with the double over the
marked vertices and with the double over all vertices.
"""
from collections import Counter

from gogkit.flag_complex import same_labelled_graph
from gogkit.salvetti_raag import double, link_identity, wedge
from gogkit.verify import all_flag_complexes

tally = Counter()
for K in all_flag_complexes(5):
    for k in range(1, 5):
        link, dbl, V = link_identity(K, k)
        L = wedge(K, k)
        tally["cases"] += 1
        tally["equals double over marked"] += same_labelled_graph(link, dbl)
        tally["equals double over all"] += same_labelled_graph(link, double(L, L.vertices))
        tally["size |L|+|V|"] += len(link.vertices) == len(L.vertices) + len(V)
        tally["size 2|L|"] += len(link.vertices) == 2 * len(L.vertices)
for key, val in tally.items():
    print(f"{key:28s} {val}")
