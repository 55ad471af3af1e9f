"""Sphere sizes of chamber-graph balls and the residue audit."""
import sys

from gogkit.coxeter_buildings import chamber_graph_ball, pentagon_spec

radius = int(sys.argv[1]) if len(sys.argv) > 1 else 3
for q in ((10, 10, 2, 2, 2), (3, 3, 2, 2, 2), (2, 2, 2, 2, 2)):
    ball = chamber_graph_ball(pentagon_spec(*q), radius)
    print(q, "spheres", ball.sphere_sizes(), "complete residues", len(ball.residues), "audit", ball.audit_ok)
