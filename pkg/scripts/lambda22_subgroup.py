"""Coset enumeration of the index-16 subgroup of Lambda(2,2) and its action."""
from gogkit.coset_enum import coset_action_image, todd_coxeter, witnesses_nontrivial
from gogkit.fp_core import format_word
from gogkit.registry import delta_subgroup, lambda_kl_presentation, torsion_witnesses

p = lambda_kl_presentation(2, 2)
print("presentation:", p)
sub = delta_subgroup(p)
print("subgroup generators:", ", ".join(format_word(w) for w in sub))
t = todd_coxeter(p, sub, max_cosets=10_000)
print("status:", t.status, "index:", t.index)
fp = coset_action_image(t)
print("image order:", fp.order)
print("element orders:", dict(fp.element_orders))
print("abelian invariants:", fp.abelian.as_dict())
for row in witnesses_nontrivial(t, torsion_witnesses(p)).as_list():
    print(f"  {row['word']:8s} nontrivial={row['nontrivial']}")
