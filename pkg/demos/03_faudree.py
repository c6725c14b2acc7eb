"""Faudree's four-generator groups.

At p = 3 the group has order 3^8 and passes every structural test we have.
At p = 2 the same relators give a group of order 2^8 with an endomorphism
that breaks the E-property at a3.

Run:  python demos/03_faudree.py
"""

import time

from egl import catalog
from egl.engine import materialize
from egl.morphisms import hom_from_images, is_e_group, is_p_epsilon
from egl.structure import center, derived, exponent, is_2_engel, nilpotency_class, regular_power_identity
from egl.verify import faudree_swap_images

print(catalog.faudree(3).to_text())

t0 = time.perf_counter()
G3 = materialize(catalog.faudree(3))
print(f"p=3: order {G3.order}, built in {time.perf_counter() - t0:.1f}s")
print(f"     class {nilpotency_class(G3)}, exponent {exponent(G3)}, 2-Engel {is_2_engel(G3).holds}")
print(f"     |Z| = {center(G3).order}, |G'| = {derived(G3).order}")
pe = is_p_epsilon(G3, 3)
print(f"     3-epsilon {pe.holds} with r = {pe.data['r']}")
for m in (1, 2):
    print(f"     regular power identity m={m}: {regular_power_identity(G3, 3, m).holds}")

G2 = materialize(catalog.faudree(2))
imgs = faudree_swap_images(G2)
alpha = hom_from_images(G2, G2, imgs)
a3 = G2.generators[2]
print(f"\np=2: order {G2.order}; the map a1->a1^-1 a2 a4, a2->a3, a3->a4, a4->a1 a4 "
      f"is an endomorphism: {alpha is not None}")
print(f"     [alpha(a3), a3] = {G2.word(G2.comm(alpha(a3), a3))}")
v = is_e_group(G2, fail_fast=True)
print(f"     blind fail-fast search: E-group {v.holds} after {v.nodes} nodes, witness re-checks: {v.recheck(G2)}")
