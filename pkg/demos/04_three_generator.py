"""Three-generator class-2 groups built straight from a product formula on
triples over Z/p^(r+t), compared with the matching presentation.

Run:  python demos/04_three_generator.py
"""

from egl.catalog import ThreeGenParams, threegen_epsilon, threegen_presentation
from egl.engine import materialize
from egl.morphisms import are_isomorphic, is_e_group, is_p_epsilon
from egl.structure import center, derived, exponent, nilpotency_class, omega, power_subgroup

params = ThreeGenParams(3, 1, 1, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
print(threegen_presentation(params).to_text())

G = threegen_epsilon(params)
p, r, t = params.p, params.r, params.t
print(f"order {G.order} = {p}^{3 * (r + t)}, class {nilpotency_class(G)}, exponent {exponent(G)}")
pe = is_p_epsilon(G, p)
print(f"p-epsilon {pe.holds}, r = {pe.data['r']}")
Z, D = center(G), derived(G)
print("Z = Omega_r = G^(p^t):", Z == omega(G, p, r) == power_subgroup(G, p ** t))
print("G' = Omega_t = G^(p^r):", D == omega(G, p, t) == power_subgroup(G, p ** r))

H = materialize(threegen_presentation(params))
iso = are_isomorphic(H, G)
print(f"presentation group (order {H.order}) isomorphic to formula group: {iso.holds}")

v = is_e_group(G, fail_fast=True)
phi, x = v.witness
print(f"E-group: {v.holds}; x = {G.word(x)}, phi(x) = {G.word(phi(x))}")
