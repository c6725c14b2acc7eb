"""Q8 up close: why a group can pass every structural test and still have an
endomorphism that moves an element off its centralizer.

Run:  python demos/01_quaternion.py
"""

from egl import (
    aut_is_abelian,
    automorphisms,
    center,
    endomorphisms,
    is_2_engel,
    is_e_group,
    is_p_epsilon,
    materialize,
    parse_presentation,
)

Q8_TEXT = """
group q8
gen a b
rel a^4
rel a^2 = b^2
rel b^-1 a b = a^-1
"""

G = materialize(parse_presentation(Q8_TEXT))
a, b = G.generators
print(f"|Q8| = {G.order}, element orders {sorted(G.orders().tolist())}")

# the centre is {1, a^2}, the only involution
Z = center(G)
print("Z(Q8) =", [str(G.word(int(x))) for x in Z.elements()])

# structurally Q8 looks well behaved
print("2-Engel:", is_2_engel(G).holds)
pe = is_p_epsilon(G, 2)
print(f"2-epsilon: {pe.holds} (r = {pe.data['r']})")

# but swapping a and b extends to an automorphism and [a, b] = a^2 != 1
ends = list(endomorphisms(G))
print(f"{len(ends)} endomorphisms, {len(automorphisms(G))} of them bijective")
v = is_e_group(G)
phi, x = v.witness
print(f"E-group: {v.holds}; phi sends a -> {G.word(phi(a))}, b -> {G.word(phi(b))}")
print(f"  [x, phi(x)] for x = {G.word(x)} is {G.word(G.comm(x, phi(x)))}")
print("Aut(Q8) abelian:", aut_is_abelian(G).holds)
