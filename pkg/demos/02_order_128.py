"""The three order-128 groups in the catalog are E-groups.

Each check below is exhaustive: every endomorphism is enumerated.  Expect a
few seconds per group.

Run:  python demos/02_order_128.py
"""

import time

from egl import catalog
from egl.morphisms import (
    are_isomorphic,
    aut_is_abelian,
    automorphisms,
    is_central_auto,
    is_e_group,
    non_auto_endos_land_in_center,
)
from egl.structure import center, derived, exponent, min_generators, omega, power_subgroup

groups = {}
for key in ("e128_1", "e128_2", "e128_3"):
    t0 = time.perf_counter()
    G = catalog.named(key).group()
    groups[key] = G
    D = derived(G)
    same = D == center(G) == power_subgroup(G, 2) == omega(G, 2, 1)
    v = is_e_group(G)
    auts = automorphisms(G)
    print(f"{key}: |G|={G.order} exp={exponent(G)} d={min_generators(G)} |G'|={D.order} "
          f"G'=Z=G^2=Omega_1: {same}")
    print(f"    E-group {v.holds} over {v.endo_count} endomorphisms ({v.nodes} search nodes)")
    print(f"    |Aut|={len(auts)} abelian={aut_is_abelian(G).holds} "
          f"all central={all(is_central_auto(G, f) for f in auts)} "
          f"non-autos into Z={non_auto_endos_land_in_center(G).holds}  [{time.perf_counter() - t0:.1f}s]")

keys = list(groups)
for i in range(3):
    for j in range(i + 1, 3):
        r = are_isomorphic(groups[keys[i]], groups[keys[j]])
        print(f"{keys[i]} ~ {keys[j]}: {r.holds} ({r.detail})")
