"""Identities that must hold on every finite group of the right kind.

``invariant_suite(G)`` runs every applicable check and returns
``(name, holds, detail)`` triples; checks whose hypotheses fail are skipped
rather than reported.
"""

from __future__ import annotations

import numpy as np

from .engine import quotient
from .morphisms import is_p_epsilon
from .structure import (
    center,
    closure,
    commutator_subgroup,
    derived,
    exponent,
    frattini,
    gamma3,
    is_2_engel,
    min_generators,
    nilpotency_class,
    omega,
    omega_set,
    power_set,
    power_subgroup,
    prime_of,
    regular_power_identity,
    second_center,
)

__all__ = ["invariant_suite", "has_abelian_direct_factor", "is_p_group"]


def is_p_group(G):
    try:
        prime_of(G)
        return True
    except Exception:
        return False


def _is_pure_cyclic(Q, a, p):
    """Is <a> a direct summand of the abelian p-group Q?  (<a> meets Q^(p^j)
    exactly in <a^(p^j)> for every j.)"""
    k = Q.element_order(a)
    cyc = [Q.pow(a, i) for i in range(k)]
    j, q = 1, p
    while q < k:
        powers = set(Q.power_map(q).tolist())
        expect = {Q.pow(a, i * q) for i in range(k)}
        if {c for c in cyc if c in powers} != expect:
            return False
        j, q = j + 1, q * p
    return True


def has_abelian_direct_factor(G) -> bool:
    """True when G = M x A with A abelian and nontrivial.

    For a p-group this happens iff some central z != 1 has <z> meeting G'
    trivially and <z G'> a direct summand of G/G' (then the retraction onto
    <z> splits it off).
    """
    if G.order == 1:
        return False
    p = prime_of(G)
    Z, D = center(G), derived(G)
    Q, proj = quotient(G, D)
    for z in Z.elements()[1:]:
        cz = closure(G, [int(z)])
        if (cz.members & D.members).sum() != 1:
            continue
        if _is_pure_cyclic(Q, int(proj.table[z]), p):
            return True
    return False


def invariant_suite(G, e_verdict=None) -> list:
    out = []

    def check(name, ok, detail=""):
        out.append((name, bool(ok), detail))

    Z, Z2, D = center(G), second_center(G), derived(G)
    check("Z <= Z2", Z <= Z2)
    check("gamma3 = [G', G]", gamma3(G) == commutator_subgroup(G, D, None))
    engel = is_2_engel(G).holds
    if e_verdict is not None and e_verdict.exhausted:
        check("E-group => 2-Engel", not e_verdict.holds or engel)
    if engel:
        cl = nilpotency_class(G)
        check("2-Engel => class <= 3", cl != "not nilpotent" and cl <= 3, f"class {cl}")
        check("2-Engel => exp(gamma3) | 3", 3 % exponent(gamma3(G)) == 0)
        g3 = power_subgroup(G, 3)
        check("2-Engel => G^3 G' <= Z2", closure(G, g3.gens + D.gens) <= Z2)
    if not is_p_group(G) or G.order == 1:
        return out
    p = prime_of(G)
    Phi = frattini(G)
    check("G' <= Phi", D <= Phi)
    if engel and p == 3:
        check("2-Engel 3-group => Phi <= Z2", Phi <= Z2)
    if engel:
        Q2, _ = quotient(G, Z2)
        if Q2.order == 1 or min_generators(Q2, p) <= 2:
            check("2-Engel, d(G/Z2) <= 2 => class <= 2", nilpotency_class(G) <= 2)
    if engel and p > 2:
        q = p
        while q <= exponent(G):
            check(f"G^{q} is the set of {q}-th powers", (power_set(G, q) == power_subgroup(G, q).members).all())
            m = int(round(np.log(q) / np.log(p)))
            check(f"regular power identity m={m}", regular_power_identity(G, p, m).holds)
            q *= p
    pe = is_p_epsilon(G, p)
    if e_verdict is not None and e_verdict.exhausted and e_verdict.holds:
        check("pE => p-epsilon", pe.holds)
    if pe.holds:
        r = pe.data["r"]
        QZ, _ = quotient(G, Z)
        check("p-epsilon: exp(G') = exp(G/Z)", exponent(D) == exponent(QZ))
        check("p-epsilon: exp(G) = p^r exp(G')", exponent(G) == p ** r * exponent(D))
        pr = p ** r
        lhs = power_subgroup(G, pr, within=Z2)
        check("p-epsilon: Z2^(p^r) = Z n G^(p^r)", lhs == (Z & power_subgroup(G, pr)))
        d = min_generators(G, p)
        if d == 2:
            check("2-generator p-epsilon => abelian or Q8", G.is_abelian() or (G.order == 8 and p == 2))
        if d == 3:
            check("3-generator p-epsilon => class <= 2", nilpotency_class(G) <= 2)
    om1 = omega(G, p, 1)
    if om1 <= Z and not has_abelian_direct_factor(G):
        check("Omega_1 <= Z, no abelian factor => Omega_1 <= Phi", om1 <= Phi)
    if nilpotency_class(G) == 3:
        idx = D.order // (D & Z).order
        if idx == p:
            check("class 3, |G':G'nZ| = p => |G:Z2| = p^2", Z2.index() == p * p, f"|G:Z2| = {Z2.index()}")
    return out
