import numpy as np
import pytest

from egl import oracle
from egl.engine import cyclic_group, direct_product, quotient
from egl.errors import NotPGroup, PreconditionViolated
from egl.invariants import has_abelian_direct_factor, invariant_suite
from egl.structure import (
    center,
    centralizer,
    closure,
    commutator_subgroup,
    derived,
    exponent,
    frattini,
    gamma3,
    is_2_engel,
    lower_central_series,
    min_generators,
    nilpotency_class,
    normal_closure,
    omega,
    omega_set,
    power_set,
    power_subgroup,
    regular_power_identity,
    second_center,
    trivial,
    whole,
)

from conftest import group

SMALL = ["q8", "d8", "d16", "lep5_1", "lep5_2", "cyclic_8"]


def _set(H):
    return frozenset(H.elements().tolist())


def test_closure_basics(q8):
    assert closure(q8, []).order == 1
    a = q8.generators[0]
    assert closure(q8, [a]).order == 4
    assert closure(q8, q8.generators) == whole(q8)
    H = closure(q8, [a])
    H.check()
    assert H.is_normal()


def test_centers(q8):
    C = cyclic_group(10)
    assert center(C) == whole(C)
    Z = center(q8)
    assert Z.order == 2
    a = q8.generators[0]
    assert _set(Z) == {0, q8.pow(a, 2)}
    assert centralizer(q8, whole(q8)) == Z
    assert centralizer(q8, [a]).order == 4


def test_e128_center_is_derived():
    for k in ("e128_1", "e128_2", "e128_3"):
        G = group(k)
        Z = center(G)
        assert Z.order == 8
        assert Z == derived(G)
        # brute-force center
        assert _set(Z) == oracle.brute_center(G)


def test_derived_series(q8, d16):
    assert derived(cyclic_group(7)).order == 1
    assert gamma3(q8).order == 1
    assert nilpotency_class(q8) == 2
    rep = lower_central_series(d16)
    assert [H.order for H in rep.lower_central] == [16, 4, 2, 1]
    assert rep.nilpotency_class == 3 == nilpotency_class(d16)
    assert nilpotency_class(cyclic_group(5)) == 1


def test_not_nilpotent():
    # S3 = <a, b | a^3, b^2, (ab)^2>
    from egl.engine import materialize
    from egl.presentation import parse_presentation
    S3 = materialize(parse_presentation("gen a b\nrel a^3\nrel b^2\nrel (a b)^2"))
    assert S3.order == 6
    assert nilpotency_class(S3) == "not nilpotent"
    with pytest.raises(NotPGroup):
        frattini(S3)
    with pytest.raises(NotPGroup):
        min_generators(S3)


def test_d16_class_three_index(d16):
    Z, Z2, D = center(d16), second_center(d16), derived(d16)
    assert D.order // (D & Z).order == 2
    assert Z2.index() == 4


def test_second_center_brute(q8, d16):
    for G in (q8, d16):
        Z = oracle.brute_center(G)
        # x in Z2 iff [x, g] in Z for all g
        z2 = {x for x in range(G.order) if all(G.comm(x, g) in Z for g in range(G.order))}
        assert _set(second_center(G)) == z2


def test_power_subgroups(q8):
    assert power_subgroup(q8, 1) == whole(q8)
    for k in ("e128_1", "e128_2", "e128_3"):
        G = group(k)
        P = power_subgroup(G, 2)
        assert P == derived(G) == center(G) == omega(G, 2, 1)
        assert (power_set(G, 2) == P.members).all()
        assert (omega_set(G, 2, 1) == P.members).all()


def test_power_set_is_subgroup_for_2engel_3group():
    G = group("faudree_3")
    for q in (3, 9):
        assert (power_set(G, q) == power_subgroup(G, q).members).all()


def test_omega(q8, d8):
    assert omega(q8, 2, 1) == center(q8)
    assert not omega(d8, 2, 1) <= center(d8)
    assert omega(q8, 2, 5) == whole(q8)
    assert omega(q8, 2, 0).order == 1
    with pytest.raises(NotPGroup):
        omega(cyclic_group(6), 2, 1)


def test_frattini(q8):
    K = direct_product(cyclic_group(2), cyclic_group(2))
    assert frattini(K).order == 1
    assert frattini(q8) == center(q8)
    assert frattini(q8).index() == 4
    assert min_generators(q8) == 2
    assert min_generators(K) == 2
    assert exponent(cyclic_group(12)) == 12


def test_e128_invariants():
    for k in ("e128_1", "e128_2", "e128_3"):
        G = group(k)
        assert min_generators(G) == 4 and exponent(G) == 4


def test_faudree3_exponent():
    G = group("faudree_3")
    assert exponent(G) == 9
    assert frattini(G) <= second_center(G)


def test_2engel(q8, d16):
    assert is_2_engel(cyclic_group(9)).holds
    assert is_2_engel(q8).holds
    v = is_2_engel(d16)
    assert not v.holds
    x, y = v.witness
    assert d16.comm(d16.comm(x, y), y) != 0
    # brute force agrees, and the witness is the lowest failing pair
    n = d16.order
    first = next((x, y) for x in range(n) for y in range(n) if d16.comm(d16.comm(x, y), y) != 0)
    assert v.witness == first


def test_regular_power_identity():
    G = group("faudree_3")
    for m in (1, 2):
        assert regular_power_identity(G, 3, m, trials=1000).holds
    A = cyclic_group(27)
    for m in (1, 2, 3):
        assert regular_power_identity(A, 3, m).holds
    with pytest.raises(PreconditionViolated):
        regular_power_identity(group("q8"), 2, 1)


def test_regular_power_identity_inverse_pair():
    G = group("faudree_3")
    a = G.generators[0]
    b = G.inv(a)
    q = 3
    assert G.mul(G.pow(a, q), G.pow(b, q)) == 0 == G.pow(G.mul(a, b), q)


def test_commutator_subgroup_generic(d16):
    D = derived(d16)
    assert commutator_subgroup(d16, whole(d16), whole(d16)) == D
    assert commutator_subgroup(d16, D, whole(d16)) == gamma3(d16)
    assert normal_closure(d16, [d16.generators[1]]).order == 8


@pytest.mark.parametrize("key", SMALL)
def test_oracle_equivalence(key):
    G = group(key)
    subs = oracle.all_subgroups(G)
    assert _set(center(G)) == oracle.brute_center(G)
    assert _set(derived(G)) == oracle.brute_derived(G, subs)
    p = 2
    for n in (1, 2, 3):
        assert _set(omega(G, p, n)) == oracle.brute_omega(G, subs, p, n)
        assert _set(power_subgroup(G, p ** n)) == oracle.brute_power(G, subs, p ** n)
    assert _set(frattini(G)) == oracle.brute_frattini(G, subs)
    # every subgroup returned is closed and has order dividing |G|
    for H in (center(G), derived(G), frattini(G), second_center(G)):
        H.check()
        assert G.order % H.order == 0


def test_frattini_is_intersection_of_maximals_order_32():
    G = group("lep5_4")
    subs = oracle.all_subgroups(G)
    assert _set(frattini(G)) == oracle.brute_frattini(G, subs)


def test_abelian_direct_factor():
    assert not has_abelian_direct_factor(group("q8"))
    assert has_abelian_direct_factor(group("lep5_2"))
    assert has_abelian_direct_factor(cyclic_group(4))
    assert not has_abelian_direct_factor(group("e128_1"))


@pytest.mark.parametrize("key", ["q8", "d8", "d16", "lep5_2", "lep5_3", "lep5_4", "lep5_5", "remark22",
                                 "e128_1", "e128_2", "e128_3", "faudree_2"])
def test_invariant_suite(key):
    results = invariant_suite(group(key))
    assert results
    bad = [(n, d) for n, ok, d in results if not ok]
    assert not bad


def test_class3_index_check_on_d16(d16):
    names = {n for n, ok, _ in invariant_suite(d16) if ok}
    assert any("|G:Z2| = p^2" in n for n in names)


def test_trivial_group_edge():
    G = cyclic_group(1)
    assert center(G).order == 1
    assert exponent(G) == 1
    assert min_generators(G) == 0
    assert trivial(G) == whole(G)
