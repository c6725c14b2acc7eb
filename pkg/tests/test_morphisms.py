import itertools

import numpy as np
import pytest

from egl import oracle
from egl.engine import GroupMap, cyclic_group, direct_product, materialize
from egl.errors import BudgetExceeded
from egl.morphisms import (
    are_isomorphic,
    aut_is_abelian,
    automorphisms,
    endomorphisms,
    hom_from_images,
    homomorphisms,
    is_central_auto,
    is_e_group,
    is_p_epsilon,
    non_auto_endos_land_in_center,
)
from egl.presentation import eval_word, parse_word
from egl.structure import center, is_2_engel, omega
from egl.verify import faudree_swap_images

from conftest import group


def _images(maps):
    return [tuple(f.gen_images) for f in maps]


def test_c2_to_c3_trivial_only():
    maps = list(homomorphisms(cyclic_group(2), cyclic_group(3)))
    assert _images(maps) == [(0,)]


def test_q8_endomorphisms_match_brute(q8):
    fast = _images(endomorphisms(q8))
    slow = oracle.brute_homs(q8, q8)
    assert fast == sorted(slow)
    auts = automorphisms(q8)
    assert len(auts) == 24
    assert len(fast) > 24


@pytest.mark.parametrize("src,dst", [("q8", "d8"), ("d8", "q8"), ("d8", "d8"), ("d16", "d8"), ("lep5_1", "cyclic_4")])
def test_homs_match_brute(src, dst):
    G, H = group(src), group(dst)
    fast = list(homomorphisms(G, H))
    assert _images(fast) == sorted(oracle.brute_homs(G, H))
    for f in fast:
        assert f.is_homomorphism()


def test_parallel_matches_serial():
    G = group("lep5_4")
    serial = _images(endomorphisms(G))
    par = _images(homomorphisms(G, G, workers=4))
    assert serial == par


def test_endomorphism_monoid_closed(d8):
    ends = list(endomorphisms(d8))
    keys = set(_images(ends))
    ident = tuple(d8.generators)
    assert ident in keys and tuple(0 for _ in ident) in keys
    for f, g in itertools.product(ends, repeat=2):
        assert tuple(f.compose(g).gen_images) in keys


def test_aut_closed_under_inverse(q8):
    auts = automorphisms(q8)
    keys = set(_images(auts))
    for f in auts:
        inv = np.empty_like(f.table)
        inv[f.table] = np.arange(q8.order, dtype=inv.dtype)
        assert tuple(int(inv[g]) for g in q8.generators) in keys


def test_q8_swap_extends(q8):
    a, b = q8.generators
    f = hom_from_images(q8, q8, (b, a))
    assert f is not None and f.is_bijective
    assert not aut_is_abelian(q8).holds
    assert hom_from_images(q8, q8, (a, 0)) is None


def test_aut_c2():
    C = cyclic_group(2)
    auts = automorphisms(C)
    assert len(auts) == 1 and aut_is_abelian(C).holds


def test_aut_abelian_against_pairwise():
    G = group("e128_1")
    auts = automorphisms(G)
    v = aut_is_abelian(G)
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, len(auts), size=(300, 2)):
        f, g = auts[i], auts[j]
        assert (f.table[g.table] == g.table[f.table]).all() == v.holds or not v.holds
    assert v.holds
    # D16 has non-abelian Aut; the generating-set check must notice
    assert not aut_is_abelian(group("d16")).holds


def test_central_autos():
    G = group("e128_2")
    assert all(is_central_auto(G, f) for f in automorphisms(G))
    q8 = group("q8")
    assert not all(is_central_auto(q8, f) for f in automorphisms(q8))


def test_e_group_q8(q8):
    v = is_e_group(q8)
    assert not v.holds and v.exhausted and v.witness is not None
    assert v.recheck(q8)
    phi, x = v.witness
    assert q8.comm(x, phi(x)) != 0


def test_e_group_abelian():
    v = is_e_group(direct_product(cyclic_group(4), cyclic_group(2)))
    assert v.holds and v.exhausted and v.witness is None


def test_e_group_e128():
    for k in ("e128_1", "e128_3"):
        v = is_e_group(group(k))
        assert v.holds and v.exhausted
        assert v.endo_count == len(list(endomorphisms(group(k))))


def test_e_group_budget():
    v = is_e_group(group("e128_1"), budget=1000)
    assert not v.holds and not v.exhausted and v.witness is None
    with pytest.raises(BudgetExceeded):
        list(endomorphisms(group("e128_1"), budget=1000))


def test_e_implies_2engel_and_epsilon():
    for k in ("q8", "d8", "lep5_2", "e128_1", "e128_2"):
        G = group(k)
        v = is_e_group(G)
        if v.holds:
            assert is_2_engel(G).holds
            assert is_p_epsilon(G, 2).holds


def test_p_epsilon(q8, d8):
    v = is_p_epsilon(q8, 2)
    assert v.holds and v.data["r"] == 1
    w = is_p_epsilon(d8, 2)
    assert not w.holds
    x = w.witness
    assert x in omega(d8, 2, 1) and x not in center(d8) and d8.element_order(x) == 2


def test_non_auto_endos(q8):
    assert non_auto_endos_land_in_center(cyclic_group(6)).holds
    # Q8 has no C4 quotient, so a non-injective endomorphism has image of
    # order <= 2, which is inside Z.  Brute force agrees.
    v = non_auto_endos_land_in_center(q8)
    Z = oracle.brute_center(q8)
    brute = [f for f in endomorphisms(q8) if not f.is_bijective]
    assert all(set(f.table.tolist()) <= Z for f in brute)
    assert v.holds and v.data["non_bijective"] == len(brute) == 4
    w = non_auto_endos_land_in_center(group("d8"))
    assert not w.holds and not center(group("d8")).members[w.witness.table].all()
    for k in ("e128_1", "e128_2", "e128_3"):
        assert non_auto_endos_land_in_center(group(k)).holds


def test_isomorphism(q8, d8):
    v = are_isomorphic(q8, q8)
    assert v.holds and v.witness.is_bijective
    w = are_isomorphic(q8, d8)
    assert not w.holds and "order_histogram" in w.detail
    for a, b in itertools.combinations(("e128_1", "e128_2", "e128_3"), 2):
        assert not are_isomorphic(group(a), group(b)).holds


def test_isomorphism_search_path():
    # lep5_1 is Q8 under another key, and a rebuilt product must match lep5_2
    G = group("lep5_2")
    H = materialize(G.source)
    v = are_isomorphic(G, H)
    assert v.holds and v.witness.is_homomorphism() and v.witness.is_bijective


def test_faudree_swap_map():
    G = group("faudree_2")
    imgs = faudree_swap_images(G)
    A = dict(zip(G.symbols, G.generators))
    expected = [eval_word(parse_word(w), A, G) for w in ("a1^-1 a2 a4", "a3", "a4", "a1 a4")]
    assert imgs == expected
    alpha = hom_from_images(G, G, imgs)
    assert alpha is not None and alpha.is_homomorphism()
    a3, a4 = G.generators[2], G.generators[3]
    assert alpha(a3) == a4 and G.comm(alpha(a3), a3) != 0
    v = is_e_group(G, hints=[(imgs, a3)])
    assert not v.holds and v.witness[1] == a3 and v.recheck(G)


def test_fail_fast_finds_counterexample():
    G = group("faudree_2")
    v = is_e_group(G, budget=10 ** 8, fail_fast=True)
    assert not v.holds and v.exhausted and v.recheck(G)


def test_groupmap_compose_and_kernel(q8):
    f = next(f for f in endomorphisms(q8) if not f.is_bijective and f.image_size > 1)
    K = f.kernel_mask()
    assert K.sum() * f.image_size == q8.order
    g = f.compose(f)
    assert g.is_homomorphism()
