import numpy as np
import pytest

from egl import catalog
from egl.catalog import ThreeGenParams, faudree, parse_props, threegen_epsilon, threegen_presentation
from egl.engine import materialize
from egl.errors import InvalidMatrix, OrderLimitExceeded, UnknownKey
from egl.morphisms import (
    are_isomorphic,
    aut_is_abelian,
    automorphisms,
    is_central_auto,
    is_e_group,
    is_p_epsilon,
    non_auto_endos_land_in_center,
)
from egl.structure import (
    center,
    derived,
    exponent,
    is_2_engel,
    min_generators,
    nilpotency_class,
    omega,
    power_set,
    power_subgroup,
)

from conftest import group

I3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
SHEAR = ((1, 1, 0), (0, 1, 0), (0, 0, 1))


def _computed(G, prop):
    if prop == "order":
        return G.order
    if prop == "exponent":
        return exponent(G)
    if prop == "class":
        return nilpotency_class(G)
    if prop == "d":
        return min_generators(G)
    if prop == "is_abelian":
        return G.is_abelian()
    if prop == "is_2_engel":
        return is_2_engel(G).holds
    if prop == "is_p_epsilon":
        return is_p_epsilon(G).holds
    if prop == "r":
        return is_p_epsilon(G).data["r"]
    if prop == "is_e_group":
        return is_e_group(G, fail_fast=True).holds
    if prop == "aut_abelian":
        return aut_is_abelian(G).holds
    if prop == "aut_order":
        return len(automorphisms(G))
    if prop == "all_auts_central":
        return all(is_central_auto(G, f) for f in automorphisms(G))
    if prop == "non_auto_endos_central":
        return non_auto_endos_land_in_center(G).holds
    if prop == "power2_is_derived":
        D = derived(G)
        return D == center(G) == power_subgroup(G, 2) == omega(G, 2, 1) and bool((power_set(G, 2) == D.members).all())
    if prop == "z2_index":
        from egl.structure import second_center
        return second_center(G).index()
    raise KeyError(prop)


DATA = ["q8", "d8", "d16", "remark22", "lep5_1", "lep5_2", "lep5_3", "lep5_4", "lep5_5", "e128_2"]


@pytest.mark.parametrize("key", DATA)
def test_expected_properties(key):
    entry = catalog.named(key)
    G = group(key)
    assert entry.expected, key
    for prop, want in entry.expected.items():
        assert _computed(G, prop) == want, (key, prop)


def test_every_data_entry_has_order_hint():
    for key in ["q8", "d8", "d16", "remark22", "lep5_4", "lep5_5", "e128_1", "e128_2", "e128_3"]:
        entry = catalog.named(key)
        assert entry.presentation.order_hint == entry.expected["order"]


def test_unknown_key():
    with pytest.raises(UnknownKey):
        catalog.named("m11")
    with pytest.raises(KeyError):
        catalog.named("nope")


def test_cyclic_entries():
    G = catalog.named("cyclic_12").group()
    assert G.order == 12 and exponent(G) == 12


def test_parse_props():
    props = parse_props("a = 3  # three\nb = true\n# only a comment\nc = x y\n\n")
    assert props == {"a": 3, "b": True, "c": "x y"}


def test_faudree_presentation():
    p = faudree(3)
    assert list(p.generators) == ["a1", "a2", "a3", "a4"]
    assert p.order_hint == 3 ** 8
    G = group("faudree_3")
    assert G.order == 6561
    assert nilpotency_class(G) == 2


def test_lep5_products():
    assert group("lep5_2").order == 16
    assert group("lep5_3").order == 32
    assert group("lep5_1").order == 8


def test_threegen_params_validation():
    with pytest.raises(InvalidMatrix):
        ThreeGenParams(3, 1, 1, ((1, 0, 0), (0, 3, 0), (0, 0, 1)))
    with pytest.raises(ValueError):
        ThreeGenParams(2, 1, 1, I3)
    with pytest.raises(ValueError):
        ThreeGenParams(3, 1, 2, I3)
    with pytest.raises(ValueError):
        ThreeGenParams(9, 1, 1, I3)
    P = ThreeGenParams(3, 1, 1, I3)
    assert P.order == 729 and P.modulus == 9


def _formula(params, x, y):
    """The product rule, written out directly on triples."""
    p, r, t = params.p, params.r, params.t
    m = p ** (r + t)
    T = params.T
    (i, j, k), (i2, j2, k2) = x, y
    pr = p ** r
    out = []
    base = (i + i2, j + j2, k + k2)
    for col in range(3):
        v = base[col] - i2 * j * pr * T[0][col] - i2 * k * pr * T[1][col] - j2 * k * pr * T[2][col]
        out.append(v % m)
    return tuple(out)


@pytest.mark.parametrize("T", [I3, SHEAR])
def test_threegen_table_matches_formula(T):
    params = ThreeGenParams(3, 1, 1, T)
    G = threegen_epsilon(params)
    m = params.modulus
    rng = np.random.default_rng(5)
    for _ in range(300):
        x, y = rng.integers(0, G.order, size=2)
        tx = (x % m, (x // m) % m, x // (m * m))
        ty = (y % m, (y // m) % m, y // (m * m))
        z = _formula(params, tx, ty)
        assert G.mul(int(x), int(y)) == z[0] + z[1] * m + z[2] * m * m
    assert G.generators == [1, m, m * m]


@pytest.mark.parametrize("T", [I3, SHEAR])
def test_threegen_small_grid(T):
    params = ThreeGenParams(3, 1, 1, T)
    G = threegen_epsilon(params)
    G.check_axioms(full_limit=0, samples=20000)
    assert G.order == 729
    assert nilpotency_class(G) == 2
    pe = is_p_epsilon(G, 3)
    assert pe.holds and pe.data["r"] == 1
    Z, D = center(G), derived(G)
    assert Z == omega(G, 3, 1) == power_subgroup(G, 3)
    assert D == power_subgroup(G, 3)
    assert exponent(G) == 9 == 3 * exponent(D)
    H = materialize(threegen_presentation(params))
    assert H.order == 729
    assert are_isomorphic(H, G).holds
    v = is_e_group(G, fail_fast=True)
    assert not v.holds and v.recheck(G)


def test_threegen_presentation_text():
    p = threegen_presentation(ThreeGenParams(3, 1, 1, SHEAR))
    assert list(p.generators) == ["x", "y", "z"]
    assert p.order_hint == 729


def test_threegen_cap():
    with pytest.raises(OrderLimitExceeded):
        threegen_epsilon(ThreeGenParams(3, 2, 1, I3), cap=1000)
