"""Registry of checkable claims about the catalog groups.

``run_suite("core")`` evaluates every core claim; ``"extended"`` adds the
searches that can run for hours.  A claim returns ``(ok, detail)`` where
``ok`` is True, False or None (inconclusive: budget ran out).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .catalog import ThreeGenParams, named, threegen_epsilon, threegen_presentation
from .engine import materialize
from .errors import BudgetExceeded
from .invariants import invariant_suite
from .morphisms import (
    DEFAULT_BUDGET,
    are_isomorphic,
    aut_is_abelian,
    automorphisms,
    hom_from_images,
    is_central_auto,
    is_e_group,
    is_p_epsilon,
    non_auto_endos_land_in_center,
)
from .presentation import eval_word, parse_word
from .structure import (
    center,
    derived,
    exponent,
    is_2_engel,
    min_generators,
    nilpotency_class,
    omega,
    omega_set,
    power_set,
    power_subgroup,
    regular_power_identity,
    second_center,
)

__all__ = ["Claim", "ClaimResult", "claims", "run_suite", "faudree_swap_images", "GRID"]

LEP5 = ["lep5_1", "lep5_2", "lep5_3", "lep5_4", "lep5_5"]
E128 = ["e128_1", "e128_2", "e128_3"]
NONDIAG = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
IDENT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
GRID = [ThreeGenParams(3, r, t, T) for (r, t) in ((1, 1), (2, 1)) for T in (IDENT, NONDIAG)]


@dataclass
class Claim:
    id: str
    about: str
    suite: str
    run: Callable


@dataclass
class ClaimResult:
    id: str
    about: str
    verdict: str
    detail: str
    seconds: float

    def as_dict(self, timing=False):
        d = {"id": self.id, "about": self.about, "verdict": self.verdict, "detail": self.detail}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


_GROUPS: dict = {}


def _threegen(params):
    if params not in _GROUPS:
        _GROUPS[params] = threegen_epsilon(params)
    return _GROUPS[params]


def faudree_swap_images(G):
    """Images of a1..a4 under a1 -> a1^-1 a2 a4, a2 -> a3, a3 -> a4, a4 -> a1 a4."""
    A = dict(zip(G.symbols, G.generators))
    return [eval_word(parse_word(w), A, G) for w in ("a1^-1 a2 a4", "a3", "a4", "a1 a4")]


def _g(key):
    return named(key).group()


def _all(items):
    bad = [name for name, ok in items if not ok]
    return (not bad, "all hold" if not bad else "failed: " + ", ".join(bad))


# -- claim bodies ------------------------------------------------------------

def _q8_core(budget):
    G = _g("q8")
    e = is_e_group(G, budget)
    pe = is_p_epsilon(G, 2)
    a, b = G.generators
    swap = hom_from_images(G, G, (b, a))
    return _all([
        ("order 8", G.order == 8),
        ("2-Engel", is_2_engel(G).holds),
        ("p-epsilon r=1", pe.holds and pe.data["r"] == 1),
        ("not E with rechecked witness", not e.holds and e.exhausted and e.recheck(G)),
        ("swap a<->b is an automorphism", swap is not None and swap.is_bijective),
        ("[a,b] != 1", G.comm(a, b) != 0),
        ("Aut non-abelian", not aut_is_abelian(G, budget).holds),
    ])


def _d8_core(budget):
    G = _g("d8")
    pe = is_p_epsilon(G, 2)
    x = pe.witness
    ok = (not pe.holds and x is not None and G.element_order(x) == 2 and not center(G).members[x])
    return ok, f"witness involution {x} outside Z(G)"


def _lep5_core(budget):
    items = []
    for k in LEP5:
        G = _g(k)
        e = is_e_group(G, budget, fail_fast=True)
        items.append((f"{k} non-abelian", not G.is_abelian()))
        items.append((f"{k} 2-epsilon", is_p_epsilon(G, 2).holds))
        items.append((f"{k} not E", not e.holds and e.recheck(G)))
    return _all(items)


def _e128_structure(key):
    def run(budget):
        G = _g(key)
        Z, D = center(G), derived(G)
        sq = power_set(G, 2)
        return _all([
            ("order 128", G.order == 128),
            ("G' = Z", D == Z),
            ("G^2 = Z", power_subgroup(G, 2) == Z),
            ("Omega_1 = Z", omega(G, 2, 1) == Z),
            ("{g^2} = Z", (sq == Z.members).all()),
            ("Omega_1 element set = Z", (omega_set(G, 2, 1) == Z.members).all()),
            ("exp 4", exponent(G) == 4),
            ("d(G) = 4", min_generators(G, 2) == 4),
        ])
    return run


def _e128_endos(key):
    def run(budget):
        G = _g(key)
        e = is_e_group(G, budget)
        if not e.exhausted:
            return None, f"budget hit after {e.nodes} nodes"
        aut = aut_is_abelian(G, budget)
        central = all(is_central_auto(G, f) for f in automorphisms(G, budget))
        nae = non_auto_endos_land_in_center(G, budget)
        ok, detail = _all([
            ("E-group, search exhausted", e.holds and e.exhausted),
            ("Aut abelian", aut.holds),
            ("every automorphism central", central),
            ("non-bijective endomorphisms land in Z", nae.holds),
        ])
        return ok, f"{detail}; {e.endo_count} endomorphisms, |Aut| = {aut.data['count']}, {e.nodes} nodes"
    return run


def _e128_noniso(budget):
    items = []
    for a, b in itertools.combinations(E128, 2):
        res = are_isomorphic(_g(a), _g(b), budget)
        if res.data.get("exhausted") is False:
            return None, f"{a} vs {b}: budget exhausted"
        items.append((f"{a} !~ {b}", not res.holds))
    return _all(items)


def _faudree3_structure(budget):
    G = _g("faudree_3")
    pe = is_p_epsilon(G, 3)
    r = pe.data["r"]
    Z, Z2, D = center(G), second_center(G), derived(G)
    from .engine import quotient

    QZ, _ = quotient(G, Z)
    pr = 3 ** r
    return _all([
        ("order 3^8", G.order == 3 ** 8),
        ("class 2", nilpotency_class(G) == 2),
        ("2-Engel", is_2_engel(G).holds),
        ("3-epsilon with r=1", pe.holds and r == 1),
        ("exp 9", exponent(G) == 9),
        ("regular power identity m=1", regular_power_identity(G, 3, 1, trials=1000).holds),
        ("regular power identity m=2", regular_power_identity(G, 3, 2, trials=1000).holds),
        ("exp(G') = exp(G/Z)", exponent(D) == exponent(QZ)),
        ("exp(G) = p^r exp(G')", exponent(G) == pr * exponent(D)),
        ("Z2^(p^r) = Z n G^(p^r)", power_subgroup(G, pr, within=Z2) == (Z & power_subgroup(G, pr))),
    ])


def _faudree2_counterexample(budget):
    G = _g("faudree_2")
    imgs = faudree_swap_images(G)
    alpha = hom_from_images(G, G, imgs)
    a3 = G.generators[2]
    e = is_e_group(G, budget, fail_fast=True)
    hinted = is_e_group(G, budget, hints=[(imgs, a3)])
    return _all([
        ("order 2^8", G.order == 256),
        ("swap map is an endomorphism", alpha is not None and alpha.is_homomorphism()),
        ("[a3^alpha, a3] = [a4, a3] != 1", alpha is not None and alpha(a3) == G.generators[3] and G.comm(alpha(a3), a3) != 0),
        ("fail-fast search finds a non-E witness", not e.holds and e.recheck(G)),
        ("hinted search reports x = a3", not hinted.holds and hinted.witness[1] == a3 and hinted.recheck(G)),
    ])


def _grid_point(params):
    def run(budget):
        G = _threegen(params)
        p, r, t = params.p, params.r, params.t
        pe = is_p_epsilon(G, p)
        Z, D = center(G), derived(G)
        items = [
            ("order p^(3(r+t))", G.order == p ** (3 * (r + t))),
            ("class exactly 2", nilpotency_class(G) == 2),
            ("p-epsilon", pe.holds and pe.data["r"] == r),
            ("Z = Omega_r", Z == omega(G, p, r)),
            ("Z = G^(p^t)", Z == power_subgroup(G, p ** t)),
            ("G' = Omega_t", D == omega(G, p, t)),
            ("G' = G^(p^r)", D == power_subgroup(G, p ** r)),
            ("exp G = p^(r+t)", exponent(G) == p ** (r + t)),
            ("presentation attached and verified", G.source is not None),
        ]
        if (r, t) == (1, 1):
            H = materialize(threegen_presentation(params))
            iso = are_isomorphic(H, G, budget)
            items.append(("presentation route ~ formula route", iso.holds))
            e = is_e_group(G, budget, fail_fast=True)
            items.append(("not an E-group", not e.holds and e.recheck(G)))
        return _all(items)
    return run


def _oracle_equivalence(budget):
    from . import oracle
    from .morphisms import homomorphisms
    from .structure import frattini

    items = []
    keys = ["q8", "d8", "d16", "lep5_2", "cyclic_4", "cyclic_12"]
    for k in keys:
        G = _g(k)
        subs = oracle.all_subgroups(G)
        as_set = lambda H: frozenset(H.elements().tolist())  # noqa: E731
        items.append((f"{k} center", as_set(center(G)) == oracle.brute_center(G)))
        items.append((f"{k} derived", as_set(derived(G)) == oracle.brute_derived(G, subs)))
        try:
            from .structure import prime_of

            p = prime_of(G)
        except Exception:
            p = None
        if p:
            items.append((f"{k} frattini", as_set(frattini(G)) == oracle.brute_frattini(G, subs)))
            for n in (1, 2):
                items.append((f"{k} omega_{n}", as_set(omega(G, p, n)) == oracle.brute_omega(G, subs, p, n)))
            items.append((f"{k} G^p", as_set(power_subgroup(G, p)) == oracle.brute_power(G, subs, p)))
    for a, b in [("q8", "q8"), ("d8", "q8"), ("cyclic_4", "d8"), ("d8", "cyclic_4")]:
        G, H = _g(a), _g(b)
        fast = [f.gen_images for f in homomorphisms(G, H, budget)]
        items.append((f"hom({a}, {b})", fast == oracle.brute_homs(G, H)))
    return _all(items)


def _invariants(budget):
    items = []
    keys = ["q8", "d8", "d16", "remark22"] + LEP5 + E128 + ["faudree_2", "faudree_3", "cyclic_12"]
    groups = [(k, _g(k)) for k in keys] + [(p.key, _threegen(p)) for p in GRID[:2]]
    for k, G in groups:
        e = is_e_group(G, budget) if G.order <= 128 else None
        for name, ok, _ in invariant_suite(G, e):
            items.append((f"{k}: {name}", ok))
    D16 = _g("d16")
    items.append(("d16: |G:Z2| = 4", second_center(D16).index() == 4))
    return _all(items)


def _faudree3_e(budget):
    G = _g("faudree_3")
    e = is_e_group(G, budget)
    if not e.exhausted:
        return None, f"budget hit after {e.nodes} nodes, {e.endo_count} endomorphisms checked"
    return e.holds, f"{e.endo_count} endomorphisms, {e.nodes} nodes"


def _grid_21_e(budget):
    out = []
    for params in GRID[2:]:
        e = is_e_group(_threegen(params), budget, fail_fast=True)
        status = "E" if e.holds else ("not E" if e.exhausted else "inconclusive")
        out.append(f"{params.key}: {status} ({e.nodes} nodes)")
    # recorded, not asserted: the three-generator question is open
    return True, "; ".join(out)


def claims() -> list:
    out = [
        Claim("q8.core", "Q8 is 2-Engel and 2-epsilon (r=1), not an E-group, with non-abelian Aut", "core", _q8_core),
        Claim("d8.not_epsilon", "D8 is not 2-epsilon: a non-central involution", "core", _d8_core),
        Claim("lep5.five_groups", "the five non-abelian 2-epsilon groups of order <= 32 are not E-groups", "core", _lep5_core),
    ]
    for k in E128:
        out.append(Claim(f"{k}.structure", "G' = Z = G^2 = Omega_1 = {g^2}, exp 4, d = 4, order 128", "core", _e128_structure(k)))
        out.append(Claim(f"{k}.endomorphisms", "E-group; Aut abelian and central; non-automorphisms map into Z", "core", _e128_endos(k)))
    out += [
        Claim("e128.pairwise_noniso", "the three order-128 E-groups are pairwise non-isomorphic", "core", _e128_noniso),
        Claim("faudree3.structure", "Faudree p=3: order 3^8, class 2, 3-epsilon, power identities", "core", _faudree3_structure),
        Claim("faudree2.counterexample", "Faudree p=2: the swap map is an endomorphism moving a3 to a4", "core", _faudree2_counterexample),
    ]
    for params in GRID:
        out.append(Claim(f"{params.key}.grid", "three-generator class-2 construction: order, p-epsilon, subgroup equalities", "core", _grid_point(params)))
    out += [
        Claim("oracle.equivalence", "fast subgroup and hom routines agree with brute force on small groups", "core", _oracle_equivalence),
        Claim("invariants.all", "invariant suite on every materialized group", "core", _invariants),
        Claim("faudree3.e_group", "Faudree p=3 is an E-group (full endomorphism search)", "extended", _faudree3_e),
        Claim("threegen.order_3_9.e_status", "E-group status of the order 3^9 grid points (recorded only)", "extended", _grid_21_e),
    ]
    return out


def run_suite(suite: str = "core", budget: int | None = None, progress=None, only=None) -> list:
    """Run the claims of ``suite`` ('core' or 'extended', which includes core)."""
    results = []
    for claim in claims():
        if suite == "core" and claim.suite != "core":
            continue
        if only and not any(claim.id.startswith(o) for o in only):
            continue
        b = budget if budget is not None else (DEFAULT_BUDGET if claim.suite == "core" else 10 ** 18)
        start = time.perf_counter()
        try:
            ok, detail = claim.run(b)
        except BudgetExceeded as exc:
            ok, detail = None, str(exc)
        verdict = "pass" if ok else ("inconclusive" if ok is None else "fail")
        res = ClaimResult(claim.id, claim.about, verdict, detail, time.perf_counter() - start)
        results.append(res)
        if progress:
            progress(res)
    return results
