"""Full analysis of one group, as a JSON-ready report."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .errors import BudgetExceeded, NotPGroup
from .morphisms import DEFAULT_BUDGET, automorphisms, is_central_auto, is_e_group, is_p_epsilon
from .structure import (
    center,
    derived,
    exponent,
    frattini,
    gamma3,
    is_2_engel,
    min_generators,
    nilpotency_class,
    omega,
    power_subgroup,
    prime_of,
    second_center,
)

SCHEMA = 1


@dataclass
class AnalysisReport:
    schema: int
    group: str
    order: int
    exponent: int
    nilpotency_class: object
    d: int | None
    is_abelian: bool
    is_2_engel: dict
    is_E: dict
    is_p_epsilon: dict | None
    subgroup_orders: dict
    aut: dict
    budget: dict
    timing: dict = field(default_factory=dict)

    def to_dict(self, timing=False):
        d = asdict(self)
        if not timing:
            d.pop("timing")
        return d


def _word(G, x):
    return str(G.word(int(x)))


def analyze(G, budget: int = DEFAULT_BUDGET, threads: int = 1, fail_fast: bool = False,
            hints=(), with_aut: bool = True) -> AnalysisReport:
    clock = {}
    t0 = time.perf_counter()
    try:
        p = prime_of(G)
    except NotPGroup:
        p = None
    engel = is_2_engel(G)
    engel_d = {"holds": engel.holds}
    if engel.witness:
        x, y = engel.witness
        engel_d["witness"] = {"x": _word(G, x), "y": _word(G, y)}
    sub = {
        "Z": center(G).order,
        "Z2": second_center(G).order,
        "derived": derived(G).order,
        "gamma3": gamma3(G).order,
    }
    pe_d = None
    d = None
    if p is not None:
        pe = is_p_epsilon(G, p)
        r = pe.data["r"]
        pe_d = {"holds": pe.holds, "p": p, "r": r, "detail": pe.detail}
        sub["Phi"] = frattini(G).order
        for n in range(1, max(r, 1) + 1):
            sub[f"Omega_{n}"] = omega(G, p, n).order
        sub[f"G^{p}"] = power_subgroup(G, p).order
        sub[f"G^{p ** r}"] = power_subgroup(G, p ** r).order
        d = min_generators(G, p)
    clock["structure"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    e = is_e_group(G, budget, fail_fast=fail_fast, hints=hints, workers=threads)
    e_d = {"holds": e.holds, "exhausted": e.exhausted, "endo_count": e.endo_count, "nodes": e.nodes}
    if e.witness:
        phi, x = e.witness
        e_d["witness"] = {
            "gen_images": {s: _word(G, v) for s, v in zip(G.symbols, phi.gen_images)},
            "x": _word(G, x),
            "commutator": _word(G, G.comm(x, phi(x))),
            "violating_generators": [s for s, g in zip(G.symbols, G.generators) if G.comm(g, phi(g)) != 0],
        }
    clock["e_group"] = time.perf_counter() - t1

    t2 = time.perf_counter()
    aut_d = {"computed": False}
    if with_aut:
        try:
            auts = automorphisms(G, budget)
            from .morphisms import aut_is_abelian

            aut_d = {
                "computed": True,
                "count": len(auts),
                "abelian": aut_is_abelian(G, budget).holds,
                "all_central": all(is_central_auto(G, f) for f in auts),
            }
        except BudgetExceeded as exc:
            aut_d = {"computed": False, "reason": str(exc)}
    clock["aut"] = time.perf_counter() - t2
    return AnalysisReport(
        schema=SCHEMA,
        group=G.name,
        order=G.order,
        exponent=exponent(G),
        nilpotency_class=nilpotency_class(G),
        d=d,
        is_abelian=G.is_abelian(),
        is_2_engel=engel_d,
        is_E=e_d,
        is_p_epsilon=pe_d,
        subgroup_orders=sub,
        aut=aut_d,
        budget={"limit": budget, "exhausted": e.exhausted and (aut_d["computed"] or not with_aut)},
        timing={k: round(v, 3) for k, v in clock.items()},
    )


def format_text(rep: AnalysisReport) -> str:
    lines = [
        f"group            {rep.group}",
        f"order            {rep.order}",
        f"exponent         {rep.exponent}",
        f"class            {rep.nilpotency_class}",
        f"d(G)             {rep.d}",
        f"abelian          {rep.is_abelian}",
        f"2-Engel          {rep.is_2_engel['holds']}",
    ]
    if rep.is_p_epsilon:
        pe = rep.is_p_epsilon
        lines.append(f"p-epsilon        {pe['holds']} (p={pe['p']}, r={pe['r']})")
    e = rep.is_E
    state = "true" if e["holds"] else ("false" if e["exhausted"] else "unknown (budget)")
    lines.append(f"E-group          {state}  [{e['endo_count']} endomorphisms, {e['nodes']} nodes]")
    if "witness" in e:
        w = e["witness"]
        images = ", ".join(f"{k} -> {v}" for k, v in w["gen_images"].items())
        lines.append(f"  witness        phi: {images}")
        lines.append(f"                 x = {w['x']}, [x, phi(x)] = {w['commutator']}")
        lines.append(f"                 generators not commuting with their image: {' '.join(w['violating_generators'])}")
    for k, v in rep.subgroup_orders.items():
        lines.append(f"|{k}|".ljust(17) + str(v))
    if rep.aut.get("computed"):
        a = rep.aut
        lines.append(f"Aut              order {a['count']}, abelian {a['abelian']}, all central {a['all_central']}")
    if rep.timing:
        lines.append("timing           " + ", ".join(f"{k} {v}s" for k, v in rep.timing.items()))
    return "\n".join(lines)
