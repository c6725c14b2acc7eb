"""Slow reference implementations used to cross-check the fast paths.

Everything here works on Python sets and plain loops over the
multiplication table and never calls into ``structure`` or ``morphisms``.
Only meant for groups of order <= 32 or so.
"""

from __future__ import annotations

from itertools import product


def _mul(G, x, y):
    return int(G.table[x, y])


def naive_closure(G, seed):
    H = {0} | set(seed)
    while True:
        new = {_mul(G, a, b) for a in H for b in H} - H
        if not new:
            return frozenset(H)
        H |= new


def all_subgroups(G):
    """Every subgroup, found by repeatedly adjoining one element."""
    subs = {naive_closure(G, ())}
    frontier = list(subs)
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(G.order):
                if g not in H:
                    K = naive_closure(G, H | {g})
                    if K not in subs:
                        subs.add(K)
                        nxt.append(K)
        frontier = nxt
    return subs


def smallest_containing(subs, S):
    best = None
    for H in subs:
        if set(S) <= H and (best is None or len(H) < len(best)):
            best = H
    return best


def _comm(G, x, y):
    inv = G.inv_table
    return _mul(G, _mul(G, _mul(G, int(inv[x]), int(inv[y])), x), y)


def brute_center(G):
    return frozenset(x for x in range(G.order) if all(_mul(G, x, y) == _mul(G, y, x) for y in range(G.order)))


def brute_derived(G, subs):
    return smallest_containing(subs, {_comm(G, x, y) for x in range(G.order) for y in range(G.order)})


def brute_power(G, subs, n):
    pw = set()
    for x in range(G.order):
        acc = 0
        for _ in range(n):
            acc = _mul(G, acc, x)
        pw.add(acc)
    return smallest_containing(subs, pw)


def brute_omega(G, subs, p, n):
    q = p ** n
    S = set()
    for x in range(G.order):
        acc = 0
        for _ in range(q):
            acc = _mul(G, acc, x)
        if acc == 0:
            S.add(x)
    return smallest_containing(subs, S)


def brute_frattini(G, subs):
    """Intersection of the maximal subgroups."""
    proper = [H for H in subs if len(H) < G.order]
    maximal = [H for H in proper if not any(H < K for K in proper)]
    out = frozenset(range(G.order))
    for M in maximal:
        out &= M
    return out


def brute_homs(G, H):
    """All generator-image tuples that extend to a homomorphism, checked by
    building the map on every element and testing f(xy) = f(x) f(y)."""
    gens = G.generators
    out = []
    for imgs in product(range(H.order), repeat=len(gens)):
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, imgs):
                    y = _mul(G, x, g)
                    v = _mul(H, f[x], h)
                    if y in f:
                        if f[y] != v:
                            ok = False
                            break
                    else:
                        f[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and all(f[_mul(G, x, y)] == _mul(H, f[x], f[y]) for x in range(G.order) for y in range(G.order)):
            out.append(tuple(imgs))
    return out
