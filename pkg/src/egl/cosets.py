"""Todd-Coxeter coset enumeration over the trivial subgroup.

HLT strategy with lookahead: cosets are processed in definition order and
every relator is scanned from each live coset, defining new cosets to close
the scan.  When the coset limit is reached a lookahead pass (scans that only
deduce) is made before giving up.

Letters are encoded as table columns: generator ``g`` is column ``2g`` and
its inverse ``2g + 1``, so ``col ^ 1`` is the inverse column.
"""

from __future__ import annotations

import numpy as np

from .errors import CosetLimitExceeded

__all__ = ["encode_relators", "enumerate_cosets", "CosetTable"]


def _free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(word):
    w = _free_reduce(word)
    while len(w) >= 2 and w[0] == w[-1] ^ 1:
        w = w[1:-1]
    return w


def _canonical(word):
    inv = [x ^ 1 for x in reversed(word)]
    return min(min(tuple(w[i:] + w[:i]) for i in range(len(w))) for w in (word, inv))


def encode_relators(relators, generators):
    """Relator words -> lists of columns, cyclically reduced, trivial and
    cyclically-equivalent duplicates dropped, input order otherwise kept."""
    index = {g: i for i, g in enumerate(generators)}
    out, seen = [], set()
    for w in relators:
        cols = [2 * index[s] + (0 if e > 0 else 1) for s, e in w.letters()]
        cols = _cyclic_reduce(cols)
        if not cols:
            continue
        key = _canonical(cols)
        if key in seen:
            continue
        seen.add(key)
        out.append(cols)
    return out


class CosetTable:
    """The finished enumeration: ``action[col][c]`` is coset ``c`` times letter ``col``."""

    def __init__(self, action, defined):
        self.action = action
        self.defined = defined

    @property
    def index(self):
        return self.action.shape[1]


class _Enumerator:
    def __init__(self, ngens, relators, max_cosets):
        self.ncol = 2 * ngens
        self.rels = relators
        self.max = max_cosets
        self.table = [[-1] * self.ncol]
        self.p = [0]
        self.nlive = 1
        self.defined = 1

    def rep(self, k):
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def merge(self, k, l, q):
        k, l = self.rep(k), self.rep(l)
        if k != l:
            mu, nu = (k, l) if k < l else (l, k)
            self.p[nu] = mu
            q.append(nu)
            self.nlive -= 1

    def coincidence(self, a, b):
        table = self.table
        q = []
        self.merge(a, b, q)
        i = 0
        while i < len(q):
            g = q[i]
            i += 1
            row = table[g]
            for x in range(self.ncol):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                table[d][xi] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if table[mu][x] >= 0:
                    self.merge(nu, table[mu][x], q)
                elif table[nu][xi] >= 0:
                    self.merge(mu, table[nu][xi], q)
                else:
                    table[mu][x] = nu
                    table[nu][xi] = mu

    def define(self, c, x):
        if self.nlive >= self.max:
            self.lookahead()
            if self.nlive >= self.max:
                raise CosetLimitExceeded(self.max)
            if self.p[c] != c:
                return False
        n = len(self.table)
        self.table.append([-1] * self.ncol)
        self.p.append(n)
        self.table[c][x] = n
        self.table[n][x ^ 1] = c
        self.nlive += 1
        self.defined += 1
        return True

    def scan(self, c, w, fill):
        table = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j:
                nxt = table[f][w[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][w[j] ^ 1]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            if not fill or not self.define(f, w[i]):
                return
            if self.p[c] != c:
                return

    def lookahead(self):
        for c in range(len(self.table)):
            if self.p[c] != c:
                continue
            for w in self.rels:
                if self.p[c] != c:
                    break
                self.scan(c, w, fill=False)

    def run(self):
        c = 0
        p = self.p
        while c < len(self.table):
            if p[c] == c:
                for w in self.rels:
                    if p[c] != c:
                        break
                    self.scan(c, w, fill=True)
                if p[c] == c:
                    row = self.table[c]
                    for x in range(self.ncol):
                        if row[x] < 0:
                            self.define(c, x)
                            if p[c] != c:
                                break
            c += 1
        return self.compact()

    def compact(self):
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        renum = {c: i for i, c in enumerate(live)}
        dtype = np.uint16 if len(live) <= 1 << 16 else np.uint32
        action = np.empty((self.ncol, len(live)), dtype=dtype)
        for i, c in enumerate(live):
            row = self.table[c]
            for x in range(self.ncol):
                action[x, i] = renum[self.rep(row[x])]
        return CosetTable(action, self.defined)


def enumerate_cosets(ngens: int, relators: list, max_cosets: int = 200_000) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; raises CosetLimitExceeded."""
    if ngens == 0:
        return CosetTable(np.zeros((0, 1), dtype=np.uint16), 1)
    return _Enumerator(ngens, relators, max_cosets).run()
