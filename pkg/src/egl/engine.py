"""Materialized finite groups: multiplication tables and their arithmetic."""

from __future__ import annotations

import hashlib
import os
import struct
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cosets import encode_relators, enumerate_cosets
from .errors import EGLError, NotNormal, OrderLimitExceeded, OrderMismatch
from .presentation import Gen, Presentation, Word

__all__ = [
    "CayleyGroup",
    "GroupMap",
    "materialize",
    "direct_product",
    "quotient",
    "cyclic_group",
    "save_table",
    "load_table",
    "DEFAULT_MAX_COSETS",
    "ELEMENT_CAP",
]

DEFAULT_MAX_COSETS = 200_000
ELEMENT_CAP = 20_000


def _index_dtype(n):
    return np.uint16 if n <= 1 << 16 else np.uint32


class CayleyGroup:
    """A finite group given by its full multiplication table.

    Elements are the integers ``0 .. order-1`` with ``0`` the identity.
    ``generators`` holds element indices, ``symbols`` the matching
    presentation names.  Every element also gets a shortest word in the
    generators (breadth first), which is what homomorphism search uses to
    induce a full map from generator images.
    """

    def __init__(self, table, generators, symbols=None, source=None, name=None, check=False):
        table = np.ascontiguousarray(table, dtype=_index_dtype(len(table)))
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        self.table = table
        self.order = n
        self.identity = 0
        self.generators = [int(g) for g in generators]
        self.symbols = list(symbols) if symbols is not None else [f"g{i}" for i in range(len(self.generators))]
        self.source = source
        self.name = name or (source.name if source is not None else "G")
        self.table.setflags(write=False)
        self.inv_table = np.empty(n, dtype=table.dtype)
        rows, cols = np.nonzero(table == 0)
        self.inv_table[rows] = cols
        self.inv_table.setflags(write=False)
        self._build_words()
        self._cache = {}
        if check:
            self.check_axioms()

    def _build_words(self):
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        via = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        parent[0] = 0
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = np.array([0], dtype=np.int64)
        layers = []
        d = 0
        while frontier.size:
            d += 1
            nxt = []
            for gi, g in enumerate(self.generators):
                prod = self.table[frontier, g].astype(np.int64)
                fresh = ~seen[prod]
                prod, src = prod[fresh], frontier[fresh]
                prod, first = np.unique(prod, return_index=True)
                # lowest-index predecessor wins within one generator
                src = src[first]
                seen[prod] = True
                parent[prod] = src
                via[prod] = gi
                depth[prod] = d
                nxt.append(prod)
            frontier = np.sort(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
            if frontier.size:
                layers.append(frontier)
        if not seen.all():
            raise EGLError("listed generators do not generate the whole table")
        self.parent = parent
        self.via = via
        self.depth = depth
        self.layers = layers

    def __repr__(self):
        return f"CayleyGroup({self.name!r}, order={self.order}, gens={self.symbols})"

    def __len__(self):
        return self.order

    # -- element arithmetic -------------------------------------------------

    def mul(self, x, y):
        return int(self.table[x, y])

    def inv(self, x):
        return int(self.inv_table[x])

    def pow(self, x, k):
        if k < 0:
            x, k = self.inv(x), -k
        acc = 0
        while k:
            if k & 1:
                acc = int(self.table[acc, x])
            x = int(self.table[x, x])
            k >>= 1
        return acc

    def comm(self, x, y):
        t = self.table
        inv = self.inv_table
        return int(t[t[t[inv[x], inv[y]], x], y])

    def comm3(self, x, y, z):
        return self.comm(self.comm(x, y), z)

    def conj(self, x, g):
        """x^g = g^-1 x g"""
        return int(self.table[self.table[self.inv_table[g], x], g])

    def element_order(self, x):
        k, acc = 1, x
        while acc != 0:
            acc = int(self.table[acc, x])
            k += 1
        return k

    # -- vectorized helpers -------------------------------------------------

    def vmul(self, x, y):
        return self.table[x, y]

    def vcomm(self, x, y):
        t, inv = self.table, self.inv_table
        return t[t[t[inv[x], inv[y]], x], y]

    def power_map(self, k):
        """Array whose entry ``x`` is ``x^k``."""
        key = ("pow", k)
        if key in self._cache:
            return self._cache[key]
        base = np.arange(self.order, dtype=self.table.dtype)
        if k < 0:
            base = self.inv_table.copy()
            k = -k
        acc = np.zeros(self.order, dtype=self.table.dtype)
        while k:
            if k & 1:
                acc = self.table[acc, base]
            base = self.table[base, base]
            k >>= 1
        acc.setflags(write=False)
        if len(self._cache) < 64:
            self._cache[key] = acc
        return acc

    def orders(self):
        """Element orders of every element, as an int array."""
        if "orders" in self._cache:
            return self._cache["orders"]
        n = self.order
        idx = np.arange(n)
        cur = idx.astype(self.table.dtype)
        out = np.zeros(n, dtype=np.int64)
        k = 1
        while True:
            hit = (cur == 0) & (out == 0)
            out[hit] = k
            if (out > 0).all():
                break
            cur = self.table[cur, idx]
            k += 1
        self._cache["orders"] = out
        return out

    def exponent(self):
        return int(np.lcm.reduce(np.unique(self.orders())))

    def is_abelian(self):
        g = self.generators
        t = self.table
        return all(t[a, b] == t[b, a] for a in g for b in g)

    def word(self, x):
        """A shortest word in the generators representing ``x``."""
        syms = []
        while x != 0:
            syms.append(self.symbols[self.via[x]])
            x = int(self.parent[x])
        terms = []
        for s in reversed(syms):
            if terms and terms[-1].symbol == s:
                terms[-1] = Gen(s, terms[-1].exp + 1)
            else:
                terms.append(Gen(s))
        return Word(tuple(terms))

    def check_axioms(self, full_limit=256, samples=20000, seed=0):
        """Assert group axioms; full associativity scan when order <= full_limit."""
        t = self.table
        n = self.order
        idx = np.arange(n)
        assert (t[0] == idx).all() and (t[:, 0] == idx).all(), "0 is not the identity"
        assert (t[idx, self.inv_table] == 0).all() and (t[self.inv_table, idx] == 0).all()
        for row in (t, t.T):
            assert (np.sort(row, axis=1) == idx).all(), "table is not a Latin square"
        if n <= full_limit:
            lhs = t[t[:, :, None], idx[None, None, :]]
            rhs = t[idx[:, None, None], t[None, :, :]]
            assert (lhs == rhs).all(), "multiplication is not associative"
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            assert (t[t[a, b], c] == t[a, t[b, c]]).all(), "multiplication is not associative"
        return True


@dataclass
class GroupMap:
    """A homomorphism given by generator images and the induced element map."""

    domain: CayleyGroup
    codomain: CayleyGroup
    gen_images: tuple
    table: np.ndarray

    def __call__(self, x):
        return int(self.table[x])

    @property
    def image_size(self):
        return int(np.unique(self.table).size)

    @property
    def is_bijective(self):
        return self.domain.order == self.codomain.order and self.image_size == self.domain.order

    def image_mask(self):
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.table] = True
        return mask

    def kernel_mask(self):
        return self.table == 0

    def is_homomorphism(self):
        """Full scan of f(xy) == f(x) f(y)."""
        f = self.table.astype(np.int64)
        lhs = f[self.domain.table]
        rhs = self.codomain.table[f[:, None], f[None, :]]
        return bool((lhs == rhs).all())

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self`` followed by ``other`` (x -> other(self(x)))."""
        table = other.table[self.table]
        return GroupMap(self.domain, other.codomain, tuple(int(table[g]) for g in self.domain.generators), table)

    def __repr__(self):
        return f"GroupMap({self.domain.name} -> {self.codomain.name}, gens -> {list(self.gen_images)})"


def induce_table(G: CayleyGroup, H: CayleyGroup, images):
    """Extend generator images along G's element words (no homomorphism check)."""
    f = np.zeros(G.order, dtype=H.table.dtype)
    imgs = np.asarray(images, dtype=np.int64)
    for layer in G.layers:
        f[layer] = H.table[f[G.parent[layer]], imgs[G.via[layer]]]
    return f


# -- construction -------------------------------------------------------------

def _cache_path(text):
    root = os.environ.get("EGL_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha256(text.encode()).hexdigest()[:24]
    return Path(root) / f"{digest}.egl"


def materialize(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS, cap: int = ELEMENT_CAP, check=True) -> CayleyGroup:
    """Run coset enumeration on ``p`` and build the regular representation.

    Elements are numbered in coset definition order, so the same text always
    gives the same table.
    """
    cache = _cache_path(p.to_text())
    if cache is not None and cache.exists():
        G = load_table(cache, source=p)
        if G.symbols == list(p.generators):
            return G
    rels = encode_relators(p.relators, p.generators)
    ct = enumerate_cosets(len(p.generators), rels, max_cosets)
    n = ct.index
    if p.order_hint is not None and n != p.order_hint:
        raise OrderMismatch(p.order_hint, n)
    if n > cap:
        raise OrderLimitExceeded(n, cap)
    act = ct.action
    gens = [int(act[2 * i, 0]) for i in range(len(p.generators))]
    # breadth-first words over the coset graph, then column y = column(parent) * letter
    dtype = _index_dtype(n)
    table = np.empty((n, n), dtype=dtype)
    table[:, 0] = np.arange(n, dtype=dtype)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for col in range(act.shape[0]):
            y = int(act[col, x])
            if not seen[y]:
                seen[y] = True
                table[:, y] = act[col][table[:, x]]
                queue.append(y)
    G = CayleyGroup(table, gens, p.generators, source=p, name=p.name)
    if check:
        G.check_axioms()
    if cache is not None:
        cache.parent.mkdir(parents=True, exist_ok=True)
        save_table(G, cache)
    return G


def cyclic_group(n: int, symbol: str = "c") -> CayleyGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    src = Presentation(f"C{n}", (symbol,), ((Word((Gen(symbol, n),)), Word()),), order_hint=n)
    return CayleyGroup(table, [1 % n] if n > 1 else [0], [symbol], source=src, name=f"C{n}")


def _rename(word, mapping):
    from .presentation import Bracket, Sub

    terms = []
    for t in word.terms:
        if isinstance(t, Gen):
            terms.append(Gen(mapping[t.symbol], t.exp))
        elif isinstance(t, Bracket):
            terms.append(Bracket(tuple(_rename(a, mapping) for a in t.args), t.exp))
        else:
            terms.append(Sub(_rename(t.word, mapping), t.exp))
    return Word(tuple(terms))


def _product_presentation(G, H, name):
    from .presentation import Bracket

    left = list(G.symbols)
    taken = set(left)
    right_map = {}
    for s in H.symbols:
        new, k = s, 2
        while new in taken:
            new = f"{s}_{k}"
            k += 1
        taken.add(new)
        right_map[s] = new
    rels = list(G.source.relations)
    rels += [(_rename(l, right_map), _rename(r, right_map)) for l, r in H.source.relations]
    for a in left:
        for b in H.symbols:
            rels.append((Word((Bracket((Word((Gen(a),)), Word((Gen(right_map[b]),)))),)), Word()))
    return Presentation(name, tuple(left + [right_map[s] for s in H.symbols]), tuple(rels), order_hint=G.order * H.order)


def direct_product(G: CayleyGroup, H: CayleyGroup, cap: int = ELEMENT_CAP, name=None) -> CayleyGroup:
    """G x H with (g, h) numbered g * |H| + h."""
    n = G.order * H.order
    if n > cap:
        raise OrderLimitExceeded(n, cap)
    name = name or f"{G.name}x{H.name}"
    dtype = _index_dtype(n)
    gt = G.table.astype(np.int64)
    ht = H.table.astype(np.int64)
    table = (gt[:, None, :, None] * H.order + ht[None, :, None, :]).reshape(n, n).astype(dtype)
    gens = [g * H.order for g in G.generators] + [h for h in H.generators]
    src = None
    if G.source is not None and H.source is not None:
        src = _product_presentation(G, H, name)
        symbols = list(src.generators)
    else:
        symbols = list(G.symbols) + [f"{s}_2" if s in G.symbols else s for s in H.symbols]
    return CayleyGroup(table, gens, symbols, source=src, name=name)


def quotient(G: CayleyGroup, N):
    """G/N together with the canonical projection.

    ``N`` is a Subgroup (anything with ``members`` bool mask and ``gens``).
    Cosets are numbered breadth first from N along the generators.
    """
    members = np.flatnonzero(N.members)
    for g in G.generators:
        for x in N.gens:
            if not N.members[G.conj(x, g)]:
                raise NotNormal((g, x))
    label = np.full(G.order, -1, dtype=np.int64)
    reps = [0]
    label[G.table[0, members]] = 0
    queue = deque([0])
    while queue:
        c = queue.popleft()
        r = reps[c]
        for g in G.generators:
            y = G.mul(r, g)
            if label[y] < 0:
                k = len(reps)
                reps.append(y)
                label[G.table[y, members]] = k
                queue.append(k)
    m = len(reps)
    reps_arr = np.array(reps)
    qtable = label[G.table[reps_arr[:, None], reps_arr[None, :]]]
    src = None
    if G.source is not None:
        extra = tuple((G.word(int(x)), Word()) for x in N.gens)
        src = Presentation(f"{G.name}/N", G.source.generators, G.source.relations + extra, order_hint=m)
    Q = CayleyGroup(qtable, [int(label[g]) for g in G.generators], G.symbols, source=src, name=f"{G.name}/N")
    proj_table = label.astype(Q.table.dtype)
    proj = GroupMap(G, Q, tuple(int(label[g]) for g in G.generators), proj_table)
    return Q, proj


# -- binary cache ---------------------------------------------------------------

_MAGIC = b"EGL1"


def save_table(G: CayleyGroup, path):
    """Write ``G`` in the EGL1 format: magic, u32 order, mul table, inv table,
    u32 generator count, u32 generator indices, u32 byte length + utf-8
    space-separated symbols.  Tables are u16 when order <= 65536 else u32."""
    dtype = "<u2" if G.order <= 1 << 16 else "<u4"
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<I", G.order))
        fh.write(G.table.astype(dtype).tobytes())
        fh.write(G.inv_table.astype(dtype).tobytes())
        fh.write(struct.pack("<I", len(G.generators)))
        fh.write(np.asarray(G.generators, dtype="<u4").tobytes())
        sym = " ".join(G.symbols).encode()
        fh.write(struct.pack("<I", len(sym)))
        fh.write(sym)


def load_table(path, source=None) -> CayleyGroup:
    data = Path(path).read_bytes()
    if data[:4] != _MAGIC:
        raise EGLError(f"{path}: not an EGL1 table")
    (n,) = struct.unpack_from("<I", data, 4)
    dtype = np.dtype("<u2" if n <= 1 << 16 else "<u4")
    off = 8
    table = np.frombuffer(data, dtype=dtype, count=n * n, offset=off).reshape(n, n)
    off += n * n * dtype.itemsize + n * dtype.itemsize
    (k,) = struct.unpack_from("<I", data, off)
    off += 4
    gens = np.frombuffer(data, dtype="<u4", count=k, offset=off).tolist()
    off += 4 * k
    (ls,) = struct.unpack_from("<I", data, off)
    symbols = data[off + 4 : off + 4 + ls].decode().split() if ls else []
    return CayleyGroup(table.copy(), gens, symbols, source=source)
