"""Named groups: ``.grp`` data files with ``.props`` sidecars, plus the two
parametric families (Faudree's four-generator groups and the three-generator
class-2 groups built from a matrix over Z/p^t)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from ..cosets import encode_relators, enumerate_cosets
from ..engine import ELEMENT_CAP, CayleyGroup, cyclic_group, direct_product, materialize
from ..errors import InvalidMatrix, OrderLimitExceeded, UnknownKey
from ..presentation import Presentation, eval_word, parse_presentation

__all__ = [
    "CatalogEntry",
    "ThreeGenParams",
    "named",
    "keys",
    "faudree",
    "threegen_presentation",
    "threegen_epsilon",
    "parse_props",
    "catalog_dir",
]

_DATA_KEYS = ["q8", "d8", "d16", "remark22", "lep5_4", "lep5_5", "e128_1", "e128_2", "e128_3"]


def catalog_dir():
    return resources.files(__name__)


def parse_props(text: str) -> dict:
    """``key = value  # note`` lines; values are ints, true/false or strings."""
    out = {}
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, _, value = body.partition("=")
        value = value.strip()
        if re.fullmatch(r"-?\d+", value):
            out[key.strip()] = int(value)
        elif value in ("true", "false"):
            out[key.strip()] = value == "true"
        else:
            out[key.strip()] = value
    return out


@dataclass
class CatalogEntry:
    key: str
    presentation: Presentation | None
    expected: dict
    build: Callable[[], CayleyGroup] | None = None
    _group: CayleyGroup | None = field(default=None, repr=False)

    def group(self) -> CayleyGroup:
        if self._group is None:
            self._group = self.build() if self.build else materialize(self.presentation)
        return self._group


def _read(name):
    return (catalog_dir() / name).read_text(encoding="utf-8")


def _data_entry(key, file_key=None):
    file_key = file_key or key
    pres = parse_presentation(_read(f"{file_key}.grp"))
    props = parse_props(_read(f"{file_key}.props"))
    return CatalogEntry(key, pres, props)


def _q8_group():
    return named("q8").group()


def keys() -> list:
    return _DATA_KEYS[:3] + ["lep5_1", "lep5_2", "lep5_3"] + _DATA_KEYS[3:] + ["faudree_2", "faudree_3", "cyclic_<n>"]


_ENTRIES: dict = {}


def named(key: str) -> CatalogEntry:
    """Look up a catalog entry (cached, so groups are materialized once)."""
    if key in _ENTRIES:
        return _ENTRIES[key]
    if key in _DATA_KEYS:
        entry = _data_entry(key)
    elif key == "lep5_1":
        entry = _data_entry("lep5_1", "q8")
    elif key in ("lep5_2", "lep5_3"):
        k = 1 if key == "lep5_2" else 2
        expected = {"order": 8 * 2 ** k, "is_abelian": False, "is_p_epsilon": True, "is_e_group": False}

        def build(k=k, key=key):
            G = _q8_group()
            for i in range(k):
                G = direct_product(G, cyclic_group(2, "c" if i == 0 else "d"))
            G.name = key
            return G

        entry = CatalogEntry(key, None, expected, build)
    elif m := re.fullmatch(r"faudree_(\d+)", key):
        p = int(m.group(1))
        expected = {"order": p ** 8}
        if p == 2:
            expected["is_e_group"] = False
        else:
            expected.update({"class": 2, "is_2_engel": True, "is_p_epsilon": True, "r": 1, "exponent": p * p})
        entry = CatalogEntry(key, faudree(p), expected)
    elif m := re.fullmatch(r"cyclic_(\d+)", key):
        n = int(m.group(1))
        pres = parse_presentation(f"group C{n}\norder {n}\ngen c\nrel c^{n}\n")
        entry = CatalogEntry(key, pres, {"order": n, "is_abelian": True, "is_e_group": True, "exponent": n})
    else:
        raise UnknownKey(key)
    _ENTRIES[key] = entry
    return entry


def faudree(p: int) -> Presentation:
    """Faudree's four-generator group; an E-group for odd p, not for p = 2."""
    lines = [f"group faudree_{p}", f"prime {p}", f"order {p ** 8}", "gen a1 a2 a3 a4"]
    lines += [f"rel a{i}^{p * p}" for i in range(1, 5)]
    lines += [f"rel [a{i},a{j},a{k}]" for i in range(1, 5) for j in range(1, 5) for k in range(1, 5)]
    lines += [
        f"rel [a1,a2] = a1^{p}",
        f"rel [a1,a3] = a3^{p}",
        f"rel [a1,a4] = a4^{p}",
        f"rel [a2,a3] = a2^{p}",
        "rel [a2,a4]",
        f"rel [a3,a4] = a3^{p}",
    ]
    return parse_presentation("\n".join(lines) + "\n")


def _is_prime(n):
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class ThreeGenParams:
    p: int
    r: int
    t: int
    T: tuple = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def __post_init__(self):
        T = tuple(tuple(int(v) for v in row) for row in self.T)
        object.__setattr__(self, "T", T)
        if not _is_prime(self.p) or self.p == 2:
            raise ValueError(f"p = {self.p} must be an odd prime")
        if not 1 <= self.t <= self.r:
            raise ValueError("need 1 <= t <= r")
        if len(T) != 3 or any(len(row) != 3 for row in T):
            raise InvalidMatrix("T must be 3x3")
        det = (
            T[0][0] * (T[1][1] * T[2][2] - T[1][2] * T[2][1])
            - T[0][1] * (T[1][0] * T[2][2] - T[1][2] * T[2][0])
            + T[0][2] * (T[1][0] * T[2][1] - T[1][1] * T[2][0])
        )
        if det % self.p == 0:
            raise InvalidMatrix(f"det T = {det} is not a unit mod {self.p}")

    @property
    def modulus(self):
        return self.p ** (self.r + self.t)

    @property
    def order(self):
        return self.modulus ** 3

    @property
    def key(self):
        flat = "".join(str(v % self.p ** self.t) for row in self.T for v in row)
        return f"threegen_{self.p}_{self.r}_{self.t}_{flat}"


def threegen_presentation(params: ThreeGenParams) -> Presentation:
    p, r, t, T = params.p, params.r, params.t, params.T
    q, P, pt = params.modulus, p ** r, p ** t
    names = "xyz"

    def rhs(row):
        terms = [f"{s}^{P * (v % pt)}" for s, v in zip(names, row) if v % pt]
        return " ".join(terms) if terms else "1"

    lines = [f"group {params.key}", f"prime {p}", f"order {params.order}", "gen x y z"]
    lines += [f"rel {s}^{q}" for s in names]
    lines += [f"rel [{a}^{pt},{b}]" for a in names for b in names if a != b]
    for (a, b), row in zip((("x", "y"), ("x", "z"), ("y", "z")), T):
        lines.append(f"rel [{a},{b}] = {rhs(row)}")
    return parse_presentation("\n".join(lines) + "\n")


def threegen_epsilon(params: ThreeGenParams, cap: int = ELEMENT_CAP, attach_presentation: bool = True,
                     samples: int = 20000) -> CayleyGroup:
    """Build the group on (Z/p^(r+t))^3 directly from the product formula.

    Element (i, j, k) has index i + j m + k m^2, m = p^(r+t).  The matching
    presentation is attached as ``source`` only after checking that the three
    basis elements satisfy its relators and that it enumerates to the same
    order.
    """
    m, P = params.modulus, params.p ** params.r
    n = params.order
    if n > cap:
        raise OrderLimitExceeded(n, cap)
    T = np.array(params.T, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    I, J, K = idx % m, (idx // m) % m, idx // (m * m)
    dtype = np.uint16 if n <= 1 << 16 else np.uint32
    table = np.empty((n, n), dtype=dtype)
    chunk = max(1, 2_000_000 // n)
    for s in range(0, n, chunk):
        a = slice(s, min(n, s + chunk))
        i, j, k = I[a, None], J[a, None], K[a, None]
        c1, c2, c3 = I[None, :] * j, I[None, :] * k, J[None, :] * k
        ni = (i + I[None, :] - P * (c1 * T[0, 0] + c2 * T[1, 0] + c3 * T[2, 0])) % m
        nj = (j + J[None, :] - P * (c1 * T[0, 1] + c2 * T[1, 1] + c3 * T[2, 1])) % m
        nk = (k + K[None, :] - P * (c1 * T[0, 2] + c2 * T[1, 2] + c3 * T[2, 2])) % m
        table[a] = ni + m * nj + m * m * nk
    rng = np.random.default_rng(0)
    x, y, z = rng.integers(0, n, size=(3, samples))
    if not (table[table[x, y], z] == table[x, table[y, z]]).all():
        raise InvalidMatrix("product formula is not associative for these parameters")
    pres = threegen_presentation(params)
    G = CayleyGroup(table, [1, m, m * m], ["x", "y", "z"], name=params.key)
    if attach_presentation:
        assign = dict(zip("xyz", G.generators))
        if all(eval_word(w, assign, G) == 0 for w in pres.relators):
            rels = encode_relators(pres.relators, pres.generators)
            if enumerate_cosets(3, rels).index == n:
                G.source = pres
    return G
