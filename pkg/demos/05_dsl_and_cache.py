"""The .grp format, word evaluation, quotients and the EGL1 table cache.

Run:  python demos/05_dsl_and_cache.py
"""

import os
import tempfile
import time

from egl import catalog, eval_word, materialize, parse_presentation, parse_word, quotient
from egl.errors import PresentationSyntaxError, UndeclaredSymbol
from egl.structure import center, derived

text = """
# dihedral group of order 16
group d16
order 16
gen a b
rel a^8
rel b^2
rel (a b)^2
"""
P = parse_presentation(text)
G = materialize(P)
print(P)
A = dict(zip(G.symbols, G.generators))
w = parse_word("[a, b, b]")
print(f"{w} evaluates to {G.word(eval_word(w, A, G))}")

Q, proj = quotient(G, center(G))
print(f"|G/Z| = {Q.order}, |G/G'| = {quotient(G, derived(G))[0].order}")

for bad in ("gen a\nrel b^2", "gen a\nrel a^"):
    try:
        parse_presentation(bad)
    except (UndeclaredSymbol, PresentationSyntaxError) as exc:
        print(f"rejected {bad!r}: {exc}")

with tempfile.TemporaryDirectory() as tmp:
    os.environ["EGL_CACHE_DIR"] = tmp
    P3 = catalog.faudree(3)
    t0 = time.perf_counter()
    materialize(P3)
    cold = time.perf_counter() - t0
    t0 = time.perf_counter()
    materialize(P3)
    warm = time.perf_counter() - t0
    print(f"order 6561 table: enumeration {cold:.2f}s, from cache {warm:.2f}s")
