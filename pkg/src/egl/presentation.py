"""Text format for finite presentations and evaluation of words.

A ``.grp`` file is line oriented::

    # comment
    group q8
    prime 2
    order 8
    gen a b
    rel a^4
    rel a^2 = b^2
    rel b^-1 a b = a^-1

Inside ``rel`` a word is a whitespace separated sequence of terms.  A term is
a generator symbol, ``1`` (the identity), a left-normed commutator
``[w1, w2, ..., wk]`` or a parenthesised word ``(w)``; any term may carry an
exponent ``^n`` with ``n`` a nonzero integer.  ``^`` binds tighter than
juxtaposition.  ``rel u = v = w`` is shorthand for ``rel u = v`` followed by
``rel v = w``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import DuplicateGenerator, PresentationSyntaxError, UndeclaredSymbol

__all__ = [
    "Gen",
    "Bracket",
    "Sub",
    "Word",
    "Presentation",
    "parse_presentation",
    "parse_word",
    "eval_word",
    "load_presentation",
]


@dataclass(frozen=True)
class Gen:
    symbol: str
    exp: int = 1

    def __str__(self):
        return self.symbol if self.exp == 1 else f"{self.symbol}^{self.exp}"


@dataclass(frozen=True)
class Bracket:
    args: tuple
    exp: int = 1

    def __str__(self):
        body = "[" + ",".join(str(a) for a in self.args) + "]"
        return body if self.exp == 1 else f"{body}^{self.exp}"


@dataclass(frozen=True)
class Sub:
    word: "Word"
    exp: int = 1

    def __str__(self):
        body = f"({self.word})"
        return body if self.exp == 1 else f"{body}^{self.exp}"


Term = Union[Gen, Bracket, Sub]


@dataclass(frozen=True)
class Word:
    terms: tuple = ()

    def __str__(self):
        return " ".join(str(t) for t in self.terms) if self.terms else "1"

    def __bool__(self):
        return bool(self.terms)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.terms + other.terms)

    def inverse(self) -> "Word":
        return Word((Sub(self, -1),)) if self.terms else self

    def symbols(self) -> set:
        out = set()
        for t in self.terms:
            if isinstance(t, Gen):
                out.add(t.symbol)
            elif isinstance(t, Bracket):
                for a in t.args:
                    out |= a.symbols()
            else:
                out |= t.word.symbols()
        return out

    def syllables(self) -> list:
        """Freely reduced expansion as ``[(symbol, exponent), ...]``.

        Adjacent powers of the same symbol are merged and cancelled.
        """
        out: list = []
        for sym, e in _expand(self):
            if out and out[-1][0] == sym:
                e += out[-1][1]
                out.pop()
                if e == 0:
                    continue
            out.append((sym, e))
        return out

    def letters(self) -> list:
        """Expansion into unit letters ``(symbol, +1 | -1)``, freely reduced."""
        out = []
        for sym, e in self.syllables():
            s = 1 if e > 0 else -1
            out.extend([(sym, s)] * abs(e))
        return out


def _invert_syllables(syl):
    return [(s, -e) for s, e in reversed(syl)]


def _power(syl, e):
    if e < 0:
        syl = _invert_syllables(syl)
        e = -e
    return syl * e


def _expand(word: Word) -> list:
    out = []
    for t in word.terms:
        if isinstance(t, Gen):
            if t.exp:
                out.append((t.symbol, t.exp))
            continue
        if isinstance(t, Sub):
            body = _expand(t.word)
        else:
            body = _expand(t.args[0])
            for arg in t.args[1:]:
                nxt = _expand(arg)
                body = _invert_syllables(body) + _invert_syllables(nxt) + body + nxt
        out.extend(_power(body, t.exp))
    return out


@dataclass
class Presentation:
    name: str
    generators: tuple
    relations: tuple = ()
    prime_hint: int | None = None
    order_hint: int | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.relations = tuple(
            (lhs, rhs if rhs is not None else Word()) for lhs, rhs in self.relations
        )
        seen = set()
        for g in self.generators:
            if g in seen:
                raise DuplicateGenerator(g)
            seen.add(g)
        for lhs, rhs in self.relations:
            for s in sorted(lhs.symbols() | rhs.symbols()):
                if s not in seen:
                    raise UndeclaredSymbol(s)

    @property
    def relators(self) -> list:
        """Each relation ``u = v`` as the single relator ``u v^-1``."""
        return [lhs * rhs.inverse() for lhs, rhs in self.relations]

    def to_text(self) -> str:
        lines = [f"group {self.name}"]
        if self.prime_hint is not None:
            lines.append(f"prime {self.prime_hint}")
        if self.order_hint is not None:
            lines.append(f"order {self.order_hint}")
        lines.append("gen " + " ".join(self.generators))
        for lhs, rhs in self.relations:
            lines.append(f"rel {lhs}" if not rhs else f"rel {lhs} = {rhs}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        rels = ", ".join(f"{l}" if not r else f"{l}={r}" for l, r in self.relations)
        return f"<{', '.join(self.generators)} | {rels}>"


_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<punct>[\^\-\[\](),=*]))"
)


def _tokenize(text, line_no, col0):
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos].isspace() else pos
            raise PresentationSyntaxError(
                line_no, col0 + bad + 1, f"unexpected character {text[bad]!r}"
            )
        kind = m.lastgroup
        toks.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    return toks


class _WordParser:
    def __init__(self, toks, line_no, end_col):
        self.toks = toks
        self.i = 0
        self.line = line_no
        self.end_col = end_col

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def error(self, msg, col=None):
        raise PresentationSyntaxError(self.line, col or self.peek()[2], msg)

    def expect(self, value):
        kind, val, col = self.peek()
        if val != value:
            self.error(f"expected {value!r}, found {val!r}" if val else f"expected {value!r}")
        self.i += 1

    def word(self, stops):
        terms = []
        while True:
            kind, val, col = self.peek()
            if kind is None or (kind == "punct" and val in stops):
                return Word(tuple(terms))
            if val == "*":
                self.i += 1
                continue
            term = self.term()
            if term is not None:
                terms.append(term)

    def term(self):
        kind, val, col = self.peek()
        if kind == "ident":
            self.i += 1
            return Gen(val, self.exponent())
        if kind == "int":
            if val != "1":
                self.error(f"bare integer {val!r}; only 1 denotes the identity")
            self.i += 1
            self.exponent()
            return None
        if val == "[":
            self.i += 1
            args = [self.word({",", "]"})]
            while self.peek()[1] == ",":
                self.i += 1
                args.append(self.word({",", "]"}))
            self.expect("]")
            if len(args) < 2:
                self.error("commutator needs at least two entries", col)
            return Bracket(tuple(args), self.exponent())
        if val == "(":
            self.i += 1
            inner = self.word({")"})
            self.expect(")")
            return Sub(inner, self.exponent())
        self.error(f"unexpected {val!r}" if val else "unexpected end of line")

    def exponent(self):
        if self.peek()[1] != "^":
            return 1
        self.i += 1
        sign = 1
        if self.peek()[1] == "-":
            sign = -1
            self.i += 1
        kind, val, col = self.peek()
        if kind != "int":
            self.error("exponent must be an integer")
        self.i += 1
        return sign * int(val)


def parse_word(text: str, line_no: int = 1, col0: int = 0) -> Word:
    """Parse a single word.  Exponent 0 is accepted here and means identity."""
    toks = _tokenize(text, line_no, col0)
    p = _WordParser(toks, line_no, col0 + len(text) + 1)
    w = p.word(set())
    if p.i != len(toks):
        p.error(f"unexpected {p.peek()[1]!r}")
    return w


def _has_zero_exponent(word):
    for t in word.terms:
        if t.exp == 0:
            return True
        inner = t.args if isinstance(t, Bracket) else (t.word,) if isinstance(t, Sub) else ()
        if any(_has_zero_exponent(w) for w in inner):
            return True
    return False


def _positive_int(rest, line_no, col, what):
    rest = rest.strip()
    if not re.fullmatch(r"\d+", rest) or int(rest) < 1:
        raise PresentationSyntaxError(line_no, col, f"{what} expects a positive integer")
    return int(rest)


def parse_presentation(text: str) -> Presentation:
    """Parse ``.grp`` text into a validated :class:`Presentation`."""
    name = "G"
    gens: list = []
    rels: list = []
    prime = order = None
    seen = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        directive, _, rest = stripped.partition(" ")
        rest_col = indent + len(directive) + 1
        if directive == "group":
            if not re.fullmatch(r"\s*[A-Za-z_][A-Za-z0-9_.\-]*\s*", rest):
                raise PresentationSyntaxError(line_no, rest_col + 1, "group expects one identifier")
            name = rest.strip()
        elif directive == "prime":
            prime = _positive_int(rest, line_no, rest_col + 1, "prime")
        elif directive == "order":
            order = _positive_int(rest, line_no, rest_col + 1, "order")
        elif directive == "gen":
            for kind, val, col in _tokenize(rest, line_no, rest_col):
                if kind != "ident":
                    raise PresentationSyntaxError(line_no, col, f"bad generator name {val!r}")
                if val in seen:
                    raise DuplicateGenerator(val)
                seen.add(val)
                gens.append(val)
        elif directive == "rel":
            sides = []
            col = rest_col
            for part in rest.split("="):
                w = parse_word(part, line_no, col)
                if _has_zero_exponent(w):
                    raise PresentationSyntaxError(line_no, col + 1, "exponents must be nonzero")
                for s in sorted(w.symbols()):
                    if s not in seen:
                        raise UndeclaredSymbol(s, line_no)
                sides.append(w)
                col += len(part) + 1
            if len(sides) == 1:
                rels.append((sides[0], Word()))
            else:
                rels.extend(zip(sides, sides[1:]))
        else:
            raise PresentationSyntaxError(line_no, indent + 1, f"unknown directive {directive!r}")
    return Presentation(name, tuple(gens), tuple(rels), prime, order)


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def eval_word(w: Word, assignment: Mapping[str, int], G) -> int:
    """Evaluate ``w`` in the materialized group ``G``.

    ``assignment`` maps every symbol of ``w`` to an element index of ``G``.
    """
    acc = G.identity
    for sym, e in w.syllables():
        acc = G.mul(acc, G.pow(assignment[sym], e))
    return acc


def eval_syllables(syl: Sequence, images: Sequence[int], G) -> int:
    acc = G.identity
    for g, e in syl:
        acc = G.mul(acc, G.pow(images[g], e))
    return acc
