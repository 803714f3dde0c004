"""Non-clausal formula trees, the base file grammar, and tree plumbing.

Formulas are immutable trees in negation normal form: negation lives on
literals only. The concrete syntax is an ASCII prefix notation::

    F ::= IDENT | -IDENT | true | false | (or F*) | (and F*)

and a base file holds one ``FORMULA : WEIGHT`` entry per line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

__all__ = [
    "Top", "Bottom", "Literal", "Conj", "Disj", "Formula", "TOP", "BOTTOM",
    "EMPTY_DISJ", "Position", "WeightedFormula", "Base", "ParseError",
    "parse_formula", "parse_base", "parse_weight", "render", "render_base",
    "negate_nnf", "simplify_constants", "locate_literal", "node_at",
    "replace_at", "size", "propositions", "literals", "subformulas",
    "is_constant", "format_weight",
]


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Literal:
    name: str
    positive: bool = True

    def complement(self) -> "Literal":
        return Literal(self.name, not self.positive)

    def __str__(self) -> str:
        return self.name if self.positive else "-" + self.name


@dataclass(frozen=True)
class Conj:
    children: tuple = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Disj:
    children: tuple = ()

    def __str__(self) -> str:
        return render(self)


Formula = Union[Top, Bottom, Literal, Conj, Disj]
Position = tuple  # child indexes from the root, 0-based

TOP = Top()
BOTTOM = Bottom()
EMPTY_DISJ = Disj(())


def is_constant(f: Formula) -> bool:
    return isinstance(f, (Top, Bottom))


def format_weight(w: Fraction) -> str:
    """Shortest exact decimal when the expansion terminates, else ``p/q``."""
    w = Fraction(w)
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(w.numerator)
    text = f"{w.numerator * 10**digits // w.denominator:0{digits + 1}d}"
    text = text[:-digits] + "." + text[-digits:]
    return text.rstrip("0").rstrip(".")


@dataclass(frozen=True)
class WeightedFormula:
    """A possibilistic formula: ``formula`` holds with necessity >= ``weight``."""

    formula: Formula
    weight: Fraction

    def __post_init__(self):
        w = self.weight if type(self.weight) is Fraction else Fraction(self.weight)
        if not 0 < w <= 1:
            raise ValueError(f"weight {w} outside (0, 1]")
        object.__setattr__(self, "weight", w)

    def __str__(self) -> str:
        return f"{render(self.formula)} : {format_weight(self.weight)}"


@dataclass(frozen=True)
class Base:
    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __iter__(self) -> Iterator[WeightedFormula]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def weights(self) -> list:
        return sorted({item.weight for item in self.items})

    def propositions(self) -> set:
        names = set()
        for item in self.items:
            names |= propositions(item.formula)
        return names

    def with_item(self, item: WeightedFormula) -> "Base":
        return Base(self.items + (item,))


# -- parsing ---------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(-?)([A-Za-z_][A-Za-z0-9_']*)|(\S))")
_KEYWORDS = {"or", "and", "true", "false"}


def _tokens(text: str, line: int, offset: int):
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = min(m.start(g) for g in range(1, 6) if m.group(g) is not None)
        col = offset + start + 1
        pos = m.end()
        if m.group(1):
            yield "(", None, col
        elif m.group(2):
            yield ")", None, col
        elif m.group(4):
            yield "word", (m.group(3), m.group(4)), col
        else:
            if m.group(5) == "-":
                raise ParseError("negation may only be applied to a proposition", line, col)
            raise ParseError(f"unexpected character {m.group(5)!r}", line, col)


def parse_formula(text: str, line: int = 1, offset: int = 0) -> Formula:
    """Parse one formula in prefix syntax."""
    toks = list(_tokens(text, line, offset))
    end_col = offset + len(text) + 1
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of formula", line, end_col)
        kind, val, col = toks[pos]
        pos += 1
        if kind == "word":
            neg, name = val
            if name in _KEYWORDS:
                if neg:
                    raise ParseError("negation may only be applied to a proposition", line, col)
                if name == "true":
                    return TOP
                if name == "false":
                    return BOTTOM
                raise ParseError(f"connective {name!r} outside parentheses", line, col)
            return Literal(name, not neg)
        if kind == ")":
            raise ParseError("unexpected ')'", line, col)
        # "(" connective children* ")"
        if pos >= len(toks) or toks[pos][0] != "word" or toks[pos][1][1] not in ("or", "and") \
                or toks[pos][1][0]:
            c = toks[pos][2] if pos < len(toks) else end_col
            raise ParseError("expected 'or' or 'and' after '('", line, c)
        conn = toks[pos][1][1]
        pos += 1
        children = []
        while True:
            if pos >= len(toks):
                raise ParseError("unclosed '('", line, col)
            if toks[pos][0] == ")":
                pos += 1
                break
            children.append(expr())
        return Disj(tuple(children)) if conn == "or" else Conj(tuple(children))

    result = expr()
    if pos != len(toks):
        raise ParseError("trailing input after formula", line, toks[pos][2])
    return result


def parse_weight(text: str, line: int = 1, column: int = 1) -> Fraction:
    try:
        w = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {text.strip()!r}", line, column) from None
    if not 0 < w <= 1:
        raise ParseError(f"weight {text.strip()} out of range (0, 1]", line, column)
    return w


def parse_base(text: Union[str, Iterable[str]]) -> Base:
    """Parse a base file. Weights are read as exact rationals."""
    lines = text.splitlines() if isinstance(text, str) else list(text)
    items = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        colon = raw.rfind(":")
        if colon < 0:
            raise ParseError("missing ': WEIGHT'", lineno, len(raw) + 1)
        formula = parse_formula(raw[:colon], lineno, 0)
        weight = parse_weight(raw[colon + 1:], lineno, colon + 2)
        items.append(WeightedFormula(formula, weight))
    return Base(tuple(items))


# -- rendering -------------------------------------------------------------

def render(f: Formula) -> str:
    if isinstance(f, Literal):
        return str(f)
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    head = "or" if isinstance(f, Disj) else "and"
    if not f.children:
        return f"({head})"
    return f"({head} " + " ".join(render(c) for c in f.children) + ")"


def render_base(base: Base) -> str:
    return "".join(f"{item}\n" for item in base)


# -- transformations -------------------------------------------------------

def negate_nnf(f: Formula) -> Formula:
    """De Morgan push-down; the result is again in NNF."""
    if isinstance(f, Literal):
        return f.complement()
    if isinstance(f, Top):
        return BOTTOM
    if isinstance(f, Bottom):
        return TOP
    children = tuple(negate_nnf(c) for c in f.children)
    return Disj(children) if isinstance(f, Conj) else Conj(children)


def simplify_constants(f: Formula) -> Formula:
    """Eliminate true/false (and empty connectives) bottom-up.

    A connective whose constant children were dropped and that is left with a
    single child is replaced by that child; other single-child connectives
    are kept as written.
    """
    if isinstance(f, (Literal, Top, Bottom)):
        return f
    is_conj = isinstance(f, Conj)
    if not f.children:
        return TOP if is_conj else BOTTOM
    absorbing = BOTTOM if is_conj else TOP
    kept = []
    for child in f.children:
        s = simplify_constants(child)
        if s == absorbing:
            return absorbing
        if is_constant(s):
            continue
        kept.append(s)
    if not kept:
        return TOP if is_conj else BOTTOM
    if len(kept) == 1 and len(f.children) > 1:
        return kept[0]
    return type(f)(tuple(kept))


# -- positions -------------------------------------------------------------

def node_at(f: Formula, pos: Position) -> Formula:
    node = f
    for i in pos:
        if not isinstance(node, (Conj, Disj)) or not 0 <= i < len(node.children):
            raise IndexError(f"invalid position {tuple(pos)}")
        node = node.children[i]
    return node


def replace_at(f: Formula, pos: Position, new: Formula) -> Formula:
    if not pos:
        return new
    i = pos[0]
    if not isinstance(f, (Conj, Disj)) or not 0 <= i < len(f.children):
        raise IndexError(f"invalid position {tuple(pos)}")
    children = list(f.children)
    children[i] = replace_at(children[i], pos[1:], new)
    return type(f)(tuple(children))


def locate_literal(f: Formula, lit: Literal) -> list:
    """All positions holding exactly ``lit``, in document order."""
    found = []
    stack = [(f, ())]
    while stack:
        node, pos = stack.pop()
        if node == lit:
            found.append(pos)
        elif isinstance(node, (Conj, Disj)):
            for i in range(len(node.children) - 1, -1, -1):
                stack.append((node.children[i], pos + (i,)))
    return found


def subformulas(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Conj, Disj)):
            stack.extend(reversed(node.children))


def size(f: Formula) -> int:
    """Number of nodes: connectives plus atoms."""
    return sum(1 for _ in subformulas(f))


def literals(f: Formula) -> Iterator[Literal]:
    return (n for n in subformulas(f) if isinstance(n, Literal))


def propositions(f: Formula) -> set:
    return {lit.name for lit in literals(f)}
