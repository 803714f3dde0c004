"""Brute-force semantic ground truth.

Everything here enumerates interpretations exhaustively; it is meant to be
slow and obviously right, and serves as the oracle the calculus is checked
against.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .formula import (
    Base, Bottom, Conj, Formula, Literal, Top, WeightedFormula,
    negate_nnf, propositions, render,
)

DEFAULT_PROPOSITION_BUDGET = 20
DEFAULT_CLAUSE_BUDGET = 10_000


class UnboundProposition(KeyError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def evaluate(w: Mapping[str, int], f: Formula) -> int:
    """Truth value of ``f`` under interpretation ``w`` (0 or 1)."""
    if isinstance(f, Literal):
        try:
            v = 1 if w[f.name] else 0
        except KeyError:
            raise UnboundProposition(f.name) from None
        return v if f.positive else 1 - v
    if isinstance(f, Top):
        return 1
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Conj):
        return min((evaluate(w, c) for c in f.children), default=1)
    return max((evaluate(w, c) for c in f.children), default=0)


def interpretations(names: Sequence[str]):
    """Every total assignment over ``names``, as dicts."""
    names = list(names)
    for values in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, values))


def _check_budget(names, budget):
    if len(names) > budget:
        raise BudgetExceeded(
            f"{len(names)} propositions exceed the enumeration budget of {budget}")


def truth_table(f: Formula, names: Sequence[str]) -> int:
    """Models of ``f`` as a bitmask: bit ``i`` is the assignment where
    ``names[j]`` is true iff bit ``j`` of ``i`` is set."""
    n = len(names)
    full = (1 << (1 << n)) - 1
    index = {name: j for j, name in enumerate(names)}
    masks = {}

    def var_mask(j):
        if j not in masks:
            block = (1 << (1 << j)) - 1  # 2^j ones
            period = block << (1 << j)   # pattern: 2^j zeros, then 2^j ones
            m, width = period, 1 << (j + 1)
            while width < (1 << n):
                m |= m << width
                width <<= 1
            masks[j] = m & full
        return masks[j]

    def table(g):
        if isinstance(g, Literal):
            if g.name not in index:
                raise UnboundProposition(g.name)
            m = var_mask(index[g.name])
            return m if g.positive else full ^ m
        if isinstance(g, Top):
            return full
        if isinstance(g, Bottom):
            return 0
        if isinstance(g, Conj):
            acc = full
            for c in g.children:
                acc &= table(c)
            return acc
        acc = 0
        for c in g.children:
            acc |= table(c)
        return acc

    return table(f)


def is_consistent_oracle(f: Formula, budget: int = DEFAULT_PROPOSITION_BUDGET) -> bool:
    names = sorted(propositions(f))
    _check_budget(names, budget)
    return any(evaluate(w, f) for w in interpretations(names))


def pi_sigma(w: Mapping[str, int], s: Base) -> Fraction:
    """Least specific possibility degree of interpretation ``w``."""
    falsified = [1 - item.weight for item in s if not evaluate(w, item.formula)]
    return min(falsified, default=Fraction(1))


def inc_oracle(s: Base, budget: int = DEFAULT_PROPOSITION_BUDGET) -> Fraction:
    """Inconsistency degree as ``1 - max_w pi_sigma(w)``."""
    names = sorted(s.propositions())
    _check_budget(names, budget)
    tables = [(truth_table(item.formula, names), 1 - item.weight) for item in s]
    best = Fraction(0)
    for i in range(1 << len(names)):
        level = Fraction(1)
        for table, penalty in tables:
            if not (table >> i) & 1 and penalty < level:
                level = penalty
        if level > best:
            best = level
            if best == 1:
                break
    return 1 - best


def inc_oracle_cuts(s: Base, budget: int = DEFAULT_PROPOSITION_BUDGET) -> Fraction:
    """Inconsistency degree as the largest weight whose cut has no model."""
    names = sorted(s.propositions())
    _check_budget(names, budget)
    full = (1 << (1 << len(names))) - 1
    models = full
    tables = sorted(((item.weight, truth_table(item.formula, names)) for item in s),
                    key=lambda t: t[0], reverse=True)
    result = Fraction(0)
    for i, (weight, table) in enumerate(tables):
        models &= table
        last_of_level = i + 1 == len(tables) or tables[i + 1][0] != weight
        if last_of_level and not models:
            result = weight
            break
    return result


def necessity_oracle(s: Base, f: Formula, budget: int = DEFAULT_PROPOSITION_BUDGET) -> Fraction:
    """Largest weight ``a`` such that the base entails ``<f : a>``."""
    return inc_oracle(s.with_item(WeightedFormula(negate_nnf(f), Fraction(1))), budget)


# -- clausal transform -----------------------------------------------------

@dataclass(frozen=True)
class ClausalFormula:
    """Conjunction of clauses; a clause is a tuple of literals."""

    clauses: tuple

    def __str__(self) -> str:
        return "(and " + " ".join(
            "(or " + " ".join(str(l) for l in c) + ")" for c in self.clauses) + ")"

    def evaluate(self, w: Mapping[str, int]) -> int:
        return int(all(any(evaluate(w, l) for l in c) for c in self.clauses))


def cl_transform(f: Formula, budget: int = DEFAULT_CLAUSE_BUDGET) -> ClausalFormula:
    """Distribute disjunction over conjunction until the formula is clausal.

    Literal occurrences are kept as they are (no merging of duplicates, no
    tautology removal), and clauses come out in left-to-right order.
    """

    def clauses(g):
        if isinstance(g, Literal):
            return [(g,)]
        if isinstance(g, (Top, Bottom)):
            raise ValueError(f"constant in {render(f)}; simplify constants first")
        parts = [clauses(c) for c in g.children]
        if isinstance(g, Conj):
            out = [c for p in parts for c in p]
        else:
            count = 1
            for p in parts:
                count *= len(p)
            if count > budget:
                raise BudgetExceeded(f"distribution needs {count} clauses (budget {budget})")
            out = [tuple(l for c in combo for l in c) for combo in itertools.product(*parts)]
        if len(out) > budget:
            raise BudgetExceeded(f"distribution needs {len(out)} clauses (budget {budget})")
        return out

    return ClausalFormula(tuple(clauses(f)))


def is_horn_clausal(c: ClausalFormula) -> bool:
    return all(sum(1 for l in clause if l.positive) <= 1 for clause in c.clauses)
