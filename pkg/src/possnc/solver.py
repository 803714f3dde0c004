"""Cuts, the Find recursion, and entailment on top of the calculus."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .calculus import Derivation, EmptyClauseFound, run_engine, simplify_structural
from .formula import Base, Conj, Formula, Literal, WeightedFormula, negate_nnf, render, size
from .hornnc import non_horn_items


class NotHornNC(ValueError):
    def __init__(self, base: Base, indexes: list):
        self.items = [base.items[i] for i in indexes]
        self.indexes = indexes
        listed = "; ".join(f"item {i + 1}: {render(base.items[i].formula)}" for i in indexes)
        super().__init__(f"not a Horn-NC base ({listed})")


@dataclass(frozen=True)
class CutSpec:
    threshold: Fraction
    strict: bool = False

    def __post_init__(self):
        t = Fraction(self.threshold)
        if not 0 < t <= 1:
            raise ValueError(f"cut threshold {t} outside (0, 1]")
        object.__setattr__(self, "threshold", t)


def alpha_cut(s: Base, c: CutSpec) -> Base:
    if c.strict:
        return Base(tuple(it for it in s if it.weight > c.threshold))
    return Base(tuple(it for it in s if it.weight >= c.threshold))


@dataclass
class FindResult:
    inc: Fraction
    rounds: list = field(default_factory=list)   # one Derivation per saturation
    inferences: int = 0
    recursions: int = 0
    bound: int = 0

    @property
    def chain(self) -> list:
        return [d.outcome.weight for d in self.rounds if isinstance(d.outcome, EmptyClauseFound)]


def _stated_units(items) -> dict:
    """Strongest weight at which each literal is stated by an item, either
    alone or as a top-level conjunct. A carried unit at or below it is redundant."""
    best: dict = {}
    for it in items:
        f = simplify_structural(it.formula)
        if isinstance(f, Literal):
            lits = [f]
        elif isinstance(f, Conj):
            lits = [c for c in f.children if isinstance(c, Literal)]
        else:
            continue
        for lit in lits:
            if it.weight > best.get(lit, 0):
                best[lit] = it.weight
    return best


def _next_base(current: Base, d: Derivation, alpha: Fraction) -> Base:
    kept = alpha_cut(current, CutSpec(alpha, strict=True)).items
    best = {}
    for lit, w, _ in d.units:
        if w > alpha and w > best.get(lit, 0):
            best[lit] = w
    stated = _stated_units(kept)
    carried = [WeightedFormula(lit, w) for lit, w in best.items() if stated.get(lit, 0) < w]
    # derived units first, so the next search starts from them
    return Base(tuple(carried) + kept)


def solve(s: Base, lur: bool = False, hur: bool = False, check: bool = True) -> FindResult:
    """Find the inconsistency degree, keeping every saturation trace."""
    if check:
        bad = non_horn_items(s)
        if bad:
            raise NotHornNC(s, bad)
    m = sum(size(it.formula) for it in s)
    k = len(s.weights())
    result = FindResult(Fraction(0), bound=m * max(k, 1))
    current = s
    while True:
        d = run_engine(current, lur=lur, hur=hur)
        result.rounds.append(d)
        result.inferences += d.inferences
        if not isinstance(d.outcome, EmptyClauseFound):
            break
        alpha = d.outcome.weight
        assert alpha > result.inc, "empty clause below the current degree"
        result.inc = alpha
        result.recursions += 1
        current = _next_base(current, d, alpha)
    assert result.inferences <= result.bound, "inference bound exceeded"
    assert result.recursions <= result.bound, "recursion bound exceeded"
    return result


def find_inc(s: Base, lur: bool = False, hur: bool = False) -> Fraction:
    return solve(s, lur=lur, hur=hur).inc


def is_consistent(s: Base) -> bool:
    return find_inc(s) == 0


def entails(s: Base, f: Formula, lur: bool = False, hur: bool = False) -> Fraction:
    """Largest weight ``a`` with the base entailing ``<f : a>``."""
    return find_inc(s.with_item(WeightedFormula(negate_nnf(f), Fraction(1))), lur=lur, hur=hur)
