"""Possibilistic non-clausal unit resolution.

The rules work on formula trees by deleting, from some disjunction, the
disjunct that is conjunctively tied to a literal made false by a unit. All
the bookkeeping of which formula was derived from what lives in
:class:`Derivation`.

Strategy of :func:`saturate` (depth first, deterministic):

0. constants and redundant connectives are removed; identical formulas keep
   only their highest weight;
1. every item is closed under resolution with its own top-level literals;
2. top-level literals of every item become pending units;
3. pending units are popped from a stack. A popped unit resolves away every
   complementary occurrence in every item, and the units those resolvents
   expose are pushed on top.

Each item is rewritten in place: once a unit has been resolved into it, later
units work on the reduced version. The weight of a version can only go
down, which is harmless because the caller re-runs on the strict cut (see
:mod:`possnc.solver`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .formula import (
    Base, Bottom, Conj, Disj, EMPTY_DISJ, Formula, Literal, Position, Top,
    WeightedFormula, format_weight, locate_literal, node_at, render,
    replace_at, simplify_constants, size,
)

UR_SIGMA = "UR_SIGMA"
UR_P = "UR_P"
LUR = "LUR"
HUR = "HUR"
SIMPLIFY = "SIMPLIFY"
MIND = "MIND"
MAXN = "MAXN"
RESOLUTION_RULES = frozenset({UR_SIGMA, UR_P, LUR, HUR})


class RuleError(ValueError):
    """A rule was applied where its pattern does not match."""


# -- structural simplification --------------------------------------------

def is_empty_clause(f: Formula) -> bool:
    return f == EMPTY_DISJ or isinstance(f, Bottom)


def simplify_structural(f: Formula) -> Formula:
    """Apply the four simplification rules bottom-up until none applies.

    ``(or)`` inside a disjunction is dropped, a conjunction holding ``(or)``
    collapses to ``(or)``, single-child connectives are unwrapped and nested
    connectives of the same kind are spliced into their parent.
    """
    if isinstance(f, Literal) or isinstance(f, Top):
        return f
    if isinstance(f, Bottom):
        return EMPTY_DISJ
    is_conj = isinstance(f, Conj)
    kind = type(f)
    out = []
    for child in f.children:
        c = simplify_structural(child)
        if c == EMPTY_DISJ:
            if is_conj:
                return EMPTY_DISJ
            continue
        if type(c) is kind:
            out.extend(c.children)
        else:
            out.append(c)
    if len(out) == 1:
        return out[0]
    return kind(tuple(out))


# -- C/D splitting ---------------------------------------------------------

@dataclass(frozen=True)
class CDSplit:
    """Where ``(or C D...)`` sits around one complementary occurrence.

    ``disj_pos`` addresses the enclosing disjunction, ``c_child_index`` the
    disjunct that is conjunctively tied to the occurrence.
    """

    disj_pos: Position
    c_child_index: int
    c_formula: Formula
    d_children: tuple

    @property
    def c_pos(self) -> Position:
        return self.disj_pos + (self.c_child_index,)

    @property
    def d_formula(self) -> Disj:
        return Disj(self.d_children)


def extract_cd(pi: Formula, occ: Position) -> Optional[CDSplit]:
    """Split around the literal at ``occ``.

    Climbs from the occurrence through conjunctions. Returns ``None`` when
    the climb reaches the root, that is when the occurrence is a conjunct of
    the whole formula. A one-child enclosing disjunction gives an empty D.
    """
    occ = tuple(occ)
    if not isinstance(node_at(pi, occ), Literal):
        raise RuleError(f"position {occ} does not hold a literal")
    j = len(occ)
    while j > 0 and isinstance(node_at(pi, occ[:j - 1]), Conj):
        j -= 1
    if j == 0:
        return None
    disj_pos = occ[:j - 1]
    disj = node_at(pi, disj_pos)
    i = occ[j - 1]
    return CDSplit(disj_pos, i, disj.children[i], disj.children[:i] + disj.children[i + 1:])


def _remove_disjuncts(f: Formula, removals: dict) -> Formula:
    """Drop ``removals[pos]`` child indexes from the disjunctions at ``pos``."""
    prefixes = {p[:i] for p in removals for i in range(len(p) + 1)}

    def go(node, pos):
        if pos not in prefixes:
            return node
        drop = removals.get(pos, ())
        kids = tuple(go(c, pos + (i,)) for i, c in enumerate(node.children) if i not in drop)
        return type(node)(kids)

    return go(f, ())


def resolve_at(pi: Formula, occ: Position) -> Formula:
    """Delete C of the occurrence at ``occ`` (the raw, unsimplified result).

    An occurrence that is conjunctive to the root falsifies the whole
    formula, so the result is ``(or)``.
    """
    split = extract_cd(pi, occ)
    if split is None:
        return EMPTY_DISJ
    return replace_at(pi, split.disj_pos, split.d_formula)


def _unit_literal(unit: WeightedFormula) -> Literal:
    f = unit.formula
    if isinstance(f, Disj) and len(f.children) == 1:
        f = f.children[0]
    if not isinstance(f, Literal):
        raise RuleError(f"{render(unit.formula)} is not a unit clause")
    return f


def ur_sigma_step(unit: WeightedFormula, target: WeightedFormula, occ: Position) -> WeightedFormula:
    lit = _unit_literal(unit)
    if node_at(target.formula, occ) != lit.complement():
        raise RuleError(f"no {lit.complement()} at {tuple(occ)}")
    return WeightedFormula(resolve_at(target.formula, occ), min(unit.weight, target.weight))


def hur_step(unit: WeightedFormula, targets: Sequence[tuple]) -> list:
    """Resolve one unit against several occurrences at once.

    Occurrences inside the same target formula are rewritten in a single
    copy of it. Results come out in order of first mention of each target.
    """
    lit = _unit_literal(unit)
    neg = lit.complement()
    groups: dict = {}
    for target, occ in targets:
        occ = tuple(occ)
        if node_at(target.formula, occ) != neg:
            raise RuleError(f"no {neg} at {occ}")
        groups.setdefault(target, []).append(occ)
    results = []
    for target, occs in groups.items():
        if len(set(occs)) != len(occs):
            raise RuleError("the same occurrence was given twice")
        weight = min(unit.weight, target.weight)
        results.append(WeightedFormula(_resolve_many(target.formula, occs), weight))
    return results


def _resolve_many(pi: Formula, occs: Iterable[Position]) -> Formula:
    splits = []
    for occ in occs:
        split = extract_cd(pi, occ)
        if split is None:
            return EMPTY_DISJ
        splits.append((occ, split))
    for occ, _ in splits:
        for other, split in splits:
            if other != occ and occ[:len(split.c_pos)] == split.c_pos:
                raise RuleError(f"occurrence {occ} lies inside C of {other}; apply sequentially")
    removals: dict = {}
    for _, split in splits:
        removals.setdefault(split.disj_pos, set()).add(split.c_child_index)
    return _remove_disjuncts(pi, removals)


def _select_disjoint(pi: Formula, occs: Sequence[Position]) -> list:
    """Greedy left-to-right choice of occurrences whose C regions are disjoint."""
    chosen = []
    for occ in occs:
        split = extract_cd(pi, occ)
        if split is None:
            return [occ]
        if any(occ[:len(c)] == c or c_occ[:len(split.c_pos)] == split.c_pos
               for c_occ, c in chosen):
            continue
        chosen.append((occ, split.c_pos))
    return [occ for occ, _ in chosen]


def _conjunctive_scope(pi: Formula, pos: Position) -> Optional[Position]:
    """Topmost node reachable from ``pos`` through conjunction parents."""
    j = len(pos)
    while j > 0 and isinstance(node_at(pi, pos[:j - 1]), Conj):
        j -= 1
    return None if j == len(pos) else pos[:j]


def lur_step(item: WeightedFormula, lit_occ: Position, neg_occ: Position) -> WeightedFormula:
    """Resolve a literal against a complement that shares its conjunctive scope."""
    pi = item.formula
    lit_occ, neg_occ = tuple(lit_occ), tuple(neg_occ)
    lit = node_at(pi, lit_occ)
    if not isinstance(lit, Literal) or node_at(pi, neg_occ) != lit.complement():
        raise RuleError("positions do not hold a complementary pair")
    scope = _conjunctive_scope(pi, lit_occ)
    if scope is None:
        raise RuleError(f"{lit} at {lit_occ} is not a conjunct of any sub-formula")
    split = extract_cd(pi, neg_occ)
    if (split is None or len(split.disj_pos) <= len(scope)
            or split.disj_pos[:len(scope)] != scope
            or lit_occ[:len(split.disj_pos)] == split.disj_pos):
        raise RuleError(f"{lit.complement()} at {neg_occ} is not in the conjunctive scope of {lit}")
    return WeightedFormula(replace_at(pi, split.disj_pos, split.d_formula), item.weight)


# -- weight rules ----------------------------------------------------------

def min_d(item: WeightedFormula) -> list:
    if not isinstance(item.formula, Conj):
        raise RuleError(f"{render(item.formula)} is not a conjunction")
    return [WeightedFormula(c, item.weight) for c in item.formula.children]


def max_n(a: WeightedFormula, b: WeightedFormula) -> WeightedFormula:
    fa, fb = simplify_structural(a.formula), simplify_structural(b.formula)
    if fa != fb:
        raise RuleError(f"{render(a.formula)} and {render(b.formula)} differ")
    return WeightedFormula(fa, max(a.weight, b.weight))


# -- propositional saturation ----------------------------------------------

def _top_literals(f: Formula) -> list:
    if isinstance(f, Conj):
        return [c for c in f.children if isinstance(c, Literal)]
    return []


def _lur_candidate(pi: Formula):
    """First (lit_occ, neg_occ) pair below the root where LUR applies."""
    stack = [(pi, ())]
    while stack:
        node, pos = stack.pop()
        if isinstance(node, Literal) or isinstance(node, (Top, Bottom)):
            continue
        if isinstance(node, Conj) and pos:
            for i, child in enumerate(node.children):
                if not isinstance(child, Literal):
                    continue
                for rel in locate_literal(node, child.complement()):
                    neg_occ = pos + rel
                    split = extract_cd(pi, neg_occ)
                    if split is not None and len(split.disj_pos) > len(pos) \
                            and split.disj_pos[:len(pos)] == pos:
                        return pos + (i,), neg_occ
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[i], pos + (i,)))
    return None


def _ur_p_rounds(f: Formula, lur: bool = False, hur: bool = False):
    """Yield ``(rule, raw, simplified)`` until no intra-formula step applies."""
    current = simplify_structural(f)
    while not is_empty_clause(current):
        step = None
        for lit in _top_literals(current):
            occs = locate_literal(current, lit.complement())
            if not occs:
                continue
            if hur and len(occs) > 1:
                raw = _resolve_many(current, _select_disjoint(current, occs))
                step = (HUR, raw)
            else:
                step = (UR_P, resolve_at(current, occs[0]))
            break
        if step is None and lur:
            cand = _lur_candidate(current)
            if cand is not None:
                step = (LUR, lur_step(WeightedFormula(current, 1), *cand).formula)
        if step is None:
            return
        rule, raw = step
        current = simplify_structural(raw)
        yield rule, raw, current


@dataclass(frozen=True)
class URPResult:
    inconsistent: bool
    formula: Formula
    steps: tuple  # (rule, raw, simplified) triples


def ur_p_saturate(item: WeightedFormula, lur: bool = False, hur: bool = False) -> URPResult:
    """Close one formula under resolution with its own top-level literals."""
    from .hornnc import is_horn_nc

    f = simplify_structural(simplify_constants(item.formula))
    if not isinstance(f, (Top, Bottom)) and not is_empty_clause(f) and not is_horn_nc(f):
        raise RuleError(f"{render(item.formula)} is not Horn-NC")
    steps = tuple(_ur_p_rounds(f, lur, hur))
    final = steps[-1][2] if steps else f
    return URPResult(is_empty_clause(final), final, steps)


# -- derivations -----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    rule: str
    premises: tuple
    conclusion: WeightedFormula
    item: int  # id given to the conclusion

    def text(self, number: int) -> str:
        prem = ",".join(f"#{p}" for p in self.premises) or "-"
        return (f"step {number}: {self.rule} {prem} -> "
                f"{render(self.conclusion.formula)} : {format_weight(self.conclusion.weight)}")


@dataclass(frozen=True)
class EmptyClauseFound:
    weight: Fraction
    item: int


@dataclass(frozen=True)
class Fixpoint:
    pass


@dataclass
class Derivation:
    items: list = field(default_factory=list)       # id -> WeightedFormula
    steps: list = field(default_factory=list)
    outcome: object = None
    inferences: int = 0
    bound: int = 0
    units: list = field(default_factory=list)       # (Literal, weight, item id)
    n_inputs: int = 0

    def lines(self) -> list:
        out = [f"item #{i}: {wf}" for i, wf in enumerate(self.items[:self.n_inputs])]
        out += [s.text(n) for n, s in enumerate(self.steps, start=1)]
        if isinstance(self.outcome, EmptyClauseFound):
            out.append(f"empty clause at {format_weight(self.outcome.weight)}")
        else:
            out.append("fixpoint")
        return out

    def structured(self) -> dict:
        return {
            "inputs": [{"id": i, "formula": render(wf.formula), "weight": format_weight(wf.weight)}
                       for i, wf in enumerate(self.items[:self.n_inputs])],
            "steps": [{"step": n, "rule": s.rule, "premises": list(s.premises), "id": s.item,
                       "formula": render(s.conclusion.formula),
                       "weight": format_weight(s.conclusion.weight)}
                      for n, s in enumerate(self.steps, start=1)],
            "outcome": ({"empty_clause": format_weight(self.outcome.weight)}
                        if isinstance(self.outcome, EmptyClauseFound) else "fixpoint"),
            "inferences": self.inferences,
        }

    def conclusions(self) -> list:
        return [s.conclusion for s in self.steps]


class _Engine:
    def __init__(self, base: Base, lur: bool, hur: bool):
        self.d = Derivation()
        self.lur, self.hur = lur, hur
        self.forms: list = []      # lineage -> current formula
        self.weights: list = []    # lineage -> current weight
        self.ids: list = []        # lineage -> item id of current version
        self.index: dict = {}      # literal -> lineages whose input holds it
        self.stack: list = []      # pending (literal, weight, item id)
        self.seen: set = set()     # (literal, weight) pairs ever queued
        self.done: dict = {}       # literal -> (weight, item) it was processed at
        self.d.items = list(base)
        self.d.n_inputs = len(base)
        m = sum(size(it.formula) for it in base)
        self.d.bound = m * max(1, len(base.weights()))

    # bookkeeping
    def add(self, rule, premises, wf) -> int:
        self.d.items.append(wf)
        item = len(self.d.items) - 1
        self.d.steps.append(Step(rule, tuple(premises), wf, item))
        if rule in RESOLUTION_RULES:
            self.d.inferences += 1
            assert self.d.inferences <= self.d.bound, "inference bound exceeded"
        return item

    def found(self, weight, item):
        self.d.outcome = EmptyClauseFound(weight, item)
        return True

    def new_version(self, lin, rule, premises, raw, weight) -> bool:
        """Record a resolvent and its simplification; True on the empty clause."""
        item = self.add(rule, premises, WeightedFormula(raw, weight))
        simple = simplify_structural(raw)
        if simple != raw:
            item = self.add(SIMPLIFY, (item,), WeightedFormula(simple, weight))
        self.forms[lin], self.weights[lin], self.ids[lin] = simple, weight, item
        if is_empty_clause(simple):
            return self.found(weight, item)
        return False

    def expose(self, lin) -> list:
        """Queue entries for the top-level literals of a lineage's version."""
        f, w, item = self.forms[lin], self.weights[lin], self.ids[lin]
        fresh = []
        if isinstance(f, Literal):
            if (f, w) not in self.seen:
                self.seen.add((f, w))
                fresh.append((f, w, item))
        for lit in _top_literals(f):
            if (lit, w) not in self.seen:
                self.seen.add((lit, w))
                fresh.append((lit, w, self.add(MIND, (item,), WeightedFormula(lit, w))))
        self.d.units.extend(fresh)
        return fresh

    def push(self, entries):
        self.stack.extend(("unit",) + e for e in reversed(entries))

    # phases
    def normalize(self):
        best: dict = {}
        order = []
        simplified = {}
        for i, wf in enumerate(self.d.items[:self.d.n_inputs]):
            f = simplify_constants(wf.formula)
            if isinstance(f, Top):
                continue
            g = simplified[i] = simplify_structural(f)
            item = i
            if g != wf.formula:
                item = self.add(SIMPLIFY, (i,), WeightedFormula(g, wf.weight))
            if g in best:
                other = best[g]
                keep, drop = (other, item) if self.d.items[other].weight >= wf.weight else (item, other)
                self.add(MAXN, (drop, keep), self.d.items[keep])
                best[g] = keep
                order[order.index(other)] = keep
            else:
                best[g] = item
                order.append(item)
        for item in order:
            wf = self.d.items[item]
            f = wf.formula if item >= self.d.n_inputs else simplified[item]
            lin = len(self.forms)
            self.forms.append(f)
            self.weights.append(wf.weight)
            self.ids.append(item)
            for node in _literal_nodes(f):
                lins = self.index.setdefault(node, [])
                if not lins or lins[-1] != lin:
                    lins.append(lin)

    def run(self) -> Derivation:
        self.normalize()
        for lin, f in enumerate(self.forms):
            if is_empty_clause(f):
                self.found(self.weights[lin], self.ids[lin])
                return self.d
        for lin in range(len(self.forms)):
            for rule, raw, _ in _ur_p_rounds(self.forms[lin], self.lur, self.hur):
                if self.new_version(lin, rule, (self.ids[lin],), raw, self.weights[lin]):
                    return self.d
        seeds = []
        for lin in range(len(self.forms)):
            seeds.extend(self.expose(lin))
        self.push(seeds)
        while self.stack:
            entry = self.stack.pop()
            if entry[0] == "unit":
                _, lit, a, unit_item = entry
                held = self.done.get(lit)
                if held is not None and held[0] >= a:
                    self.add(MAXN, (unit_item, held[1]), WeightedFormula(lit, held[0]))
                    continue
                self.done[lit] = (a, unit_item)
                start = 0
            else:
                _, lit, a, unit_item, start = entry
            if self.scan(lit, a, unit_item, start):
                return self.d
        self.d.outcome = Fixpoint()
        return self.d

    def scan(self, lit, a, unit_item, start) -> bool:
        """Resolve ``lit`` into the lineages indexed under its complement.

        Stops early when a lineage exposes new units: those go on the stack
        above a frame that resumes this scan.
        """
        neg = lit.complement()
        lins = self.index.get(neg, ())
        for k in range(start, len(lins)):
            lin = lins[k]
            fresh = []
            while True:
                current = self.forms[lin]
                occs = locate_literal(current, neg)
                if not occs:
                    break
                same = lit in _top_literals(current)
                if self.hur and len(occs) > 1:
                    rule, raw = HUR, _resolve_many(current, _select_disjoint(current, occs))
                else:
                    rule, raw = (UR_P if same else UR_SIGMA), resolve_at(current, occs[0])
                premises = (self.ids[lin],) if same else (unit_item, self.ids[lin])
                if self.new_version(lin, rule, premises, raw, min(a, self.weights[lin])):
                    return True
                fresh.extend(self.expose(lin))
            if fresh:
                self.stack.append(("scan", lit, a, unit_item, k + 1))
                self.push(fresh)
                return False
        return False


def _literal_nodes(f: Formula) -> list:
    seen, out = set(), []
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Literal):
            if node not in seen:
                seen.add(node)
                out.append(node)
        elif isinstance(node, (Conj, Disj)):
            stack.extend(node.children)
    return out


def run_engine(s: Base, lur: bool = False, hur: bool = False) -> Derivation:
    """The derivation alone, without assembling the extended base."""
    return _Engine(s, lur, hur).run()


def saturate(s: Base, lur: bool = False, hur: bool = False) -> tuple:
    """Run the calculus until the first empty clause or a fixpoint.

    Returns the :class:`Derivation` and the extended base: inputs plus every
    conclusion, with MaxN-dominated duplicates dropped.
    """
    d = run_engine(s, lur, hur)
    best: dict = {}
    for wf in d.items:
        key = simplify_structural(wf.formula)
        if key not in best or best[key].weight < wf.weight:
            best[key] = WeightedFormula(key, wf.weight)
    return d, Base(tuple(best.values()))
