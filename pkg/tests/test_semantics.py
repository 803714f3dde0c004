from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import SELF_CLASH, F
from possnc.formula import Base, Conj, Disj, Literal, WeightedFormula, propositions
from possnc.semantics import (
    BudgetExceeded, ClausalFormula, UnboundProposition, cl_transform, evaluate,
    inc_oracle, inc_oracle_cuts, interpretations, is_consistent_oracle,
    is_horn_clausal, necessity_oracle, pi_sigma, truth_table,
)
from strategies import base_st, formula_st

P, Q, R = (Literal(x) for x in "PQR")
nP, nQ = Literal("P", False), Literal("Q", False)
PROPS5 = ("A", "B", "C", "D", "E")


def clause(*lits):
    return tuple(F(x) for x in lits)


class TestEvaluate:
    def test_empty_disjunction_is_false(self):
        assert evaluate({}, Disj(())) == 0

    def test_clause_falsified(self):
        assert evaluate({"P": 1, "Q": 0}, Disj((nP, Q))) == 0

    def test_conjunction(self):
        assert evaluate({"P": 1, "Q": 0}, Conj((P, Disj((nQ,))))) == 1

    def test_unbound(self):
        with pytest.raises(UnboundProposition):
            evaluate({"P": 1}, Conj((P, Q)))

    @given(formula_st())
    def test_truth_table_matches_evaluate(self, f):
        names = sorted(propositions(f))
        table = truth_table(f, names)
        for i, w in enumerate(_assignments_in_bit_order(names)):
            assert (table >> i) & 1 == evaluate(w, f)


def _assignments_in_bit_order(names):
    for i in range(1 << len(names)):
        yield {n: (i >> j) & 1 for j, n in enumerate(names)}


class TestConsistency:
    def test_direct_contradiction(self):
        assert not is_consistent_oracle(Conj((P, Disj((nP,)))))

    def test_literal(self):
        assert is_consistent_oracle(P)

    def test_self_clashing_formula(self):
        assert not is_consistent_oracle(F(SELF_CLASH))

    def test_budget(self):
        big = Conj(tuple(Literal(f"X{i}") for i in range(5)))
        with pytest.raises(BudgetExceeded):
            is_consistent_oracle(big, budget=4)


class TestPossibility:
    def test_all_satisfied(self):
        assert pi_sigma({"P": 1}, Base((WeightedFormula(P, Fraction(4, 5)),))) == 1

    def test_one_falsified(self):
        assert pi_sigma({"P": 0}, Base((WeightedFormula(P, Fraction(4, 5)),))) == Fraction(1, 5)

    def test_first_worked_base(self, clash_base):
        # only (or -P -Q) : 0.7 is falsified when P and Q both hold
        assert pi_sigma({"P": 1, "Q": 1}, clash_base) == Fraction(3, 10)


class TestInconsistencyDegree:
    def test_first_worked_base(self, clash_base):
        assert inc_oracle(clash_base) == Fraction(3, 5)

    def test_consistent_worked_base(self, consistent_base):
        assert inc_oracle(consistent_base) == 0

    def test_chained_worked_base(self, chain_base):
        assert inc_oracle(chain_base) == Fraction(7, 10)

    def test_empty_base(self):
        assert inc_oracle(Base()) == 0

    @given(base_st(formula_st(max_leaves=6), max_size=5))
    def test_two_definitions_agree(self, base):
        assert inc_oracle(base) == inc_oracle_cuts(base)

    @given(base_st(formula_st(max_leaves=6), max_size=5))
    def test_degree_is_zero_or_a_weight(self, base):
        inc = inc_oracle(base)
        assert inc == 0 or inc in base.weights()

    @given(base_st(formula_st(max_leaves=6), max_size=5))
    def test_cuts_are_monotone(self, base):
        consistent = [a for a in base.weights()
                      if inc_oracle(Base(tuple(i for i in base if i.weight >= a))) == 0]
        for a in consistent:
            assert all(b in consistent for b in base.weights() if b >= a)


class TestNecessity:
    def test_stated_literal(self):
        s = Base((WeightedFormula(P, Fraction(4, 5)),))
        assert necessity_oracle(s, P) == Fraction(4, 5)

    def test_modus_ponens(self):
        s = Base((WeightedFormula(P, Fraction(4, 5)), WeightedFormula(Disj((nP, Q)), Fraction(3, 5))))
        assert necessity_oracle(s, Q) == Fraction(3, 5)

    def test_unrelated(self):
        s = Base((WeightedFormula(P, Fraction(4, 5)),))
        assert necessity_oracle(s, R) == 0


class TestClausal:
    def test_one_distribution(self):
        assert cl_transform(Disj((P, Conj((Q, R))))).clauses == (clause("P", "Q"), clause("P", "R"))

    def test_two_conjunctions(self):
        phi1 = F("(or (and -Q -S) (and R P))")
        assert cl_transform(phi1).clauses == (
            clause("-Q", "R"), clause("-Q", "P"), clause("-S", "R"), clause("-S", "P"))

    def test_literal(self):
        assert cl_transform(P).clauses == ((P,),)

    def test_duplicates_kept(self):
        assert cl_transform(Disj((P, P))).clauses == ((P, P),)

    def test_budget(self):
        wide = Disj(tuple(Conj((Literal(f"A{i}"), Literal(f"B{i}"))) for i in range(6)))
        with pytest.raises(BudgetExceeded):
            cl_transform(wide, budget=32)

    @given(formula_st(props=PROPS5, max_leaves=10))
    def test_equivalent(self, f):
        c = cl_transform(f)
        for w in interpretations(sorted(propositions(f))):
            assert c.evaluate(w) == evaluate(w, f)

    @pytest.mark.parametrize("clauses, horn", [
        ((clause("-P", "Q"),), True),
        ((clause("P", "Q"),), False),
        ((), True),
    ])
    def test_horn_clausal(self, clauses, horn):
        assert is_horn_clausal(ClausalFormula(clauses)) is horn

    def test_horn_nc_example_has_horn_clausal_form(self):
        assert is_horn_clausal(cl_transform(F("(or (and -Q -S) (and R P))")))


@given(st.lists(st.sampled_from(("P", "Q", "R")), unique=True))
def test_interpretations_are_total(names):
    ws = list(interpretations(names))
    assert len(ws) == 2 ** len(names)
    assert len({tuple(sorted(w.items())) for w in ws}) == len(ws)
