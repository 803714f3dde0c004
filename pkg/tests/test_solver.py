from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import F, W
from possnc.formula import Base, WeightedFormula, size
from possnc.semantics import inc_oracle, necessity_oracle
from possnc.solver import (
    CutSpec, NotHornNC, alpha_cut, entails, find_inc, is_consistent, solve,
)
from strategies import WEIGHTS, base_st, horn_st, literal_st

HORN_BASES = base_st(horn_st(max_leaves=8), min_size=0, max_size=5)


def base(*pairs):
    return Base(tuple(WeightedFormula(F(f), W(w)) for f, w in pairs))


class TestCuts:
    def test_weak(self, clash_base):
        assert [it.weight for it in alpha_cut(clash_base, CutSpec(W("0.7")))] == [W("0.8"), W("0.7")]

    def test_strict(self, clash_base):
        assert [it.weight for it in alpha_cut(clash_base, CutSpec(W("0.7"), strict=True))] == [W("0.8")]

    def test_threshold_range(self):
        with pytest.raises(ValueError):
            CutSpec(Fraction(0))


class TestFind:
    @pytest.mark.parametrize("name, inc", [
        ("clash_base", "0.6"), ("consistent_base", "0"), ("internal_base", "0.6"), ("chain_base", "0.7"),
    ])
    def test_worked_bases(self, request, name, inc):
        assert find_inc(request.getfixturevalue(name)) == W(inc)

    def test_chain(self, chain_base):
        res = solve(chain_base)
        assert res.chain == [W("0.5"), W("0.6"), W("0.7")]
        assert res.recursions == 3

    def test_accelerated_chain(self, chain_base):
        assert solve(chain_base, lur=True, hur=True).chain == [W("0.5"), W("0.6"), W("0.7")]

    def test_empty_base(self):
        assert find_inc(Base()) == 0 and is_consistent(Base())

    def test_constant_items(self):
        assert find_inc(base(("false", "0.4"), ("P", "1"))) == W("0.4")
        assert find_inc(base(("true", "0.4"), ("P", "1"))) == 0

    def test_refuses_non_horn(self):
        with pytest.raises(NotHornNC) as info:
            find_inc(base(("P", "1"), ("(or P Q)", "0.5")))
        assert info.value.indexes == [1]
        assert "item 2" in str(info.value)


class TestEntailment:
    def test_modus_ponens(self):
        assert entails(base(("P", "0.8"), ("(or -P Q)", "0.6")), F("Q")) == W("0.6")

    def test_disjunctive_query(self):
        assert entails(base(("P", "0.8")), F("(or P Q)")) == W("0.8")

    def test_not_entailed(self):
        assert entails(base(("P", "0.8")), F("R")) == 0

    def test_conjunctive_query(self):
        assert entails(base(("P", "0.8"), ("Q", "0.5")), F("(and P Q)")) == W("0.5")

    @given(HORN_BASES, literal_st())
    def test_literal_queries_match_oracle(self, b, lit):
        assert entails(b, lit) == necessity_oracle(b, lit)


class TestProperties:
    @given(HORN_BASES, st.booleans(), st.booleans())
    def test_matches_oracle(self, b, lur, hur):
        assert find_inc(b, lur=lur, hur=hur) == inc_oracle(b)

    @given(HORN_BASES)
    def test_cut_characterisation(self, b):
        inc = find_inc(b)
        for a in WEIGHTS:
            cut = alpha_cut(b, CutSpec(a))
            assert (inc >= a) == (not is_consistent(cut))

    @given(HORN_BASES, horn_st(max_leaves=6), st.sampled_from(WEIGHTS))
    def test_monotone(self, b, f, w):
        assert find_inc(b.with_item(WeightedFormula(f, w))) >= find_inc(b)

    @given(HORN_BASES)
    def test_bounds(self, b):
        res = solve(b)
        m = sum(size(it.formula) for it in b)
        k = len(b.weights())
        assert res.bound == m * max(k, 1)
        assert res.inferences <= res.bound
        assert res.recursions <= max(k, 1)

    @given(HORN_BASES)
    def test_chain_strictly_increases(self, b):
        chain = solve(b).chain
        assert chain == sorted(set(chain))
        assert (chain[-1] if chain else 0) == inc_oracle(b)
