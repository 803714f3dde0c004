"""Possibilistic reasoning over Horn non-clausal formulas."""
from .formula import (
    Base, Conj, Disj, Literal, ParseError, WeightedFormula, negate_nnf,
    parse_base, parse_formula, render, simplify_constants,
)
from .hornnc import is_horn_nc, is_horn_nc_base, is_negative
from .semantics import cl_transform, inc_oracle, is_horn_clausal, necessity_oracle
from .solver import NotHornNC, entails, find_inc, is_consistent, solve

__all__ = [
    "Base", "Conj", "Disj", "Literal", "ParseError", "WeightedFormula",
    "negate_nnf", "parse_base", "parse_formula", "render", "simplify_constants",
    "is_horn_nc", "is_horn_nc_base", "is_negative", "cl_transform", "inc_oracle",
    "is_horn_clausal", "necessity_oracle", "NotHornNC", "entails", "find_inc",
    "is_consistent", "solve",
]
