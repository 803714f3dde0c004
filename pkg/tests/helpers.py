from fractions import Fraction
from pathlib import Path

from possnc.formula import parse_base, parse_formula

EXAMPLES = Path(__file__).resolve().parents[1] / "src" / "possnc" / "examples"

# a Horn-NC formula that unit resolution refutes on its own
SELF_CLASH = "(and (or R -T) (or -P (and (or -P -R) (or -T (and -Q -P)) R)) P)"


def example_base(name):
    return parse_base((EXAMPLES / f"{name}.pnc").read_text())


def F(text):
    return parse_formula(text)


def W(text):
    return Fraction(text)
