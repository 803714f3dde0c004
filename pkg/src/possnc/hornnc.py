"""Recognition of negative and Horn-NC formulas in one bottom-up pass."""
from __future__ import annotations

from .formula import Base, Bottom, Conj, Formula, Literal, Top, simplify_constants


class ConstantInFormula(ValueError):
    """Raised when a recognizer meets true/false; simplify constants first."""


def classify(f: Formula, counter: list | None = None) -> tuple[bool, bool]:
    """Return ``(negative, horn_nc)`` for ``f``.

    Iterative post-order walk, so deep formulas do not hit the recursion
    limit. ``counter`` (a one-element list) is bumped once per visited node.
    """
    results: dict[int, tuple[bool, bool]] = {}
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Literal):
            results[id(node)] = (not node.positive, True)
            if counter is not None:
                counter[0] += 1
            continue
        if isinstance(node, (Top, Bottom)):
            raise ConstantInFormula(f"constant {node} inside formula")
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
            continue
        if counter is not None:
            counter[0] += 1
        flags = [results[id(c)] for c in node.children]
        negative = all(n for n, _ in flags)
        if isinstance(node, Conj):
            horn = all(h for _, h in flags)
        else:
            # at most one non-negative disjunct, and it must be Horn-NC
            non_negative = [h for n, h in flags if not n]
            horn = len(non_negative) <= 1 and all(non_negative)
        results[id(node)] = (negative, horn)
    return results[id(f)]


def is_negative(f: Formula) -> bool:
    return classify(f)[0]


def is_horn_nc(f: Formula) -> bool:
    return classify(f)[1]


def is_horn_nc_base(s: Base) -> bool:
    return not non_horn_items(s)


def non_horn_items(s: Base) -> list[int]:
    """Indexes of items that are not Horn-NC once constants are removed."""
    bad = []
    for i, item in enumerate(s):
        g = simplify_constants(item.formula)
        if isinstance(g, (Top, Bottom)):
            continue
        if not is_horn_nc(g):
            bad.append(i)
    return bad
