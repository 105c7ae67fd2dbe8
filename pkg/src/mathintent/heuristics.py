"""Fallback intent inference for a few ambiguous notations.

Inferred intents address their arguments positionally: a reference ``$_k``
means the k-th (0-based) child element of the matched element. These names
never go through the ``arg`` search; intent resolution binds them directly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from .dom import Element, children_elements
from .syntax import ConceptLiteral, IntentExpr, Reference

BAR_CHARACTERS = {"|", "∣", "│"}
POSITIONAL = re.compile(r"_(\d+)\Z")


def positional(index: int) -> IntentExpr:
    return IntentExpr(Reference(f"_{index}"))


def positional_index(name: str) -> Optional[int]:
    m = POSITIONAL.match(name)
    return int(m.group(1)) if m else None


@dataclass(frozen=True)
class HeuristicRule:
    id: str
    matcher: Callable[[Element], bool]
    # returns None to stop the search without inferring anything
    producer: Callable[[Element], Optional[IntentExpr]]


def _is_bar(e: Element) -> bool:
    return e.name == "mo" and e.text in BAR_CHARACTERS


def _is_square_table(e: Element) -> bool:
    if e.name != "mtable":
        return False
    rows = [r for r in children_elements(e) if r.name in ("mtr", "mlabeledtr")]
    if not rows:
        return False
    widths = {len(children_elements(r)) - (r.name == "mlabeledtr") for r in rows}
    return widths == {len(rows)}


def _bars_match(e: Element) -> bool:
    # math is an inferred mrow
    if e.name not in ("mrow", "math"):
        return False
    kids = children_elements(e)
    return len(kids) == 3 and _is_bar(kids[0]) and _is_bar(kids[2])


def _bars_produce(e: Element) -> IntentExpr:
    inner = children_elements(e)[1]
    single_capital = (inner.name == "mi" and len(inner.text) == 1
                      and "A" <= inner.text <= "Z")
    name = "determinant" if single_capital or _is_square_table(inner) else "absolute-value"
    return IntentExpr(ConceptLiteral(name), (), (positional(1),))


def _script(e: Element, kind: str, text: str) -> bool:
    kids = children_elements(e)
    return (e.name == "msup" and len(kids) == 2
            and kids[1].name == kind and kids[1].text == text)


RULES = (
    HeuristicRule("vertical-bars", _bars_match, _bars_produce),
    HeuristicRule(
        "square",
        lambda e: _script(e, "mn", "2"),
        lambda e: IntentExpr(ConceptLiteral("power"), (), (positional(0), positional(1))),
    ),
    # x^T may be a power or a transpose; only the author can say which.
    HeuristicRule("superscript-T", lambda e: _script(e, "mi", "T"), lambda e: None),
)


def match_rule(e: Element) -> Optional[HeuristicRule]:
    for rule in RULES:
        if rule.matcher(e):
            return rule
    return None


def infer_intent(e: Element) -> Optional[IntentExpr]:
    rule = match_rule(e)
    return rule.producer(e) if rule else None
