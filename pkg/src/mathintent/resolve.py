"""Grounding of intent expressions into speech trees.

``build_intent_tree`` turns an element into an ``IntentTree``: author
intents first, then heuristic inference, then a structural mirror of the
markup. Invalid or dangling intents are reported and otherwise ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional, Union

from . import heuristics
from .dom import TOKEN_ELEMENTS, Element, children_elements, first_child_element
from .registry import Registry, default_registry
from .syntax import (ConceptLiteral, Empty, IntentExpr, IntentSyntaxError,
                     NumberLiteral, Reference, parse_intent)

NUMBER = re.compile(r"-?[0-9]+(\.[0-9]+)?\Z")

DIAGNOSTIC_CODES = frozenset({
    "XML_PARSE",
    "INTENT_SYNTAX",
    "DANGLING_REF",
    "SHADOWED_ARG",
    "UNKNOWN_CONCEPT",
    "UNKNOWN_PROPERTY",
    "EXTRA_FIXITY",
    "INFIX_ARITY",
})


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # error | warning | info
    code: str
    message: str
    source_position: tuple = (0, 0)

    def __post_init__(self):
        assert self.code in DIAGNOSTIC_CODES, self.code


@dataclass(frozen=True)
class ConceptNode:
    name: str
    properties: tuple = ()
    children: tuple = ()
    literal_speech: bool = False
    # produced by a heuristic rule rather than by the author
    inferred: bool = False


@dataclass(frozen=True)
class NumberNode:
    text: str


@dataclass(frozen=True)
class StructuralNode:
    kind: str
    properties: tuple = ()
    children: tuple = ()
    token_text: Optional[str] = None


IntentTree = Union[ConceptNode, NumberNode, StructuralNode]


@dataclass(frozen=True)
class BuildOptions:
    mode: str = "semantic"  # semantic | syntactic
    heuristics: bool = True


def resolve_reference(scope: Element, arg_name: str) -> Optional[Element]:
    """Depth-first search below ``scope`` for ``arg="arg_name"``.

    An element whose ``arg`` does not match is treated as a leaf, so the
    search never enters it. The scope's own ``arg`` is not examined.
    Returns None when nothing matches.
    """
    stack = list(reversed(children_elements(scope)))
    while stack:
        el = stack.pop()
        arg = el.get("arg")
        if arg is not None:
            if arg == arg_name:
                return el
            continue
        stack.extend(reversed(children_elements(el)))
    return None


class _Dangling(Exception):
    def __init__(self, name: str):
        self.name = name


def _with_properties(tree: IntentTree, props: tuple) -> IntentTree:
    if not props or isinstance(tree, NumberNode):
        return tree
    return replace(tree, properties=tree.properties + props)


class _TreeBuilder:
    def __init__(self, options: BuildOptions, registry: Registry):
        self.options = options
        self.registry = registry
        self.diagnostics: list[Diagnostic] = []

    def warn(self, code: str, message: str, e: Element):
        self.diagnostics.append(Diagnostic("warning", code, message, e.source_position))

    def build(self, e: Element) -> IntentTree:
        if self.options.mode != "syntactic":
            raw = e.get("intent")
            if raw is not None:
                tree = self.from_author_intent(e, raw)
                if tree is not None:
                    return tree
            if self.options.heuristics:
                expr = heuristics.infer_intent(e)
                if expr is not None:
                    return self.ground(expr, e, positional=True)
        return self.structural(e)

    def from_author_intent(self, e: Element, raw: str) -> Optional[IntentTree]:
        try:
            expr = parse_intent(raw)
        except IntentSyntaxError as exc:
            self.warn("INTENT_SYNTAX", f"intent {raw!r}: {exc.message} at offset {exc.offset}", e)
            return None
        if isinstance(expr.head, Empty):
            return _with_properties(self.structural(e), expr.properties)
        # Check every reference before building anything so that a dangling
        # one leaves no diagnostics from half-built arguments behind.
        for name in expr.references():
            if resolve_reference(e, name) is None:
                self.warn("DANGLING_REF", f"intent {raw!r}: no arg={name!r} below this element", e)
                return None
        return self.ground(expr, e)

    def lookup(self, scope: Element, name: str, positional: bool) -> Element:
        if positional:
            index = heuristics.positional_index(name)
            kids = children_elements(scope)
            if index is not None and index < len(kids):
                return kids[index]
        else:
            found = resolve_reference(scope, name)
            if found is not None:
                return found
        raise _Dangling(name)

    def ground(self, expr: IntentExpr, scope: Element, positional: bool = False) -> IntentTree:
        args = None
        if expr.arguments is not None:
            args = tuple(self.ground(a, scope, positional) for a in expr.arguments)
        head = expr.head
        if isinstance(head, ConceptLiteral):
            return ConceptNode(head.name, expr.properties, args or (),
                               literal_speech=head.name.startswith("_"),
                               inferred=positional)
        if isinstance(head, NumberLiteral):
            if args is None and not expr.properties:
                return NumberNode(head.text)
            return ConceptNode(head.text, expr.properties, args or (), inferred=positional)
        assert isinstance(head, Reference)
        target = self.build(self.lookup(scope, head.arg_name, positional))
        if args is None:
            return _with_properties(target, expr.properties)
        # a reference head applied to arguments: the target names the function
        if isinstance(target, ConceptNode):
            return ConceptNode(target.name, target.properties + expr.properties, args,
                               target.literal_speech, target.inferred)
        if isinstance(target, NumberNode):
            name = target.text
        else:
            name = target.token_text or target.kind
        return ConceptNode(name, expr.properties, args, inferred=positional)

    def structural(self, e: Element) -> IntentTree:
        if e.name in TOKEN_ELEMENTS:
            text = e.text
            if e.name == "mn" and NUMBER.match(text):
                return NumberNode(text)
            return StructuralNode(e.name, (), (), text)
        if e.name == "semantics":
            first = first_child_element(e)
            if first is None:
                return StructuralNode("mrow")
            return self.build(first)
        return StructuralNode(e.name, (), tuple(self.build(c) for c in children_elements(e)))


def build_intent_tree(e: Element, options: BuildOptions = BuildOptions(),
                      registry: Optional[Registry] = None):
    """Return ``(tree, diagnostics)`` for element ``e``."""
    builder = _TreeBuilder(options, registry or default_registry())
    try:
        tree = builder.build(e)
    except _Dangling as exc:  # pragma: no cover - positional refs are prevalidated by matchers
        raise AssertionError(f"heuristic produced unbound reference {exc.name}") from None
    return tree, builder.diagnostics


def lint_element(e: Element, registry: Optional[Registry] = None) -> list[Diagnostic]:
    """Check every ``intent``/``arg`` attribute at or below ``e``.

    Syntax errors and dangling references are errors here (they are only
    warnings while speaking, where the intent is silently ignored).
    """
    registry = registry or default_registry()
    out: list[Diagnostic] = []
    # (element, parsed intent) for every element with a valid intent
    referencing: list[tuple[Element, IntentExpr, list]] = []

    def visit(el: Element, ancestors: list):
        raw = el.get("intent")
        if raw is not None:
            check_intent(el, raw, ancestors)
        arg = el.get("arg")
        if arg is not None:
            check_shadowing(el, arg, ancestors)
        ancestors.append(el)
        for c in children_elements(el):
            visit(c, ancestors)
        ancestors.pop()

    def check_intent(el: Element, raw: str, ancestors):
        pos = el.source_position
        try:
            expr = parse_intent(raw)
        except IntentSyntaxError as exc:
            out.append(Diagnostic("error", "INTENT_SYNTAX",
                                  f"intent {raw!r}: {exc.message} at offset {exc.offset}", pos))
            return
        for name in dict.fromkeys(expr.references()):
            if resolve_reference(el, name) is None:
                out.append(Diagnostic("error", "DANGLING_REF",
                                      f"intent {raw!r}: no arg={name!r} below this element", pos))
        for name in dict.fromkeys(expr.concept_names()):
            if not name.startswith("_") and not registry.knows_concept(name):
                out.append(Diagnostic("info", "UNKNOWN_CONCEPT",
                                      f"concept {name!r} is not in the core or open lists", pos))
        for prop in dict.fromkeys(expr.all_properties()):
            if registry.classify_property(prop) == "unknown":
                out.append(Diagnostic("info", "UNKNOWN_PROPERTY",
                                      f"property {prop!r} is not recognized", pos))

    def check_shadowing(el: Element, arg: str, ancestors):
        users = []
        for anc in ancestors:
            raw = anc.get("intent")
            if raw is None:
                continue
            try:
                expr = parse_intent(raw)
            except IntentSyntaxError:
                continue
            if arg in set(expr.references()):
                users.append(anc)
        if users and all(resolve_reference(u, arg) is not el for u in users):
            out.append(Diagnostic("warning", "SHADOWED_ARG",
                                  f"arg={arg!r} cannot be reached from any intent that references it",
                                  el.source_position))

    visit(e, [])
    return out


def dump_tree(tree: IntentTree, indent: int = 0) -> str:
    """One node per line, two spaces of indentation per level."""
    lines: list[str] = []

    def walk(t: IntentTree, depth: int):
        pad = "  " * depth
        if isinstance(t, ConceptNode):
            label = ("~" if t.inferred else "") + ":".join((t.name,) + t.properties)
            lines.append(pad + label)
        elif isinstance(t, NumberNode):
            lines.append(f"{pad}#{t.text}")
        else:
            label = f"<{t.kind}>" + "".join(":" + p for p in t.properties)
            if t.token_text is not None:
                label += f' "{t.token_text}"'
            lines.append(pad + label)
        for c in getattr(t, "children", ()):
            walk(c, depth + 1)

    walk(tree, indent)
    return "\n".join(lines)
