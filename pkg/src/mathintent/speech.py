"""Render intent trees to English speech strings."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .dom import Document, Element
from .registry import STYLES, Registry, default_registry
from .resolve import (BuildOptions, ConceptNode, Diagnostic, IntentTree, NumberNode,
                      StructuralNode, build_intent_tree)

MODES = ("semantic", "syntactic")

CHEMISTRY_OPERATORS = {"=": "double bond", "≡": "triple bond", "→": "yields", "⇌": "is in equilibrium with"}
EXPONENT_WORDS = {"2": "squared", "3": "cubed"}
PRIMES = frozenset({"'", "′", "″", "‴"})
ROOT_WORDS = {"2": "square root", "3": "cube root"}
SILENT_ELEMENTS = frozenset({"mspace", "mphantom", "mglyph", "malignmark", "maligngroup",
                             "none", "mprescripts", "annotation", "annotation-xml"})
TABLE_WORDING = ("system-of-equations", "lines", "matrix", "piecewise")

_ROMAN = {"I": 1, "V": 5, "X": 10, "L": 50, "C": 100, "D": 500, "M": 1000}
_ROMAN_FORM = re.compile(r"M{0,4}(CM|CD|D?C{0,3})(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})\Z")


@dataclass(frozen=True)
class SpeechOptions:
    style: str = "medium"
    mode: str = "semantic"
    heuristics: bool = True
    language: str = "en"
    grouping_markers: bool = False

    def __post_init__(self):
        if self.style not in STYLES:
            raise ValueError(f"unknown style {self.style!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    def build_options(self) -> BuildOptions:
        return BuildOptions(self.mode, self.heuristics)


@dataclass
class SpeechOutput:
    text: str
    diagnostics: list = field(default_factory=list)


def normalize(text: str) -> str:
    text = re.sub(r"\s+", " ", text).strip()
    return re.sub(r" ([,:])", r"\1", text)


def _words(*parts: str) -> str:
    return " ".join(p for p in parts if p)


def _count(n: int, noun: str) -> str:
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def roman_to_int(text: str) -> Optional[int]:
    upper = text.upper()
    if not upper or not _ROMAN_FORM.match(upper):
        return None
    total = 0
    for i, ch in enumerate(upper):
        value = _ROMAN[ch]
        if i + 1 < len(upper) and _ROMAN[upper[i + 1]] > value:
            total -= value
        else:
            total += value
    return total


def join_with_and(items: list) -> str:
    if len(items) < 2:
        return _words(*items)
    return ", ".join(items[:-1]) + " and " + items[-1]


def instantiate(template: str, args: list) -> str:
    """Fill a concept template (``#k``, ``#all{sep}``, ``#last{word}``)."""
    named = {int(k) for k in re.findall(r"#(\d)", template)}
    rest = [a for i, a in enumerate(args, 1) if i not in named]
    last = re.search(r"#last\{([^{}]*)\}", template)

    def fill_all(m: re.Match) -> str:
        sep = m.group(1)
        if last and len(rest) >= 2:
            return f" {sep} ".join(rest[:-1]) + f" {last.group(1)} " + rest[-1]
        return f" {sep} ".join(rest)

    out = re.sub(r"#last\{[^{}]*\}", "", template)
    out = re.sub(r"#all\{([^{}]*)\}", fill_all, out)
    out = re.sub(r"#(\d)", lambda m: args[int(m.group(1)) - 1] if int(m.group(1)) <= len(args) else "", out)
    return normalize(out)


def _number_text(t: IntentTree) -> Optional[str]:
    if isinstance(t, NumberNode):
        return t.text
    if isinstance(t, StructuralNode) and t.kind == "mn":
        return t.token_text
    return None


class _Speaker:
    def __init__(self, opts: SpeechOptions, registry: Registry):
        self.opts = opts
        self.registry = registry
        self.diagnostics: list[Diagnostic] = []

    def note(self, severity: str, code: str, message: str):
        d = Diagnostic(severity, code, message)
        if d not in self.diagnostics:
            self.diagnostics.append(d)

    def spoken_name(self, name: str) -> str:
        if name in self.registry.characters:
            return self.registry.characters[name]
        return name.replace("-", " ").replace("_", " ")

    def check_properties(self, props: tuple) -> list:
        fixities = []
        for p in props:
            cls = self.registry.classify_property(p)
            if cls == "fixity":
                fixities.append(p)
            elif cls == "unknown":
                self.note("info", "UNKNOWN_PROPERTY", f"property {p!r} ignored")
        if len(fixities) > 1:
            self.note("info", "EXTRA_FIXITY",
                      f"using {fixities[0]!r}; ignoring {', '.join(fixities[1:])}")
        return fixities

    # -- entry point -------------------------------------------------------
    def speak(self, t: IntentTree, chem: bool = False, prev_number: Optional[str] = None) -> str:
        if isinstance(t, NumberNode):
            return t.text
        if isinstance(t, ConceptNode):
            return self.concept(t, chem or "chemical-equation" in t.properties)
        return self.structural(t, chem or "chemical-equation" in t.properties, prev_number)

    def sequence(self, children, chem: bool) -> list:
        out = []
        prev = None
        for c in children:
            out.append(self.speak(c, chem, prev))
            number = _number_text(c)
            if number is not None:
                prev = number
        return out

    # -- concepts ----------------------------------------------------------
    def concept(self, t: ConceptNode, chem: bool) -> str:
        fixities = self.check_properties(t.properties)
        explicit = fixities[0] if fixities else None
        args = self.sequence(t.children, chem)
        if t.literal_speech:
            name = t.name[1:].replace("_", " ")
            return self.generic(name, explicit or "prefix", args)
        entry = self.registry.lookup_concept(t.name, len(args))
        if entry is None:
            return self.generic(self.spoken_name(t.name), explicit or "function", args)
        fixity = explicit or entry.default_fixity
        if fixity == entry.default_fixity and entry.templates:
            if t.name == "power" and len(t.children) == 2:
                word = EXPONENT_WORDS.get(_number_text(t.children[1]) or "")
                if word:
                    return _words(args[0], word)
            return instantiate(entry.templates[self.opts.style], args)
        return self.generic(self.spoken_name(t.name), fixity, args)

    def generic(self, name: str, fixity: str, args: list) -> str:
        if fixity == "infix" and len(args) < 2:
            self.note("warning", "INFIX_ARITY",
                      f"infix {name!r} needs two or more arguments; spoken as a function")
            fixity = "function"
        if fixity == "infix":
            return f" {name} ".join(args)
        if fixity == "prefix":
            return _words(name, *args)
        if fixity == "postfix":
            return _words(*args, name)
        if fixity == "silent":
            return _words(*args)
        if not args:
            return name
        style = self.opts.style
        if style == "terse":
            return _words(name, *args)
        spoken = f"{name} of {join_with_and(args)}"
        return "the " + spoken if style == "verbose" else spoken

    # -- structural ----------------------------------------------------------
    def token(self, t: StructuralNode, chem: bool, prev_number: Optional[str]) -> str:
        text = t.token_text or ""
        props = t.properties
        self.check_properties(props)
        if "unit" in props and text in self.registry.units:
            singular, plural = self.registry.units[text]
            return singular if prev_number == "1" else plural
        if "chemical-element" in props and text in self.registry.elements:
            return self.registry.elements[text]
        if "roman-numeral" in props:
            value = roman_to_int(text)
            if value is not None:
                return str(value)
        if t.kind in ("mtext", "ms", "mn"):
            return text
        if chem:
            if t.kind == "mo" and text in CHEMISTRY_OPERATORS:
                return CHEMISTRY_OPERATORS[text]
            if t.kind == "mi" and text in self.registry.elements:
                return self.registry.elements[text]
        chars = self.registry.characters
        if text in chars:
            return chars[text]
        if t.kind == "mo":
            return _words(*(chars.get(ch, ch) for ch in text))
        return text

    def grouped(self, speech: str) -> str:
        if self.opts.grouping_markers and len(speech.split()) > 1:
            return f"start {speech} end grouping"
        return speech

    def structural(self, t: StructuralNode, chem: bool, prev_number: Optional[str] = None) -> str:
        if t.token_text is not None:
            return self.token(t, chem, prev_number)
        self.check_properties(t.properties)
        kind = t.kind
        if kind in SILENT_ELEMENTS:
            return ""
        if kind == "mtable":
            return self.table(t, chem)
        kids = t.children
        parts = self.sequence(kids, chem)
        if kind == "msup" and len(parts) == 2:
            if chem:
                return _words(*parts)
            return self.superscript(parts[0], kids[1], parts[1])
        if kind == "msub" and len(parts) == 2:
            return _words(*parts) if chem else f"{parts[0]} sub {parts[1]}"
        if kind == "msubsup" and len(parts) == 3:
            if chem:
                return _words(*parts)
            return self.superscript(f"{parts[0]} sub {parts[1]}", kids[2], parts[2])
        if kind == "mfrac" and len(parts) == 2:
            if self.opts.grouping_markers:
                return f"fraction {parts[0]} over {parts[1]} end fraction"
            return f"{parts[0]} over {parts[1]}"
        if kind == "msqrt":
            return self.root("square root", _words(*parts))
        if kind == "mroot" and len(parts) == 2:
            index = _number_text(kids[1]) or ""
            return self.root(ROOT_WORDS.get(index, f"{parts[1]} root"), parts[0])
        if kind in ("mover", "munder") and len(parts) == 2:
            where = "above" if kind == "mover" else "below"
            return f"{self.grouped(parts[0])} with {parts[1]} {where}"
        if kind == "munderover" and len(parts) == 3:
            return f"{self.grouped(parts[0])} with {parts[1]} below and {parts[2]} above"
        return _words(*parts)

    def superscript(self, base: str, exponent: IntentTree, spoken_exponent: str) -> str:
        word = EXPONENT_WORDS.get(_number_text(exponent) or "")
        if word:
            return f"{base} {word}"
        if isinstance(exponent, StructuralNode) and exponent.token_text in PRIMES:
            return f"{base} {spoken_exponent}"
        return f"{base} to the {spoken_exponent}"

    def root(self, words: str, radicand: str) -> str:
        if self.opts.grouping_markers:
            return f"{words} of {radicand} end root"
        return f"{words} of {radicand}"

    # -- tables --------------------------------------------------------------
    def table(self, t: StructuralNode, chem: bool) -> str:
        rows = []  # list of (cells, continued)
        for row in t.children:
            if not isinstance(row, StructuralNode) or row.kind not in ("mtr", "mlabeledtr"):
                continue
            cells = list(row.children[1:] if row.kind == "mlabeledtr" else row.children)
            spoken = [self.speak(c, chem) for c in cells]
            rows.append((spoken, "continued-row" in row.properties))
            self.check_properties(row.properties)
        merged: list[list] = []
        for cells, continued in rows:
            if continued and merged:
                merged[-1] = merged[-1] + cells
            else:
                merged.append(list(cells))
        wording = next((p for p in t.properties if p in TABLE_WORDING), None)
        n = len(merged)
        if wording == "system-of-equations":
            items = [_words(f"equation {i}", *cells) for i, cells in enumerate(merged, 1)]
            return ", ".join([_count(n, "equation"), *items, "end equations"])
        if wording == "lines":
            items = [f"line {i}: " + _words(*cells) for i, cells in enumerate(merged, 1)]
            return ", ".join([_count(n, "line"), *items, "end lines"])
        if wording == "piecewise":
            items = []
            for i, cells in enumerate(merged, 1):
                case = cells[0] if cells else ""
                if len(cells) > 1:
                    case = f"{case} if {_words(*cells[1:])}"
                items.append(f"case {i}: {case}")
            return ", ".join([_count(n, "case"), *items, "end cases"])
        columns = max((len(c) for c in merged), default=0)
        items = [f"row {i}: " + ", ".join(cells) for i, cells in enumerate(merged, 1)]
        if wording == "matrix":
            return ", ".join([f"{n} by {columns} matrix", *items, "end matrix"])
        head = f"table with {_count(n, 'row')} and {_count(columns, 'column')}"
        return ", ".join([head, *items])


def speak(t: IntentTree, opts: SpeechOptions = SpeechOptions(),
          registry: Optional[Registry] = None) -> SpeechOutput:
    speaker = _Speaker(opts, registry or default_registry())
    text = normalize(speaker.speak(t))
    return SpeechOutput(text, speaker.diagnostics)


def speak_structural(kind: str, children, opts: SpeechOptions = SpeechOptions(),
                     registry: Optional[Registry] = None) -> str:
    speaker = _Speaker(opts, registry or default_registry())
    return normalize(speaker.structural(StructuralNode(kind, (), tuple(children)), False))


def speak_element(e: Element, opts: SpeechOptions = SpeechOptions(),
                  registry: Optional[Registry] = None) -> SpeechOutput:
    registry = registry or default_registry()
    tree, diagnostics = build_intent_tree(e, opts.build_options(), registry)
    out = speak(tree, opts, registry)
    return SpeechOutput(out.text, diagnostics + out.diagnostics)


def speak_document(doc: Document, opts: SpeechOptions = SpeechOptions(),
                   registry: Optional[Registry] = None) -> list:
    """One SpeechOutput per math root, in document order."""
    return [speak_element(m, opts, registry) for m in doc.math_roots]
