"""Concept/character/unit/element tables loaded from line-oriented TSV files.

Row kinds (tab separated, ``#`` starts a comment line)::

    C  name  min_arity  max_arity  fixity  terse  medium  verbose
    X  char  spoken-name
    U  symbol  singular  plural
    E  symbol  element-name

A comment of the form ``#! source: open`` switches the source tag applied to
the concept rows that follow it (``core`` or ``open``).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

FIXITIES = ("function", "silent", "prefix", "infix", "postfix")
STYLES = ("terse", "medium", "verbose")
TABLE_PROPERTIES = ("matrix", "piecewise", "system-of-equations", "lines", "continued-row")

PROPERTY_CLASSES = {
    **{p: "fixity" for p in FIXITIES},
    **{p: "table" for p in TABLE_PROPERTIES},
    "chemical-equation": "chemistry",
    "chemical-formula": "chemistry",
    "unit": "unit",
    "roman-numeral": "roman-numeral",
    "chemical-element": "element",
}

UNBOUNDED = math.inf

_PLACEHOLDER = re.compile(r"#(\d)|#(all|last)\{([^{}]*)\}")


class LoadError(ValueError):
    def __init__(self, message: str, path: str = "<builtin>", line: int = 0):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class ConceptEntry:
    name: str
    min_arity: int
    max_arity: float
    default_fixity: str
    templates: dict = field(default_factory=dict)
    source: str = "core"

    def with_fixity(self, fixity: str) -> "ConceptEntry":
        """Entry with a different default fixity.

        Templates are worded for one fixity, so changing it drops them and
        leaves the concept to the generic fixity rendering."""
        if fixity == self.default_fixity:
            return self
        return replace(self, default_fixity=fixity, templates={})


def check_template(template: str, max_arity: float) -> Optional[str]:
    """Return an error message if the template is malformed."""
    depth = 0
    for ch in template:
        depth += ch == "{"
        depth -= ch == "}"
        if depth < 0 or depth > 1:
            return "unbalanced braces"
    if depth:
        return "unbalanced braces"
    stripped = _PLACEHOLDER.sub("", template)
    if "{" in stripped or "}" in stripped:
        return "braces outside a placeholder"
    if "#" in stripped:
        return "malformed placeholder"
    for m in _PLACEHOLDER.finditer(template):
        if m.group(1) is not None:
            k = int(m.group(1))
            if k < 1 or k > max_arity:
                return f"placeholder #{k} outside arity range"
    return None


@dataclass(frozen=True)
class Registry:
    concepts: dict = field(default_factory=dict)    # name -> tuple[ConceptEntry, ...]
    characters: dict = field(default_factory=dict)  # str -> spoken
    units: dict = field(default_factory=dict)       # symbol -> (singular, plural)
    elements: dict = field(default_factory=dict)    # symbol -> element name
    property_classes: dict = field(default_factory=lambda: dict(PROPERTY_CLASSES))
    language: str = "en"

    def lookup_concept(self, name: str, arity: int) -> Optional[ConceptEntry]:
        return lookup_concept(self, name, arity)

    def classify_property(self, name: str) -> str:
        return classify_property(self, name)

    def knows_concept(self, name: str) -> bool:
        return name in self.concepts

    def with_entry(self, entry: ConceptEntry) -> "Registry":
        """Copy with ``entry`` replacing the entry of the same arity range."""
        entries = [e for e in self.concepts.get(entry.name, ())
                   if (e.min_arity, e.max_arity) != (entry.min_arity, entry.max_arity)]
        concepts = dict(self.concepts)
        concepts[entry.name] = tuple(entries) + (entry,)
        return replace(self, concepts=concepts)


def lookup_concept(r: Registry, name: str, arity: int) -> Optional[ConceptEntry]:
    matches = [e for e in r.concepts.get(name, ()) if e.min_arity <= arity <= e.max_arity]
    if not matches:
        return None
    return min(matches, key=lambda e: e.max_arity - e.min_arity)


def classify_property(r: Registry, name: str) -> str:
    return r.property_classes.get(name, "unknown")


def _parse_arity(text: str, path, lineno) -> float:
    if text in ("∞", "inf"):
        return UNBOUNDED
    try:
        value = int(text)
    except ValueError:
        raise LoadError(f"bad arity {text!r}", path, lineno) from None
    if value < 0:
        raise LoadError(f"negative arity {text!r}", path, lineno)
    return value


def _read_rows(text: str, path: str, default_source: str):
    """Parse one file into ordered (kind, key, value) triples."""
    seen = set()
    source = default_source
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if line.startswith("#!"):
            m = re.fullmatch(r"#!\s*source:\s*(core|open)\s*", line)
            if not m:
                raise LoadError(f"bad directive {line!r}", path, lineno)
            source = m.group(1)
            continue
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        kind = cols[0]
        if kind == "C":
            if len(cols) != 8:
                raise LoadError(f"concept row needs 8 columns, got {len(cols)}", path, lineno)
            _, name, lo, hi, fixity, *templates = cols
            if not name:
                raise LoadError("empty concept name", path, lineno)
            lo_v, hi_v = _parse_arity(lo, path, lineno), _parse_arity(hi, path, lineno)
            if lo_v == UNBOUNDED or lo_v > hi_v:
                raise LoadError("min_arity must not exceed max_arity", path, lineno)
            if fixity not in FIXITIES:
                raise LoadError(f"unknown fixity {fixity!r}", path, lineno)
            for style, tpl in zip(STYLES, templates):
                if not tpl.strip():
                    raise LoadError(f"empty {style} template", path, lineno)
                problem = check_template(tpl, hi_v)
                if problem:
                    raise LoadError(f"{style} template: {problem}", path, lineno)
            key = ("C", (name, lo_v, hi_v))
            value = ConceptEntry(name, int(lo_v), hi_v, fixity, dict(zip(STYLES, templates)), source)
        elif kind == "X":
            if len(cols) != 3 or not cols[1]:
                raise LoadError("character row needs 3 columns", path, lineno)
            key, value = ("X", cols[1]), cols[2]
        elif kind == "U":
            if len(cols) != 4 or not all(cols[1:]):
                raise LoadError("unit row needs 4 non-empty columns", path, lineno)
            key, value = ("U", cols[1]), (cols[2], cols[3])
        elif kind == "E":
            if len(cols) != 3 or not all(cols[1:]):
                raise LoadError("element row needs 3 non-empty columns", path, lineno)
            key, value = ("E", cols[1]), cols[2]
        else:
            raise LoadError(f"unknown row kind {kind!r}", path, lineno)
        if key in seen:
            raise LoadError(f"duplicate row for {key[1]!r}", path, lineno)
        seen.add(key)
        yield key, value


def builtin_path(language: str = "en") -> Path:
    primary = language.split("-")[0].lower()
    return Path(str(resources.files("mathintent") / "data" / f"{primary}.tsv"))


def load_registry(paths: Iterable = (), language: str = "en") -> Registry:
    """Load the built-in table for ``language`` then each file in order.

    Later rows replace earlier ones with the same key (concepts are keyed by
    name and arity range)."""
    builtin = builtin_path(language)
    if not builtin.exists():
        raise LoadError(f"no built-in data for language {language!r}", str(builtin))
    sources = [(builtin, "core")] + [(Path(p), "open") for p in paths]
    concepts: dict = {}
    tables = {"X": {}, "U": {}, "E": {}}
    for path, default_source in sources:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise LoadError(f"cannot read: {exc}", str(path)) from None
        for (kind, key), value in _read_rows(text, str(path), default_source):
            if kind == "C":
                concepts[key] = value
            else:
                tables[kind][key] = value
    by_name: dict = {}
    for entry in concepts.values():
        by_name.setdefault(entry.name, []).append(entry)
    return Registry(
        concepts={k: tuple(v) for k, v in by_name.items()},
        characters=tables["X"],
        units=tables["U"],
        elements=tables["E"],
        language=language,
    )


_DEFAULT: Optional[Registry] = None


def default_registry() -> Registry:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_registry()
    return _DEFAULT
