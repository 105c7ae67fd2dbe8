"""Minimal XML element tree for MathML speech work.

Parsing is done with expat; the tree is rebuilt as immutable ``Element``
records with local (prefix-free) names and whitespace-normalized token text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union
from xml.parsers import expat

TOKEN_ELEMENTS = frozenset({"mi", "mo", "mn", "mtext", "ms"})

_XML_WS = re.compile(r"[ \t\r\n]+")
_PROLOG = re.compile(r"<\?xml[^>]*\?>|<!DOCTYPE[^>\[]*(?:\[.*?\])?\s*>", re.DOTALL | re.IGNORECASE)
_WRAPPER = "mathintent-fragment"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Element:
    name: str
    attributes: dict = field(default_factory=dict)
    children: tuple = ()
    # (line, column), both 1-based
    source_position: tuple = field(default=(0, 0), compare=False)

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.attributes.get(key, default)

    @property
    def text(self) -> str:
        return "".join(c for c in self.children if isinstance(c, str))

    def iter(self) -> Iterator["Element"]:
        """Pre-order walk over this element and all element descendants."""
        stack = [self]
        while stack:
            el = stack.pop()
            yield el
            stack.extend(reversed(children_elements(el)))

    def __repr__(self) -> str:
        return f"<Element {self.name} {self.attributes!r} ({len(self.children)} children)>"


Node = Union[Element, str]


@dataclass(frozen=True)
class Document:
    root: Element
    math_roots: tuple = ()


def children_elements(e: Element) -> list[Element]:
    return [c for c in e.children if isinstance(c, Element)]


def first_child_element(e: Element) -> Optional[Element]:
    for c in e.children:
        if isinstance(c, Element):
            return c
    return None


def _local(name: str) -> str:
    return name.rsplit(":", 1)[-1]


class _Builder:
    def __init__(self, parser, shift: int = 0):
        self.parser = parser
        # columns on line 1 are offset by the synthetic wrapper tag
        self.shift = shift
        # each frame: [name, attrs, children, position, pending_text]
        self.stack: list[list] = []
        self.root: Optional[Element] = None

    def _flush(self, frame):
        if frame[4]:
            frame[2].append("".join(frame[4]))
            frame[4].clear()

    def start(self, name, attrs):
        line, col = self.parser.CurrentLineNumber, self.parser.CurrentColumnNumber + 1
        pos = (line, col - self.shift if line == 1 else col)
        if self.stack:
            self._flush(self.stack[-1])
        # ordered_attributes gives a flat [k1, v1, k2, v2, ...] list
        amap = dict(zip(attrs[::2], attrs[1::2]))
        self.stack.append([_local(name), amap, [], pos, []])

    def end(self, name):
        frame = self.stack.pop()
        self._flush(frame)
        lname, attrs, children, pos, _ = frame
        el = Element(lname, attrs, tuple(_normalize_children(lname, children)), pos)
        if self.stack:
            self.stack[-1][2].append(el)
        else:
            self.root = el

    def data(self, text):
        if self.stack:
            self.stack[-1][4].append(text)


def _normalize_children(name: str, children: list) -> list:
    out = []
    if name in TOKEN_ELEMENTS:
        for c in children:
            if isinstance(c, str):
                c = _XML_WS.sub(" ", c)
            out.append(c)
        # trim at both ends of the token content, drop emptied segments
        if out and isinstance(out[0], str):
            out[0] = out[0].lstrip(" ")
        if out and isinstance(out[-1], str):
            out[-1] = out[-1].rstrip(" ")
        return [c for c in out if c != ""]
    for c in children:
        if isinstance(c, str):
            c = _XML_WS.sub(" ", c).strip(" ")
            if not c:
                continue
        out.append(c)
    return out


def _blank(match: re.Match) -> str:
    return re.sub(r"[^\n]", " ", match.group(0))


def parse_document(data: Union[bytes, str]) -> Document:
    """Parse XML text (a full document or a fragment with several top-level
    nodes) and collect its ``math`` elements.

    Raises ParseError with a 1-based line/column on malformed input.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8: {exc.reason}", 1, exc.start + 1) from exc
    else:
        text = data
    if text.startswith("﻿"):
        text = text[1:]
    # Prolog is blanked (not deleted) so reported positions stay valid.
    body = _PROLOG.sub(_blank, text)
    prefix = f"<{_WRAPPER}>"
    wrapped = prefix + body + f"</{_WRAPPER}>"

    parser = expat.ParserCreate()
    parser.ordered_attributes = True
    parser.buffer_text = True
    parser.SetParamEntityParsing(expat.XML_PARAM_ENTITY_PARSING_NEVER)
    builder = _Builder(parser, len(prefix))
    parser.StartElementHandler = builder.start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.data
    try:
        parser.Parse(wrapped, True)
    except expat.ExpatError as exc:
        line, col = exc.lineno, exc.offset + 1
        if line == 1:
            col = max(1, col - len(prefix))
        message = expat.errors.messages.get(exc.code, str(exc))
        if exc.code == expat.errors.codes[expat.errors.XML_ERROR_TAG_MISMATCH]:
            message = "mismatched tag"
        raise ParseError(message, line, col) from None

    wrapper = builder.root
    assert wrapper is not None
    kids = children_elements(wrapper)
    stray_text = any(isinstance(c, str) for c in wrapper.children)
    if len(kids) == 1 and not stray_text:
        root = kids[0]
    else:
        root = Element("#fragment", {}, wrapper.children, (1, 1))
    maths = tuple(el for el in root.iter() if el.name == "math")
    return Document(root, maths)


def parse_file(path) -> Document:
    with open(path, "rb") as fh:
        return parse_document(fh.read())


def _escape(s: str, attr: bool = False) -> str:
    s = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    if attr:
        s = s.replace('"', "&quot;").replace("\t", "&#9;").replace("\n", "&#10;").replace("\r", "&#13;")
    return s


def serialize(e: Element) -> str:
    """Canonical XML text: attributes sorted, special characters re-escaped."""
    attrs = "".join(f' {k}="{_escape(v, True)}"' for k, v in sorted(e.attributes.items()))
    if not e.children:
        return f"<{e.name}{attrs}/>"
    inner = "".join(serialize(c) if isinstance(c, Element) else _escape(c) for c in e.children)
    return f"<{e.name}{attrs}>{inner}</{e.name}>"


def transform_attributes(e: Element, fn: Callable[[Element], dict]) -> Element:
    """Copy of the tree where every element's attribute map is replaced by
    ``fn(element)``. Positions are kept."""
    kids = tuple(transform_attributes(c, fn) if isinstance(c, Element) else c for c in e.children)
    return Element(e.name, fn(e), kids, e.source_position)


def strip_attribute(e: Element, name: str,
                    where: Optional[Callable[[Element], bool]] = None) -> Element:
    def fn(el: Element) -> dict:
        if name in el.attributes and (where is None or where(el)):
            return {k: v for k, v in el.attributes.items() if k != name}
        return el.attributes
    return transform_attributes(e, fn)
