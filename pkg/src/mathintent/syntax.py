"""Parser and serializer for ``intent`` attribute values.

Grammar::

    intent    := ws expr ws | ws props ws
    expr      := head props? app?
    head      := concept | number | reference
    concept   := NameToken
    number    := '-'? digits ('.' digits)?
    reference := '$' NameToken
    props     := (ws ':' NameToken)+
    app       := ws '(' ws (expr (ws ',' ws expr)*)? ws ')'

NameToken starts with a letter or '_' and continues with letters, digits,
'-', '_' or '.'.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

_DIGITS = "0123456789"


@dataclass(frozen=True)
class ConceptLiteral:
    name: str


@dataclass(frozen=True)
class NumberLiteral:
    text: str


@dataclass(frozen=True)
class Reference:
    arg_name: str


@dataclass(frozen=True)
class Empty:
    pass


Head = Union[ConceptLiteral, NumberLiteral, Reference, Empty]


@dataclass(frozen=True)
class IntentExpr:
    head: Head
    properties: tuple = ()
    # None: no application; () : zero-arity application
    arguments: Optional[tuple] = None

    def references(self):
        """Yield every reference name in the expression, head first."""
        if isinstance(self.head, Reference):
            yield self.head.arg_name
        for a in self.arguments or ():
            yield from a.references()

    def concept_names(self):
        if isinstance(self.head, ConceptLiteral):
            yield self.head.name
        for a in self.arguments or ():
            yield from a.concept_names()

    def all_properties(self):
        yield from self.properties
        for a in self.arguments or ():
            yield from a.all_properties()


class IntentSyntaxError(ValueError):
    def __init__(self, offset: int, message: str):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset
        self.message = message


def is_name_start(ch: str) -> bool:
    return ch == "_" or ch.isalpha()


def is_name_char(ch: str) -> bool:
    return ch.isalpha() or ch in _DIGITS or ch in "-_."


def is_name(s: str) -> bool:
    return bool(s) and is_name_start(s[0]) and all(is_name_char(c) for c in s[1:])


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0
        self.n = len(text)

    def peek(self) -> str:
        return self.s[self.i] if self.i < self.n else ""

    def error(self, message: str, at: Optional[int] = None):
        raise IntentSyntaxError(self.i if at is None else at, message)

    def ws(self):
        while self.i < self.n and self.s[self.i] in " \t\r\n":
            self.i += 1

    def name(self, what: str) -> str:
        start = self.i
        if not is_name_start(self.peek()):
            self.error(f"expected {what}")
        self.i += 1
        while self.i < self.n and is_name_char(self.s[self.i]):
            self.i += 1
        return self.s[start:self.i]

    def digits(self):
        start = self.i
        while self.i < self.n and self.s[self.i] in _DIGITS:
            self.i += 1
        if self.i == start:
            self.error("expected digit")

    def number(self) -> NumberLiteral:
        start = self.i
        if self.peek() == "-":
            self.i += 1
        self.digits()
        if self.peek() == ".":
            self.i += 1
            self.digits()
        if self.peek() and is_name_char(self.peek()):
            self.error("number followed by name characters")
        return NumberLiteral(self.s[start:self.i])

    def head(self) -> Head:
        ch = self.peek()
        if ch == "$":
            self.i += 1
            return Reference(self.name("reference name after '$'"))
        if ch == "-" or ch in _DIGITS and ch:
            return self.number()
        if is_name_start(ch):
            return ConceptLiteral(self.name("concept name"))
        self.error("expected concept name, number or reference")

    def props(self) -> tuple:
        out = []
        while True:
            save = self.i
            self.ws()
            if self.peek() != ":":
                self.i = save
                return tuple(out)
            self.i += 1
            out.append(self.name("property name after ':'"))

    def expr(self) -> IntentExpr:
        head = self.head()
        props = self.props()
        save = self.i
        self.ws()
        if self.peek() != "(":
            self.i = save
            return IntentExpr(head, props, None)
        self.i += 1
        self.ws()
        args = []
        if self.peek() == ")":
            self.i += 1
            return IntentExpr(head, props, ())
        while True:
            if self.peek() in (",", ")"):
                self.error("missing argument")
            args.append(self.expr())
            self.ws()
            ch = self.peek()
            if ch == ",":
                self.i += 1
                self.ws()
            elif ch == ")":
                self.i += 1
                return IntentExpr(head, props, tuple(args))
            else:
                self.error("expected ',' or ')'")

    def intent(self) -> IntentExpr:
        self.ws()
        if self.i == self.n:
            self.error("empty intent")
        if self.peek() == ":":
            props = self.props()
            result = IntentExpr(Empty(), props, None)
        else:
            result = self.expr()
        self.ws()
        if self.i != self.n:
            self.error("unexpected trailing input")
        return result


def parse_intent(text: str) -> IntentExpr:
    """Parse an intent value; raises IntentSyntaxError with a code-point offset."""
    return _Parser(text).intent()


def try_parse_intent(text: str) -> Union[IntentExpr, IntentSyntaxError]:
    try:
        return parse_intent(text)
    except IntentSyntaxError as exc:
        return exc


def serialize_intent(e: IntentExpr) -> str:
    h = e.head
    if isinstance(h, ConceptLiteral):
        out = h.name
    elif isinstance(h, NumberLiteral):
        out = h.text
    elif isinstance(h, Reference):
        out = "$" + h.arg_name
    else:
        out = ""
    out += "".join(":" + p for p in e.properties)
    if e.arguments is not None:
        out += "(" + ",".join(serialize_intent(a) for a in e.arguments) + ")"
    return out
