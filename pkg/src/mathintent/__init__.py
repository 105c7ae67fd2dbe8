"""Speech generation for Presentation MathML with author ``intent`` annotations."""

from .dom import Document, Element, ParseError, parse_document, parse_file
from .registry import ConceptEntry, LoadError, Registry, default_registry, load_registry
from .resolve import (BuildOptions, ConceptNode, Diagnostic, NumberNode, StructuralNode,
                      build_intent_tree, dump_tree, lint_element, resolve_reference)
from .speech import SpeechOptions, SpeechOutput, speak, speak_document, speak_element
from .syntax import IntentExpr, IntentSyntaxError, parse_intent, serialize_intent


def speak_markup(markup, options: SpeechOptions = SpeechOptions(), registry=None) -> list:
    """Speech text for every math root in ``markup`` (str or bytes)."""
    return [out.text for out in speak_document(parse_document(markup), options, registry)]


__all__ = [
    "BuildOptions", "ConceptEntry", "ConceptNode", "Diagnostic", "Document", "Element",
    "IntentExpr", "IntentSyntaxError", "LoadError", "NumberNode", "ParseError", "Registry",
    "SpeechOptions", "SpeechOutput", "StructuralNode", "build_intent_tree", "default_registry",
    "dump_tree", "lint_element", "load_registry", "parse_document", "parse_file",
    "parse_intent", "resolve_reference", "serialize_intent", "speak", "speak_document",
    "speak_element", "speak_markup",
]
