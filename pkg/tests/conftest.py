from pathlib import Path

import pytest

from mathintent import default_registry, parse_document

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_text(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def registry():
    return default_registry()


@pytest.fixture
def abs_value():
    return parse_document(corpus_text("absolute_value.xml")).math_roots[0]


@pytest.fixture
def nested_power():
    return parse_document(corpus_text("nested_power.xml")).math_roots[0]
