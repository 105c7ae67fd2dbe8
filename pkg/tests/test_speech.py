import random

import pytest
from hypothesis import given, settings, strategies as st

from gen import random_tree
from mathintent import parse_document, speak_markup
from mathintent.dom import first_child_element, strip_attribute
from mathintent.registry import FIXITIES
from mathintent.resolve import ConceptNode, NumberNode, StructuralNode, build_intent_tree
from mathintent.speech import (SpeechOptions, instantiate, roman_to_int, speak, speak_element,
                               speak_structural)

MEDIUM = SpeechOptions()
TERSE = SpeechOptions(style="terse")
VERBOSE = SpeechOptions(style="verbose")
SYNTACTIC = SpeechOptions(mode="syntactic")


def say(markup, opts=MEDIUM):
    (text,) = speak_markup(f"<math>{markup}</math>", opts)
    return text


def mi(t):
    return StructuralNode("mi", (), (), t)


def test_abs_value_styles(abs_value):
    assert speak_element(abs_value, MEDIUM).text == "absolute value of x"
    assert speak_element(abs_value, TERSE).text == "absolute value x"
    assert speak_element(abs_value, VERBOSE).text == "the absolute value of x"


def test_evaluated_at_infix():
    markup = ('<mrow intent="evaluated-at:infix($expr, $value)">'
              '<msup arg="expr"><mi>x</mi><mn>2</mn></msup>'
              '<msub><mo>|</mo><mn arg="value">3</mn></msub></mrow>')
    assert say(markup) == "x squared evaluated at 3"


def test_syntactic_vertical_bars():
    assert say("<mrow><mo>|</mo><mi>x</mi><mo>|</mo></mrow>", SYNTACTIC) == \
        "vertical bar x vertical bar"


def test_literal_speech():
    tree = ConceptNode("_my_name", (), (mi("x"),), literal_speech=True)
    assert speak(tree).text == "my name x"
    tree = ConceptNode("_my_name", ("postfix",), (mi("x"),), literal_speech=True)
    assert speak(tree).text == "x my name"


@pytest.mark.parametrize("number, expected", [("1", "1 meter"), ("3", "3 meters"),
                                              ("1.0", "1.0 meters")])
def test_units(number, expected):
    assert say(f'<mrow><mn>{number}</mn><mi intent=":unit">m</mi></mrow>') == expected


def test_unit_uses_nearest_preceding_number():
    markup = '<mrow><mn>3</mn><mo>+</mo><mn>1</mn><mo>&#x2062;</mo><mi intent=":unit">kg</mi></mrow>'
    assert say(markup) == "3 plus 1 kilogram"


def test_roman_numeral_and_element():
    assert say('<mi intent=":roman-numeral">XIV</mi>') == "14"
    assert say('<mi intent=":roman-numeral">ABC</mi>') == "ABC"
    assert say('<mi intent=":chemical-element">Fe</mi>') == "iron"


@pytest.mark.parametrize("text, value", [("I", 1), ("IV", 4), ("MCMXCIV", 1994), ("iii", 3),
                                         ("IIII", None), ("", None)])
def test_roman_to_int(text, value):
    assert roman_to_int(text) == value


# -- concept rendering -----------------------------------------------------------

def test_generic_function_wording():
    args = tuple(mi(v) for v in "abc")
    assert speak(ConceptNode("foo-bar", (), args[:1])).text == "foo bar of a"
    assert speak(ConceptNode("foo-bar", (), args[:2])).text == "foo bar of a and b"
    assert speak(ConceptNode("foo-bar", (), args)).text == "foo bar of a, b and c"
    assert speak(ConceptNode("foo-bar", (), args), TERSE).text == "foo bar a b c"
    assert speak(ConceptNode("foo-bar", (), args), VERBOSE).text == "the foo bar of a, b and c"
    assert speak(ConceptNode("foo_bar", (), ())).text == "foo bar"


@pytest.mark.parametrize("fixity, expected", [
    ("function", "rel of a and b"),
    ("infix", "a rel b"),
    ("prefix", "rel a b"),
    ("postfix", "a b rel"),
    ("silent", "a b"),
])
def test_generic_fixities(fixity, expected):
    assert speak(ConceptNode("rel", (fixity,), (mi("a"), mi("b")))).text == expected


def test_infix_needs_two_arguments():
    out = speak(ConceptNode("rel", ("infix",), (mi("a"),)))
    assert out.text == "rel of a"
    assert [d.code for d in out.diagnostics] == ["INFIX_ARITY"]


def test_first_fixity_wins():
    out = speak(ConceptNode("rel", ("prefix", "infix"), (mi("a"), mi("b"))))
    assert out.text == "rel a b"
    assert [d.code for d in out.diagnostics] == ["EXTRA_FIXITY"]


def test_unknown_property_and_matchfix_ignored():
    out = speak(ConceptNode("rel", ("matchfix",), (mi("a"),)))
    assert out.text == "rel of a"
    assert [(d.code, d.severity) for d in out.diagnostics] == [("UNKNOWN_PROPERTY", "info")]


def test_templates(registry):
    two = (mi("a"), mi("b"))
    three = two + (mi("c"),)
    assert speak(ConceptNode("gcd", (), two)).text == "gcd of a and b"
    assert speak(ConceptNode("gcd", (), three)).text == "gcd of a, b and c"
    assert speak(ConceptNode("gcd", (), three), TERSE).text == "gcd a b c"
    assert speak(ConceptNode("point", (), two)).text == "point a comma b"
    assert speak(ConceptNode("cross-product", (), three)).text == "a cross b cross c"
    assert speak(ConceptNode("power", (), (mi("x"), mi("n")))).text == "x to the n power"
    assert speak(ConceptNode("power", (), (mi("x"), NumberNode("2")))).text == "x squared"
    assert speak(ConceptNode("power", (), (mi("x"), NumberNode("3"))), VERBOSE).text == "x cubed"
    assert speak(ConceptNode("transpose", (), (mi("A"),))).text == "A transpose"


def test_instantiate():
    assert instantiate("#2 then #1", ["a", "b"]) == "b then a"
    assert instantiate("f of #all{,}#last{and}", ["a"]) == "f of a"
    assert instantiate("f of #all{,}#last{or}", ["a", "b", "c", "d"]) == "f of a, b, c or d"
    assert instantiate("#1 with #all{ plus }", ["a", "b", "c"]) == "a with b plus c"
    assert instantiate("#3 x", ["a"]) == "x"


def test_registry_fraction_override(tmp_path):
    from mathintent.registry import load_registry
    p = tmp_path / "frac.tsv"
    p.write_text("C\tfraction\t2\t2\tinfix\t#1 by #2\t#1 divided by #2\t#1 divided by #2\n")
    tree = ConceptNode("fraction", (), (NumberNode("1"), NumberNode("3")))
    assert speak(tree, MEDIUM, load_registry([p])).text == "1 divided by 3"


# -- structural wording ----------------------------------------------------------

def test_structural_wording():
    x, two, n = mi("x"), NumberNode("2"), mi("n")
    assert speak_structural("msup", [x, two]) == "x squared"
    assert speak_structural("msup", [x, NumberNode("3")]) == "x cubed"
    assert speak_structural("msup", [x, n]) == "x to the n"
    assert speak_structural("msub", [x, n]) == "x sub n"
    assert speak_structural("mfrac", [NumberNode("1"), NumberNode("3")]) == "1 over 3"
    assert speak_structural("mfrac", [NumberNode("1"), NumberNode("3")],
                            SpeechOptions(grouping_markers=True)) == "fraction 1 over 3 end fraction"
    assert speak_structural("msqrt", [x]) == "square root of x"
    assert speak_structural("mroot", [x, NumberNode("3")]) == "cube root of x"
    assert speak_structural("mroot", [x, n]) == "n root of x"
    assert speak_structural("mover", [x, StructuralNode("mo", (), (), "^")]) == "x with caret above"
    assert speak_structural("munder", [x, n]) == "x with n below"
    assert speak_structural("mrow", [x, StructuralNode("mo", (), (), "+"), n]) == "x plus n"
    assert speak_structural("mtext", []) == ""
    assert speak_structural("mfoo", [x, n]) == "x n"


def test_plain_table():
    cells = lambda *vs: StructuralNode("mtr", (), tuple(StructuralNode("mtd", (), (mi(v),)) for v in vs))
    assert speak_structural("mtable", [cells("a", "b"), cells("c", "d")]) == \
        "table with 2 rows and 2 columns, row 1: a, b, row 2: c, d"


def test_overline_grouping_markers():
    markup = "<mover><mrow><mi>A</mi><mi>B</mi></mrow><mo>&#xAF;</mo></mover>"
    assert say(markup, SpeechOptions(grouping_markers=True)) == "start A B end grouping with line above"
    assert say(markup) == "A B with line above"


def test_token_characters():
    assert say("<mo>&#x2264;</mo>") == "less than or equal to"
    assert say("<mo>+-</mo>") == "plus minus"
    assert say("<mi>&#x3B1;</mi>") == "alpha"
    assert say("<mtext>if and only if</mtext>") == "if and only if"
    assert say("<mrow><mi>f</mi><mo>&#x2061;</mo><mi>x</mi></mrow>") == "f x"


# -- tables ---------------------------------------------------------------------

SYSTEM = """<mtable intent=":system-of-equations">
  <mtr><mtd><mi>x</mi><mo>+</mo><mi>y</mi></mtd><mtd><mo>=</mo></mtd><mtd><mn>3</mn></mtd></mtr>
  <mtr><mtd><mi>x</mi></mtd><mtd><mo>=</mo></mtd><mtd><mn>1</mn></mtd></mtr>
</mtable>"""


def test_system_of_equations():
    assert say(SYSTEM) == "2 equations, equation 1 x plus y equals 3, equation 2 x equals 1, end equations"


def test_continued_row_joins_previous():
    markup = SYSTEM.replace("<mtr><mtd><mi>x</mi></mtd>", '<mtr intent=":continued-row"><mtd><mi>x</mi></mtd>')
    assert say(markup) == "1 equation, equation 1 x plus y equals 3 x equals 1, end equations"


def test_matrix_and_piecewise():
    matrix = ('<mtable intent=":matrix"><mtr><mtd><mn>1</mn></mtd><mtd><mn>2</mn></mtd></mtr>'
              '<mtr><mtd><mn>3</mn></mtd><mtd><mn>4</mn></mtd></mtr></mtable>')
    assert say(matrix) == "2 by 2 matrix, row 1: 1, 2, row 2: 3, 4, end matrix"
    piecewise = ('<mtable intent=":piecewise"><mtr><mtd><mn>1</mn></mtd><mtd><mi>x</mi><mo>&gt;</mo><mn>0</mn></mtd></mtr>'
                 '<mtr><mtd><mn>0</mn></mtd></mtr></mtable>')
    assert say(piecewise) == "2 cases, case 1: 1 if x greater than 0, case 2: 0, end cases"


def test_lines():
    markup = SYSTEM.replace("system-of-equations", "lines")
    assert say(markup) == "2 lines, line 1: x plus y equals 3, line 2: x equals 1, end lines"


# -- chemistry --------------------------------------------------------------------

CO2 = "<msub><mi>O</mi><mn>2</mn></msub><mo>=</mo><mi>C</mi>"


def test_chemistry():
    assert say(f'<mrow intent=":chemical-equation">{CO2}</mrow>') == "oxygen 2 double bond carbon"
    assert say(f"<mrow>{CO2}</mrow>") == "O sub 2 equals C"
    assert say('<mrow intent=":chemical-equation"><mi>C</mi><mo>≡</mo><mi>N</mi></mrow>') == \
        "carbon triple bond nitrogen"


def test_chemistry_is_isolated_to_its_subtree():
    with_prop = say(f'<mrow><mrow intent=":chemical-equation">{CO2}</mrow><mrow>{CO2}</mrow></mrow>')
    assert with_prop == "oxygen 2 double bond carbon O sub 2 equals C"


# -- properties -------------------------------------------------------------------

@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_deterministic(seed):
    tree = random_tree(random.Random(seed))
    assert speak_element(tree).text == speak_element(tree).text


@settings(max_examples=200)
@given(st.text(alphabet="abcdef-", min_size=1, max_size=8).filter(lambda s: s[0] != "-"),
       st.integers(1, 4))
def test_style_monotonic_for_generic_function(name, arity):
    tree = ConceptNode("zz" + name, (), tuple(mi(v) for v in "pqrs"[:arity]))
    counts = [len(speak(tree, SpeechOptions(style=s)).text.split()) for s in ("terse", "medium", "verbose")]
    assert counts[0] <= counts[1] <= counts[2]


@pytest.mark.parametrize("fixity", FIXITIES)
def test_fixity_override_matches_edited_default(registry, fixity):
    args3 = (mi("a"), mi("b"), mi("c"))
    for name, entries in registry.concepts.items():
        for entry in entries:
            arity = entry.min_arity if entry.min_arity >= 2 or entry.max_arity < 2 else 2
            args = args3[:arity] if arity <= 3 else args3
            tree = ConceptNode(name, (fixity,), args)
            plain = ConceptNode(name, (), args)
            if registry.lookup_concept(name, len(args)) is not entry:
                continue
            clone = registry.with_entry(entry.with_fixity(fixity))
            for style in ("terse", "medium", "verbose"):
                opts = SpeechOptions(style=style)
                assert speak(tree, opts, registry).text == speak(plain, opts, clone).text


def test_syntactic_speech_is_longer_for_bars():
    semantic = say("<mrow><mo>|</mo><mi>x</mi><mo>|</mo></mrow>")
    syntactic = say("<mrow><mo>|</mo><mi>x</mi><mo>|</mo></mrow>", SYNTACTIC)
    assert len(semantic.split()) == 4 and len(syntactic.split()) == 5


def test_output_has_no_stray_spaces():
    for seed in range(200):
        text = speak_element(random_tree(random.Random(seed))).text
        assert text == text.strip() and "  " not in text
