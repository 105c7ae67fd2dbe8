import io
import sys

import pytest

from conftest import CORPUS
from mathintent import parse_file
from mathintent.cli import parse_config, run


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(stdin.encode())))
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


ABS_VALUE = str(CORPUS / "absolute_value.xml")
NESTED_POWER = str(CORPUS / "nested_power.xml")


def test_speak():
    assert call("speak", ABS_VALUE) == (0, "absolute value of x\n", "")
    assert call("speak", "--style", "verbose", ABS_VALUE)[1] == "the absolute value of x\n"
    assert call("speak", "--mode", "syntactic", ABS_VALUE)[1] == "vertical bar x vertical bar\n"


def test_tree_root_is_power():
    code, out, _ = call("tree", NESTED_POWER)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "power"
    assert lines[1:3] == ["  <mrow>", '    <mo> "("']


def test_lint_exit_codes(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text('<math><mrow intent="f("><mi>x</mi></mrow></math>')
    code, out, _ = call("lint", str(bad))
    assert code == 1
    assert out.startswith(f"{bad}:1:7: error INTENT_SYNTAX")
    assert call("lint", ABS_VALUE) == (0, "", "")


def test_lint_malformed_xml(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<math><mi>x</mo></math>")
    code, out, _ = call("lint", str(bad))
    assert code == 1 and "XML_PARSE" in out
    assert call("speak", str(bad))[0] == 3


def test_speak_reports_ignored_intent_on_stderr(tmp_path):
    doc = tmp_path / "d.xml"
    doc.write_text('<math><mrow intent="f($missing)"><mi>x</mi></mrow></math>')
    code, out, err = call("speak", str(doc))
    assert code == 0
    assert out == "x\n"
    assert "warning DANGLING_REF" in err


def test_batch_rows_match_math_roots():
    code, out, _ = call("batch", str(CORPUS))
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    total = sum(len(parse_file(p).math_roots) for p in CORPUS.rglob("*.xml"))
    assert len(rows) == total
    files = [r[0] for r in rows]
    assert files == sorted(files)
    assert all(len(r) == 3 for r in rows)


def test_stdin(monkeypatch):
    code, out, _ = call("speak", "-", stdin="<math><mi>x</mi><mo>+</mo><mn>1</mn></math>",
                        monkeypatch=monkeypatch)
    assert (code, out) == (0, "x plus 1\n")


def test_out_file(tmp_path):
    target = tmp_path / "o.txt"
    code, out, _ = call("speak", "--out", str(target), ABS_VALUE)
    assert code == 0 and out == ""
    assert target.read_text() == "absolute value of x\n"


def test_usage_and_input_errors(tmp_path):
    assert call("speak", "--subject", "physics", ABS_VALUE)[0] == 2
    assert call("speak", "--bogus", ABS_VALUE)[0] == 2
    assert call("speak", "--style", "loud", ABS_VALUE)[0] == 2
    assert call()[0] == 2
    assert call("speak", str(tmp_path / "missing.xml"))[0] == 3
    assert call("batch", str(tmp_path / "nope"))[0] == 3


def test_registry_flag(tmp_path):
    reg = tmp_path / "r.tsv"
    reg.write_text("C\tabsolute-value\t1\t1\tfunction\tmod #1\tmodulus of #1\tthe modulus of #1\n")
    assert call("speak", "--registry", str(reg), ABS_VALUE)[1] == "modulus of x\n"
    broken = tmp_path / "b.tsv"
    broken.write_text("C\tx\n")
    assert call("speak", "--registry", str(broken), ABS_VALUE)[0] == 2


def test_no_heuristics_flag(tmp_path):
    doc = tmp_path / "d.xml"
    doc.write_text("<math><mrow><mo>|</mo><mi>x</mi><mo>|</mo></mrow></math>")
    assert call("speak", str(doc))[1] == "absolute value of x\n"
    assert call("speak", "--no-heuristics", str(doc))[1] == "vertical bar x vertical bar\n"


def test_parse_config_defaults():
    cfg = parse_config(["batch", "dir", "--glob", "*.html"])
    assert (cfg.subcommand, cfg.input, cfg.batch_glob, cfg.style) == ("batch", "dir", "*.html", "medium")
