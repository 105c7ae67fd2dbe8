"""Command-line front end.

Usage::

    mathintent speak [--style terse|medium|verbose] [--mode semantic|syntactic] FILE
    mathintent tree FILE
    mathintent lint FILE
    mathintent batch DIR [--glob PATTERN]

FILE may be ``-`` for standard input. Speech goes to stdout (or ``--out``);
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .dom import ParseError, parse_document
from .registry import STYLES, LoadError, load_registry
from .resolve import StructuralNode, build_intent_tree, dump_tree, lint_element
from .speech import MODES, SpeechOptions, speak_document

EXIT_OK, EXIT_LINT, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


@dataclass
class CliConfig:
    subcommand: str
    input: str
    style: str = "medium"
    mode: str = "semantic"
    heuristics: bool = True
    language: str = "en"
    registry_paths: list = field(default_factory=list)
    output: Optional[str] = None
    batch_glob: str = "*.xml"
    subject: Optional[str] = None

    def speech_options(self) -> SpeechOptions:
        return SpeechOptions(self.style, self.mode, self.heuristics, self.language)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--style", choices=STYLES, default="medium")
    common.add_argument("--mode", choices=MODES, default="semantic")
    common.add_argument("--no-heuristics", dest="heuristics", action="store_false")
    common.add_argument("--lang", default="en", help="language tag selecting the built-in data")
    common.add_argument("--registry", action="append", default=[], metavar="PATH",
                        help="extra registry TSV file (repeatable, later files win)")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--subject", metavar="NAME", help="reserved; not implemented")

    parser = _Parser(prog="mathintent", description="Speak MathML with intent annotations.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name, help_text in (("speak", "one line of speech per math element"),
                            ("tree", "dump the resolved intent tree"),
                            ("lint", "check intent and arg attributes")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="XML/HTML file, or - for stdin")
    p = sub.add_parser("batch", parents=[common], help="speak every matching file under DIR as TSV")
    p.add_argument("input", help="directory to search recursively")
    p.add_argument("--glob", default="*.xml", dest="glob")
    return parser


def parse_config(argv) -> CliConfig:
    ns = build_parser().parse_args(argv)
    return CliConfig(
        subcommand=ns.subcommand, input=ns.input, style=ns.style, mode=ns.mode,
        heuristics=ns.heuristics, language=ns.lang, registry_paths=ns.registry,
        output=ns.out, batch_glob=getattr(ns, "glob", "*.xml"), subject=ns.subject,
    )


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def math_content(tree):
    """Drop the ``<math>`` wrapper when it holds exactly one child."""
    if (isinstance(tree, StructuralNode) and tree.kind == "math"
            and not tree.properties and len(tree.children) == 1):
        return tree.children[0]
    return tree


def _report(diagnostics, name: str, err):
    for d in diagnostics:
        if d.severity != "info":
            line, col = d.source_position
            print(f"{name}:{line}:{col}: {d.severity} {d.code} {d.message}", file=err)


def _batch_rows(path: Path, root: Path, config: CliConfig, registry):
    try:
        doc = parse_document(path.read_bytes())
    except (OSError, ParseError) as exc:
        return [], f"{path}: {exc}"
    rel = path.relative_to(root).as_posix()
    outs = speak_document(doc, config.speech_options(), registry)
    return [f"{rel}\t{i}\t{o.text}" for i, o in enumerate(outs)], None


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config = parse_config(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if config.subject is not None:
        print("mathintent: --subject is not implemented", file=stderr)
        return EXIT_USAGE
    try:
        registry = load_registry(config.registry_paths, config.language)
    except LoadError as exc:
        print(f"mathintent: {exc}", file=stderr)
        return EXIT_USAGE

    lines: list[str] = []
    status = EXIT_OK
    name = "<stdin>" if config.input == "-" else config.input

    if config.subcommand == "batch":
        root = Path(config.input)
        if not root.is_dir():
            print(f"mathintent: {root}: not a directory", file=stderr)
            return EXIT_INPUT
        paths = sorted(p for p in root.rglob(config.batch_glob) if p.is_file())
        with ThreadPoolExecutor() as pool:
            results = pool.map(lambda p: _batch_rows(p, root, config, registry), paths)
            for rows, error in results:
                if error:
                    print(f"mathintent: {error}", file=stderr)
                lines.extend(rows)
    else:
        try:
            data = _read(config.input)
        except OSError as exc:
            print(f"mathintent: {name}: {exc.strerror or exc}", file=stderr)
            return EXIT_INPUT
        try:
            doc = parse_document(data)
        except ParseError as exc:
            if config.subcommand == "lint":
                print(f"{name}:{exc.line}:{exc.column}: error XML_PARSE {exc.message}", file=stdout)
                return EXIT_LINT
            print(f"mathintent: {name}:{exc.line}:{exc.column}: {exc.message}", file=stderr)
            return EXIT_INPUT

        if config.subcommand == "speak":
            for out in speak_document(doc, config.speech_options(), registry):
                _report(out.diagnostics, name, stderr)
                lines.append(out.text)
        elif config.subcommand == "tree":
            for i, m in enumerate(doc.math_roots):
                tree, diagnostics = build_intent_tree(m, config.speech_options().build_options(),
                                                      registry)
                _report(diagnostics, name, stderr)
                if i:
                    lines.append("")
                lines.append(dump_tree(math_content(tree)))
        else:
            diagnostics = lint_element(doc.root, registry)
            for d in diagnostics:
                line, col = d.source_position
                lines.append(f"{name}:{line}:{col}: {d.severity} {d.code} {d.message}")
            if any(d.severity == "error" for d in diagnostics):
                status = EXIT_LINT

    text = "".join(line + "\n" for line in lines)
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
