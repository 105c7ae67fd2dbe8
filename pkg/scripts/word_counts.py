"""Compare spoken length with and without intent information.

For every math element under a directory this prints the semantic speech,
the syntactic speech and their word counts, then a summary line.

    python3 scripts/word_counts.py corpus [--style terse]
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from mathintent import SpeechOptions, parse_file, speak_document


@dataclass
class Config:
    corpus: Path
    style: str = "medium"
    glob: str = "*.xml"


def main(cfg: Config):
    shorter = longer = same = 0
    for path in sorted(cfg.corpus.rglob(cfg.glob)):
        doc = parse_file(path)
        semantic = speak_document(doc, SpeechOptions(style=cfg.style))
        syntactic = speak_document(doc, SpeechOptions(style=cfg.style, mode="syntactic"))
        for i, (a, b) in enumerate(zip(semantic, syntactic)):
            wa, wb = len(a.text.split()), len(b.text.split())
            shorter += wa < wb
            longer += wa > wb
            same += wa == wb
            print(f"{path.name}[{i}]\t{wa}\t{wb}\t{a.text}\t|\t{b.text}")
    print(f"# semantic shorter: {shorter}, longer: {longer}, equal: {same}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("corpus", type=Path)
    ap.add_argument("--style", default="medium", choices=["terse", "medium", "verbose"])
    ap.add_argument("--glob", default="*.xml")
    ns = ap.parse_args()
    main(Config(ns.corpus, ns.style, ns.glob))
