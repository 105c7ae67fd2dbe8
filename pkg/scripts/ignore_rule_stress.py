"""Stress the ignore rule on random documents.

Each intent in a random tree is corrupted with probability ``p`` (syntax
error or dangling reference). Speech of the corrupted document is compared
byte for byte with the same document where those intents are deleted.

    python3 scripts/ignore_rule_stress.py --docs 5000 --p 0.5 --seed 1
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from gen import corrupt_invalid, random_tree  # noqa: E402
from mathintent.dom import Element, serialize, strip_attribute, transform_attributes  # noqa: E402
from mathintent.speech import speak_element  # noqa: E402


@dataclass
class Config:
    docs: int = 1000
    p: float = 0.5
    seed: int = 0


def run(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    failures = corrupted = 0
    start = time.perf_counter()
    for _ in range(cfg.docs):
        doc = Element("math", {}, (random_tree(rng),))
        bad = {id(el): corrupt_invalid(rng, el) for el in doc.iter()
               if "intent" in el.attributes and rng.random() < cfg.p}
        corrupted += len(bad)
        dirty = transform_attributes(doc, lambda el: (
            {**el.attributes, "intent": bad[id(el)]} if id(el) in bad else el.attributes))
        clean = strip_attribute(doc, "intent", lambda el: id(el) in bad)
        a, b = speak_element(dirty).text, speak_element(clean).text
        if a != b:
            failures += 1
            print(f"MISMATCH\n  {serialize(dirty)}\n  {a!r}\n  {b!r}")
    elapsed = time.perf_counter() - start
    print(f"docs={cfg.docs} corrupted_intents={corrupted} mismatches={failures} "
          f"time={elapsed:.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=1000)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    sys.exit(run(Config(ns.docs, ns.p, ns.seed)))
