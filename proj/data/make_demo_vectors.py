#!/usr/bin/env python3
"""Writes the small demo word-vector tables used by tests and examples.

Connectives get vectors near a shared centre per function group, so that
e.g. "because" and "since" end up close. Every other word is random noise.
The retrofitted table pulls each connective further towards its group
centre. Output is fully determined by SEED.
"""
import re
from pathlib import Path

import numpy as np

SEED = 20240517
DIM = 16
HERE = Path(__file__).resolve().parent

GROUPS = {
    "cause": ["because", "since", "given", "as", "due", "reason"],
    "contrast": ["however", "although", "but", "though", "conversely", "whereas",
                 "nevertheless", "nonetheless", "yet", "still", "contrary", "despite"],
    "addition": ["moreover", "furthermore", "indeed", "fact", "addition", "additionally",
                 "also", "besides", "and", "example", "instance"],
    "opinion": ["think", "believe", "opinion", "view", "i", "my"],
    "result": ["therefore", "thus", "hence", "consequently", "result", "accordingly", "so"],
    "time": ["when", "then", "after", "before", "meanwhile", "while"],
}

FILLER = ["the", "a", "of", "to", "in", "that", "is", "it", "on", "other", "hand",
          "even", "if", "we", "should", "people", "overall", "first", "second"]


def corpus_words():
    words = []
    for line in (HERE / "demo_cores.tsv").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        for field in line.split("\t")[1:]:
            words += re.findall(r"[a-z]+", field.lower())
    return words


def main():
    rng = np.random.default_rng(SEED)
    centres = {g: rng.normal(0.0, 1.0, DIM) for g in GROUPS}
    base = {}
    group_of = {}
    for g, members in GROUPS.items():
        for w in members:
            base[w] = centres[g] + rng.normal(0.0, 0.35, DIM)
            group_of[w] = g
    for w in FILLER + corpus_words():
        if w not in base and len(base) < 200:
            base[w] = rng.normal(0.0, 1.0, DIM)

    retro = {}
    for w, v in base.items():
        g = group_of.get(w)
        retro[w] = 0.5 * v + 0.5 * centres[g] if g else v.copy()

    for name, table in (("demo_vectors.txt", base), ("demo_vectors_retrofit.txt", retro)):
        with open(HERE / name, "w", encoding="utf-8") as f:
            f.write(f"{len(table)} {DIM}\n")
            for w in sorted(table):
                f.write(w + " " + " ".join(f"{x:.6f}" for x in table[w]) + "\n")


if __name__ == "__main__":
    main()
