"""Regenerate the frozen synthetic test fixtures under tests/fixtures/.

Run once; the outputs are committed and the tests treat them as golden inputs.
"""
from __future__ import annotations

import json
import sys
import zlib
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from synthetic import NEUTRAL_ADJ, NOUNS, PLURALS, LLM_ADJ, make_corpus, write_corpus, write_sidecar  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"

ONE_SENTENCE = (
    "We propose a simple and general framework for learning sparse representations of noisy graph "
    "signals that combines a convex relaxation of the combinatorial support recovery problem with a "
    "stochastic first-order solver whose per-iteration cost scales linearly in the number of edges and "
    "whose statistical guarantees match the known minimax lower bounds up to logarithmic factors."
)


def make_corpus200() -> None:
    records, countries = make_corpus(200, seed=20240501)
    records[7]["abstract"] = ONE_SENTENCE
    # a few documents without a country, and one with an unmapped country
    for rec in records[10:14]:
        countries.pop(rec["id"])
    countries[records[20]["id"]] = "ATLANTIS"
    write_corpus(FIXTURES / "corpus200.jsonl", records)
    write_sidecar(FIXTURES / "corpus200_countries.csv", countries)


def make_norms() -> None:
    easy = (ROOT / "src" / "lingshift" / "data" / "dale_chall_easy_words.txt").read_text(encoding="utf-8").split()
    words = sorted(set(easy) | set(NEUTRAL_ADJ) | set(NOUNS) | set(PLURALS) | set(LLM_ADJ))
    with open(FIXTURES / "norms_synthetic.tsv", "w", encoding="utf-8") as fh:
        fh.write("word\tlog_frequency\tlog_range\n")
        for w in words:
            jitter = (zlib.crc32(w.encode()) % 1000) / 1000 - 0.5
            freq = 4.5 - 0.25 * len(w) + 0.4 * jitter
            rng = -0.2 - 0.08 * len(w) + 0.1 * jitter
            fh.write(f"{w}\t{freq:.3f}\t{rng:.3f}\n")


# (category, example words, tag, NES 2022, NES 2023, NES printed delta, NNES 2022, NNES 2023, NNES printed delta)
POS_SHIFT_ROWS = [
    ("CC", ["and", "or", "but", "either", "nor"], "CC", 58270, 59851, 2.71, 56339, 58318, 3.51),
    ("IN", ["of", "in", "for", "with", "on", "by", "from", "at"], "IN", 167142, 165005, -1.28, 162573, 162744, -1.92),
    ("VBZ", ["is", "are", "has", "was"], "VBZ", 39579, 37819, -4.45, 39943, 36652, -8.24),
    ("VBN", ["found", "present", "called", "showed", "proposed"], "VBN", 9605, 9360, -2.55, 10353, 10050, -2.93),
    ("RB", ["significantly", "effectively", "directly", "automatically"], "RB", 3842, 3823, -0.49, 4365, 4716, 8.04),
    ("NN", ["model", "method", "paper", "work", "approach", "system"], "NN", 27114, 28798, 6.21, 28819, 30974, 7.18),
    ("JJS", ["most", "best", "highest", "largest", "latest"], "JJS", 1080, 1014, -6.11, 1048, 979, -6.58),
    ("LLM-adjectives", ["comprehensive", "innovative", "notable", "valuable"], "JJ", 3567, 4058, 12.09, 3675, 4169, 13.44),
    ("LLM-adverbs", ["particularly", "effectively", "potentially", "additionally"], "RB", 3788, 4070, 7.44, 3886, 4242, 9.16),
]


def _split(total: int, n: int) -> list[int]:
    # descending shares so the first example word is the most frequent
    weights = list(range(n, 0, -1))
    parts = [total * w // sum(weights) for w in weights]
    parts[0] += total - sum(parts)
    return parts


def make_pos_shift_counts() -> None:
    out = []
    for cat, examples, tag, nes_a, nes_b, nes_d, nnes_a, nnes_b, nnes_d in POS_SHIFT_ROWS:
        for group, before, after, delta in (("NES", nes_a, nes_b, nes_d), ("NNES", nnes_a, nnes_b, nnes_d)):
            out.append({
                "category": cat,
                "group": group,
                "tag": tag,
                "printed_delta_pct": delta,
                "before": dict(zip(examples, _split(before, len(examples)))),
                "after": dict(zip(examples, _split(after, len(examples)))),
            })
    (FIXTURES / "pos_shift_counts.json").write_text(json.dumps(out, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_corpus200()
    make_norms()
    make_pos_shift_counts()
