"""Regenerate the third-party resource files bundled under src/lingshift/data.

Usage:
    python tools/import_resources.py UNPACKED_WHEELS_DIR

UNPACKED_WHEELS_DIR must contain the unpacked ``textblob`` (0.20.x) and
``textstat`` (0.7.x) wheels.  Only data files are copied or converted; no code
from either project is used at runtime.
"""
import csv
import sys
import xml.etree.ElementTree as ET
from collections import defaultdict
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "lingshift" / "data"


def convert_sentiment(xml_path: Path) -> None:
    senses = defaultdict(list)
    for word in ET.parse(xml_path).getroot().iter("word"):
        form = word.get("form", "").strip().lower()
        if not form:
            continue
        pos = word.get("pos", "")
        senses[(form, pos)].append(
            (
                float(word.get("polarity", 0.0)),
                float(word.get("subjectivity", 0.0)),
                float(word.get("intensity", 1.0)),
            )
        )

    intensifiers = {}
    with open(DATA / "sentiment_lexicon.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["word", "pos", "polarity", "subjectivity"])
        for (form, pos), rows in sorted(senses.items()):
            n = len(rows)
            polarity = sum(r[0] for r in rows) / n
            subjectivity = sum(r[1] for r in rows) / n
            intensity = sum(r[2] for r in rows) / n
            writer.writerow([form, pos, f"{polarity:.4f}", f"{subjectivity:.4f}"])
            if pos == "RB" and intensity != 1.0 and " " not in form:
                intensifiers[form] = intensity

    with open(DATA / "intensifiers.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["word", "multiplier"])
        for form, mult in sorted(intensifiers.items()):
            writer.writerow([form, f"{mult:.4f}"])


def copy_brill(en_dir: Path) -> None:
    for src, dst in [
        ("en-lexicon.txt", "brill_lexicon.txt"),
        ("en-morphology.txt", "brill_morphology.txt"),
        ("en-context.txt", "brill_context.txt"),
    ]:
        text = (en_dir / src).read_text(encoding="utf-8")
        (DATA / dst).write_text(text, encoding="utf-8")


def copy_easy_words(path: Path) -> None:
    words = sorted({w.strip().lower() for w in path.read_text(encoding="utf-8").split() if w.strip()})
    (DATA / "dale_chall_easy_words.txt").write_text("\n".join(words) + "\n", encoding="utf-8")


def main(root: str) -> None:
    base = Path(root)
    en_dir = base / "textblob" / "textblob" / "en"
    convert_sentiment(en_dir / "en-sentiment.xml")
    copy_brill(en_dir)
    copy_easy_words(base / "textstat" / "textstat" / "resources" / "en" / "easy_words.txt")


if __name__ == "__main__":
    main(sys.argv[1])
