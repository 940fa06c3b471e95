"""Command-line entry point: validate, analyze, report, new-words, pos-shift, sample."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import resources as res
from .corpus import parse_records
from .errors import InvalidConfigError, InvalidResourceError, LingshiftError, SchemaError
from .lexical import sophistication
from .profile import analyze_raw
from .pipeline import (
    analyze_records,
    build_report,
    check_paths,
    load_config,
    load_resources,
    prepare_corpus,
    run_analyze,
    write_new_words,
    write_pos_shift,
)

EXIT_OK, EXIT_FATAL, EXIT_SCHEMA = 0, 1, 2
log = logging.getLogger("lingshift")


def _window(text: str) -> list[int]:
    parts = text.replace(",", ":").split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected FIRST:LAST period ordinals")
    try:
        return [int(parts[0]), int(parts[1])]
    except ValueError:
        raise argparse.ArgumentTypeError("period ordinals must be integers") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="pipeline config (JSON)")
    common.add_argument("--workers", type=int, help="worker processes for document analysis")
    common.add_argument("--seed", type=int, help="seed for sampling")
    common.add_argument("--out", help="output directory")
    common.add_argument("--fit-window", type=_window, help="trend-fit periods, e.g. 0:35")
    common.add_argument("--post-window", type=_window, help="post-event periods, e.g. 36:39")
    common.add_argument("--group-by", action="append", choices=["discipline", "language_group", "country"])
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="lingshift", description="Stylometric drift analysis for dated corpora.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="load and check every resource")
    sub.add_parser("analyze", parents=[common], help="compute the feature store")
    sub.add_parser("report", parents=[common], help="shift tests, change rates and period means")
    sub.add_parser("new-words", parents=[common], help="words first attested per period")
    sub.add_parser("pos-shift", parents=[common], help="POS-category frequency shift between two years")
    sample = sub.add_parser("sample", parents=[common], help="per-period random sample of the filtered corpus")
    sample.add_argument("-n", type=int, required=True, help="records per period")
    return parser


def _overrides(args) -> dict:
    return {
        "workers": args.workers,
        "seed": args.seed,
        "out": args.out,
        "fit_window": args.fit_window,
        "post_window": args.post_window,
        "group_by": args.group_by,
    }


def cmd_validate(cfg) -> int:
    report: dict = {}
    check_paths(cfg)
    resources = load_resources(cfg)
    lx = resources.lexicons
    report["resources"] = {
        "resource_dir": str(res.resource_dir()),
        "brill_lexicon": len(lx.tagger.lexicon),
        "brill_context_rules": len(lx.tagger.context),
        "function_words": len(lx.function_words),
        "abbreviations": len(lx.abbreviations),
        "syllable_exceptions": len(lx.syllable_exceptions),
        "easy_words": len(resources.easy_words),
        "connectives": {c: len(v) for c, v in resources.connectives.categories.items()},
        "sentiment_entries": len(resources.sentiment.entries),
        "negations": len(resources.sentiment.negations),
        "intensifiers": len(resources.sentiment.intensifiers),
        "llm_adjectives": len(resources.llm_words.adjectives),
        "llm_adverbs": len(resources.llm_words.adverbs),
        "llm_duplicates": resources.llm_words.duplicates,
        "norms": len(resources.norms) if resources.norms else None,
        "vectors": len(resources.vectors) if resources.vectors else None,
    }
    if resources.norms and cfg.corpus is not None and cfg.corpus.exists():
        with open(cfg.corpus, encoding="utf-8") as fh:
            records, _ = parse_records(fh)
        hits = total = 0
        for r in records[:200]:
            try:
                items = [t.normalized for t in analyze_raw(r.abstract_text, resources).tokens if t.is_lexical]
            except LingshiftError:
                continue
            try:
                _, _, cov = sophistication(items, resources.norms)
            except LingshiftError:
                cov = 0.0
            hits += cov * len(items)
            total += len(items)
        report["norms_coverage"] = hits / total if total else None
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_analyze(cfg) -> int:
    result = run_analyze(cfg)
    print(f"{result.n_rows} rows in {result.store} ({result.n_computed} computed, {result.n_errors} errors)")
    return EXIT_OK


def cmd_report(cfg) -> int:
    summary = build_report(cfg)
    for w in summary["warnings"]:
        log.warning(w)
    print(f"{summary['tests']} tests over {summary['documents']} documents; files in {cfg.out}")
    return EXIT_OK


def cmd_new_words(cfg) -> int:
    resources = load_resources(cfg)
    prepared = prepare_corpus(cfg, resources)
    key = cfg.group_by[0] if cfg.group_by else "discipline"
    path = write_new_words(cfg, prepared.records, analyze_records(prepared.records, resources), key)
    print(path)
    return EXIT_OK


def cmd_pos_shift(cfg) -> int:
    resources = load_resources(cfg)
    prepared = prepare_corpus(cfg, resources)
    key = cfg.group_by[0] if cfg.group_by else "language_group"
    texts = analyze_records(prepared.records, resources)
    print(write_pos_shift(cfg, prepared.records, texts, resources.llm_words, key))
    return EXIT_OK


def cmd_sample(cfg, n: int) -> int:
    cfg.sample_n = n
    resources = load_resources(cfg)
    prepared = prepare_corpus(cfg, resources)
    keep = {r.line_number for r in prepared.records}
    cfg.out.mkdir(parents=True, exist_ok=True)
    path = cfg.out / "sample.jsonl"
    with open(cfg.corpus, encoding="utf-8") as src:
        lines = [line for i, line in enumerate(src, 1) if i in keep]
    by_id = sorted(lines, key=lambda line: json.loads(line)["id"])
    with open(path, "w", encoding="utf-8") as dst:
        dst.writelines(line if line.endswith("\n") else line + "\n" for line in by_id)
    print(f"{len(by_id)} records written to {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config, _overrides(args))
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "report":
            return cmd_report(cfg)
        if args.command == "new-words":
            return cmd_new_words(cfg)
        if args.command == "pos-shift":
            return cmd_pos_shift(cfg)
        return cmd_sample(cfg, args.n)
    except (InvalidResourceError, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (InvalidConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    except LingshiftError as exc:
        print(f"error ({exc.reason}): {exc}", file=sys.stderr)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
