"""Config handling, the feature store, and report assembly used by the CLI."""
from __future__ import annotations

import csv
import datetime as dt
import hashlib
import json
import logging
import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__
from . import resources as res
from .corpus import (
    Discipline,
    DocumentRecord,
    FilterConfig,
    assign_period,
    classify_document,
    filter_records,
    join_author_countries,
    load_country_groups,
    parse_records,
    sample_per_period,
)
from .driftstats import GROUP_KEYS, build_series, change_rate, fit_trend, group_values, shift_test
from .errors import InvalidConfigError, LingshiftError, SchemaError
from .markers import LLMWordList, detect_new_words, pos_category_shift, pos_counts, vocabulary
from .profile import METRIC_COLUMNS, METRIC_UNITS, AnalysisResources, analyze_raw, style_profile

log = logging.getLogger(__name__)

ID_COLUMNS = ("doc_id", "period", "discipline", "language_group", "country")
FEATURE_COLUMNS = ID_COLUMNS + METRIC_COLUMNS
SHIFT_COLUMNS = (
    "group", "metric", "r_squared", "slope", "predicted_mean", "observed_mean",
    "ks_stat", "cohens_d", "p_value", "n_pre", "n_post", "status",
)
CHANGE_COLUMNS = ("group", "metric", "year_a", "year_b", "change_pct", "status")
PERIOD_COLUMNS = ("group", "metric", "period", "n", "mean")
NEW_WORD_COLUMNS = ("group", "period", "word", "count")
POS_SHIFT_COLUMNS = ("group", "category", "top_words", "before", "after", "change_pct", "flagged")
ERROR_COLUMNS = ("doc_id", "line", "stage", "reason", "detail")


@dataclass
class PipelineConfig:
    base_dir: Path
    corpus: Path | None = None
    sidecar: Path | None = None
    country_groups: Path | None = None
    resources: dict[str, Path] = field(default_factory=dict)
    norms: Path | None = None
    vectors: Path | None = None
    filter: FilterConfig = field(default_factory=FilterConfig)
    group_by: tuple[str, ...] = ()
    sample_n: int | None = None
    seed: int = 0
    workers: int = 1
    out: Path = Path("out")
    fit_window: tuple[int, int] = (0, 35)
    post_window: tuple[int, int] = (36, 39)
    residual_mode: str = "document"
    switches: dict[str, Any] = field(default_factory=dict)
    change_years: tuple[int, int] = (2022, 2023)
    new_words: dict[str, int] = field(default_factory=lambda: {"min_count": 5, "min_prior_periods": 4})
    pos_shift: dict[str, Any] = field(default_factory=lambda: {"k": 10, "threshold": 0.04})
    raw: dict = field(default_factory=dict)

    def analysis_fingerprint(self) -> str:
        """Hash of everything that can change a feature-store row."""
        h = hashlib.sha256()
        keys = ("filter", "sample", "switches", "resources", "norms", "vectors", "corpus", "sidecar", "country_groups")
        h.update(json.dumps({k: self.raw.get(k) for k in keys}, sort_keys=True, default=str).encode())
        h.update(str(self.seed).encode())
        h.update(__version__.encode())
        for path in sorted(str(p) for p in self.resource_files()):
            h.update(path.encode())
            h.update(hashlib.sha256(Path(path).read_bytes()).digest())
        return h.hexdigest()

    def resource_files(self) -> list[Path]:
        files = [res.resource_path(name, self.resources) for name in res.DEFAULT_FILES]
        files = [f for f in files if f.exists()]
        for extra in (self.norms, self.vectors, self.country_groups, self.corpus, self.sidecar):
            if extra is not None and extra.exists():
                files.append(extra)
        return files


def _path(base: Path, value) -> Path | None:
    if value in (None, ""):
        return None
    p = Path(value)
    return p if p.is_absolute() else base / p


def _window(value, name: str) -> tuple[int, int]:
    if not (isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, int) for v in value)):
        raise InvalidConfigError(f"{name} must be a pair of period ordinals")
    lo, hi = value
    if lo > hi:
        raise InvalidConfigError(f"{name} is empty")
    return lo, hi


def load_config(path: str | Path | None, overrides: dict | None = None) -> PipelineConfig:
    raw: dict = {}
    base = Path.cwd()
    if path is not None:
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise InvalidConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise InvalidConfigError(f"config {path} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise InvalidConfigError("config must be a JSON object")
        base = path.resolve().parent
    for k, v in (overrides or {}).items():
        if v is not None:
            raw[k] = v

    f = raw.get("filter", {})
    fc = FilterConfig()
    if "min_abstract_tokens" in f:
        fc.min_abstract_tokens = int(f["min_abstract_tokens"])
    if "excluded_months" in f:
        fc.excluded_months = tuple((int(y), int(m)) for y, m in f["excluded_months"])
    if "window" in f:
        fc.window = (dt.date.fromisoformat(f["window"][0]), dt.date.fromisoformat(f["window"][1]))
    if "allowed_disciplines" in f:
        try:
            fc.allowed_disciplines = frozenset(Discipline(d) for d in f["allowed_disciplines"])
        except ValueError as exc:
            raise InvalidConfigError(str(exc)) from None
    if "required_fields" in f:
        fc.required_fields = tuple(f["required_fields"])

    group_by = raw.get("group_by") or ()
    if isinstance(group_by, str):
        group_by = (group_by,)
    for g in group_by:
        if g not in GROUP_KEYS:
            raise InvalidConfigError(f"unknown group_by key {g!r}")

    sample = raw.get("sample") or {}
    cfg = PipelineConfig(
        base_dir=base,
        corpus=_path(base, raw.get("corpus")),
        sidecar=_path(base, raw.get("sidecar")),
        country_groups=_path(base, raw.get("country_groups")),
        resources={k: _path(base, v) for k, v in (raw.get("resources") or {}).items()},
        norms=_path(base, raw.get("norms")),
        vectors=_path(base, raw.get("vectors")),
        filter=fc,
        group_by=tuple(group_by),
        sample_n=sample.get("n"),
        seed=int(raw.get("seed", sample.get("seed", 0))),
        workers=int(raw.get("workers", 1)),
        out=_path(base, raw.get("out", "out")),
        fit_window=_window(raw.get("fit_window", [0, 35]), "fit_window"),
        post_window=_window(raw.get("post_window", [36, 39]), "post_window"),
        residual_mode=raw.get("residual_mode", "document"),
        switches=dict(raw.get("switches") or {}),
        change_years=tuple(raw.get("change_years", (2022, 2023))),
        raw=raw,
    )
    cfg.new_words.update(raw.get("new_words") or {})
    cfg.pos_shift.update(raw.get("pos_shift") or {})
    for name in cfg.resources:
        if name not in res.DEFAULT_FILES:
            raise InvalidConfigError(f"unknown resource name {name!r}")
    lo, hi = cfg.fit_window
    if not (cfg.post_window[1] < lo or cfg.post_window[0] > hi):
        raise InvalidConfigError("fit_window and post_window overlap")
    if cfg.workers < 1:
        raise InvalidConfigError("workers must be >= 1")
    if cfg.residual_mode not in ("document", "period_mean"):
        raise InvalidConfigError(f"unknown residual_mode {cfg.residual_mode!r}")
    return cfg


def check_paths(cfg: PipelineConfig, need_corpus: bool = False) -> None:
    """Every referenced file must exist; raises InvalidConfigError listing the missing ones."""
    wanted = [cfg.sidecar, cfg.country_groups, cfg.norms, cfg.vectors, *cfg.resources.values()]
    if need_corpus:
        if cfg.corpus is None:
            raise InvalidConfigError("config has no corpus path")
        wanted.append(cfg.corpus)
    missing = [str(p) for p in wanted if p is not None and not p.exists()]
    if missing:
        raise InvalidConfigError("missing files: " + ", ".join(missing))


_SWITCHES = ("allow_zero_tunits", "symmetric_overlap", "keep_hyphenated", "mattr_window")


def load_resources(cfg: PipelineConfig) -> AnalysisResources:
    switches = {k: v for k, v in cfg.switches.items() if k in _SWITCHES}
    return AnalysisResources.load(cfg.resources, norms=cfg.norms, vectors=cfg.vectors, **switches)


# corpus preparation


@dataclass
class PreparedCorpus:
    records: list[DocumentRecord]
    parse_errors: list
    rejections: Counter
    matched_countries: int
    n_input: int


def prepare_corpus(cfg: PipelineConfig, resources: AnalysisResources) -> PreparedCorpus:
    check_paths(cfg, need_corpus=True)
    try:
        with open(cfg.corpus, encoding="utf-8") as fh:
            records, errors = parse_records(fh)
    except OSError as exc:
        raise InvalidConfigError(f"cannot read corpus: {exc}") from None
    matched = 0
    if cfg.sidecar is not None:
        records, matched = join_author_countries(records, cfg.sidecar)
    groups = load_country_groups(cfg.country_groups or res.resource_path("country_groups", cfg.resources))
    records = [classify_document(r, groups, cfg.filter.prefixes) for r in records]
    kept, tally = filter_records(records, cfg.filter, resources.lexicons)
    if cfg.sample_n:
        kept = sample_per_period(kept, int(cfg.sample_n), cfg.seed, cfg.filter.window_start_year, cfg.filter.n_periods)
    kept.sort(key=lambda r: r.doc_id)
    return PreparedCorpus(kept, errors, tally, matched, len(records) + len(errors))


# feature store

_worker_resources: AnalysisResources | None = None


def _init_worker(cfg: PipelineConfig) -> None:
    global _worker_resources
    _worker_resources = load_resources(cfg)


def _analyze_one(job: tuple[str, str]) -> tuple[str, dict | None, str | None, str | None]:
    doc_id, text = job
    try:
        return doc_id, style_profile(analyze_raw(text, _worker_resources), _worker_resources), None, None
    except LingshiftError as exc:
        return doc_id, None, exc.reason, str(exc)


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, float):
        return repr(v)
    return str(v)


def feature_row(record: DocumentRecord, metrics: dict, window_start_year: int, n_periods: int) -> list[str]:
    period = assign_period(record.submitted_at, window_start_year, n_periods).ordinal
    ids = [record.doc_id, str(period), record.discipline.value, record.language_group.value, record.first_author_country or ""]
    return ids + [format_value(metrics.get(c)) for c in METRIC_COLUMNS]


def _read_store(path: Path) -> dict[str, list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != FEATURE_COLUMNS:
            return {}
        return {row[0]: row for row in reader if row}


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([format_value(v) if not isinstance(v, str) else v for v in row])
    os.replace(tmp, path)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")


def feature_schema(cfg: PipelineConfig) -> dict:
    return {
        "columns": list(FEATURE_COLUMNS),
        "id_columns": list(ID_COLUMNS),
        "units": METRIC_UNITS,
        "missing": "empty cell",
        "window_start_year": cfg.filter.window_start_year,
        "n_periods": cfg.filter.n_periods,
        "version": __version__,
    }


@dataclass
class AnalyzeResult:
    store: Path
    n_rows: int
    n_computed: int
    n_errors: int


def run_analyze(cfg: PipelineConfig, workers: int | None = None) -> AnalyzeResult:
    resources = load_resources(cfg)
    prepared = prepare_corpus(cfg, resources)
    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    store = out / "features.csv"
    manifest_path = out / "manifest.json"
    fingerprint = cfg.analysis_fingerprint()

    existing: dict[str, list[str]] = {}
    if store.exists() and manifest_path.exists():
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            manifest = {}
        if manifest.get("config_hash") == fingerprint:
            existing = _read_store(store)

    wanted_ids = {r.doc_id for r in prepared.records}
    todo = [r for r in prepared.records if r.doc_id not in existing]
    results: dict[str, tuple] = {}
    workers = workers or cfg.workers
    jobs = [(r.doc_id, r.abstract_text) for r in todo]
    if workers > 1 and len(jobs) > 1:
        chunk = max(1, len(jobs) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(cfg,)) as pool:
            for doc_id, metrics, reason, detail in pool.map(_analyze_one, jobs, chunksize=chunk):
                results[doc_id] = (metrics, reason, detail)
    else:
        global _worker_resources
        _worker_resources = resources
        for job in jobs:
            doc_id, metrics, reason, detail = _analyze_one(job)
            results[doc_id] = (metrics, reason, detail)

    rows: list[list[str]] = []
    errors: list[list] = [["", e.line_number, "parse", e.reason, e.detail] for e in prepared.parse_errors]
    by_id = {r.doc_id: r for r in prepared.records}
    for doc_id in sorted(wanted_ids):
        if doc_id in existing:
            rows.append(existing[doc_id])
            continue
        metrics, reason, detail = results[doc_id]
        if metrics is None:
            errors.append([doc_id, by_id[doc_id].line_number, "analyze", reason, detail])
            continue
        rows.append(feature_row(by_id[doc_id], metrics, cfg.filter.window_start_year, cfg.filter.n_periods))

    old_errors = out / "errors.csv"
    if todo or not store.exists() or set(existing) != {r[0] for r in rows}:
        _write_csv(store, FEATURE_COLUMNS, rows)
        _write_csv(old_errors, ERROR_COLUMNS, errors)
        _write_json(out / "features.schema.json", feature_schema(cfg))
        _write_json(manifest_path, {
            "config_hash": fingerprint,
            "rows": len(rows),
            "input_records": prepared.n_input,
            "parse_errors": len(prepared.parse_errors),
            "rejected": dict(sorted(prepared.rejections.items())),
            "countries_matched": prepared.matched_countries,
            "features_sha256": hashlib.sha256(store.read_bytes()).hexdigest(),
        })
    return AnalyzeResult(store, len(rows), len(todo), len(errors))


# reports


def read_feature_store(path: Path) -> list[dict[str, str]]:
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise InvalidConfigError(f"cannot read feature store {path}: {exc}") from None
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in FEATURE_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"feature store lacks columns: {', '.join(missing)}", missing=missing)
        return list(reader)


def _group_label(grouping: dict[str, str]) -> str:
    return ";".join(f"{k}={v}" for k, v in grouping.items()) or "all"


def _groupings(rows: list[dict], keys: Sequence[str]) -> list[dict[str, str]]:
    out: list[dict[str, str]] = [{}]
    for k in keys:
        out.extend(group_values(rows, [k]))
    return out


def build_report(cfg: PipelineConfig, store: Path | None = None) -> dict:
    store = store or cfg.out / "features.csv"
    rows = read_feature_store(store)
    schema_path = store.with_name("features.schema.json")
    start_year = cfg.filter.window_start_year
    if schema_path.exists():
        start_year = json.loads(schema_path.read_text(encoding="utf-8")).get("window_start_year", start_year)

    shift_rows, change_rows, period_rows = [], [], []
    warnings: list[str] = []
    failures: dict[tuple[str, str], list[str]] = {}
    for grouping in _groupings(rows, cfg.group_by):
        label = _group_label(grouping)
        for metric in METRIC_COLUMNS:
            series = build_series(rows, metric, grouping, METRIC_COLUMNS)
            for p in series.periods():
                vals = series.values[p]
                period_rows.append([label, metric, p, len(vals), sum(vals) / len(vals)])
            try:
                fit = fit_trend(series, cfg.fit_window)
                r = shift_test(series, fit, cfg.post_window, cfg.residual_mode)
                shift_rows.append([label, metric, r.r_squared, r.slope, r.predicted_mean, r.observed_mean,
                                   r.ks_stat, r.cohens_d, r.p_value, r.n_pre, r.n_post, "ok"])
            except LingshiftError as exc:
                shift_rows.append([label, metric, None, None, None, None, None, None, None, 0, 0, exc.reason])
                failures.setdefault((label, str(exc)), []).append(metric)
            ya, yb = cfg.change_years
            try:
                change_rows.append([label, metric, ya, yb, change_rate(series, ya, yb, start_year), "ok"])
            except LingshiftError as exc:
                change_rows.append([label, metric, ya, yb, None, exc.reason])

    for (label, msg), metrics in failures.items():
        what = metrics[0] if len(metrics) == 1 else f"{len(metrics)} metrics"
        warnings.append(f"{label} {what}: {msg}")

    out = cfg.out
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "shift_tests.csv", SHIFT_COLUMNS, shift_rows)
    _write_csv(out / "change_rates.csv", CHANGE_COLUMNS, change_rows)
    _write_csv(out / "period_means.csv", PERIOD_COLUMNS, period_rows)
    significant = sorted({f"{r[0]}:{r[1]}" for r in shift_rows if r[-1] == "ok" and r[8] < 0.05})
    summary = {
        "documents": len(rows),
        "fit_window": list(cfg.fit_window),
        "post_window": list(cfg.post_window),
        "residual_mode": cfg.residual_mode,
        "groups": [_group_label(g) for g in _groupings(rows, cfg.group_by)],
        "tests": len(shift_rows),
        "tests_failed": sum(1 for r in shift_rows if r[-1] != "ok"),
        "significant_at_0.05": significant,
        "files": ["shift_tests.csv", "change_rates.csv", "period_means.csv"],
    }
    if cfg.corpus is not None and cfg.corpus.exists():
        resources = load_resources(cfg)
        prepared = prepare_corpus(cfg, resources)
        texts = analyze_records(prepared.records, resources)
        try:
            write_new_words(cfg, prepared.records, texts)
            summary["files"].append("new_words.csv")
        except LingshiftError as exc:
            warnings.append(f"new words: {exc}")
        write_pos_shift(cfg, prepared.records, texts, resources.llm_words)
        summary["files"].append("pos_shift.csv")
    summary["warnings"] = warnings
    _write_json(out / "summary.json", summary)
    return summary


def analyze_records(records: Sequence[DocumentRecord], resources: AnalysisResources) -> dict[str, Any]:
    texts = {}
    for r in records:
        try:
            texts[r.doc_id] = analyze_raw(r.abstract_text, resources)
        except LingshiftError:
            continue
    return texts


def _record_group(record: DocumentRecord, key: str | None) -> str:
    if key is None:
        return "all"
    if key == "country":
        return record.first_author_country or ""
    return getattr(record, key).value


def write_new_words(cfg: PipelineConfig, records: Sequence[DocumentRecord], texts: dict, group_key: str | None = "discipline") -> Path:
    streams: dict[str, dict[int, Counter]] = defaultdict(lambda: {p: Counter() for p in range(cfg.filter.n_periods)})
    for r in records:
        if r.doc_id not in texts:
            continue
        p = assign_period(r.submitted_at, cfg.filter.window_start_year, cfg.filter.n_periods).ordinal
        streams[_record_group(r, group_key)][p].update(vocabulary(texts[r.doc_id]))
    rows = []
    for group in sorted(streams):
        report = detect_new_words(streams[group], int(cfg.new_words["min_count"]), int(cfg.new_words["min_prior_periods"]))
        for period in sorted(report):
            rows.extend([group, period, w, c] for w, c in report[period])
    path = cfg.out / "new_words.csv"
    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_csv(path, NEW_WORD_COLUMNS, rows)
    return path


def write_pos_shift(
    cfg: PipelineConfig,
    records: Sequence[DocumentRecord],
    texts: dict,
    llm_words: LLMWordList,
    group_key: str | None = "language_group",
) -> Path:
    ya, yb = int(cfg.pos_shift.get("before_year", cfg.change_years[0])), int(cfg.pos_shift.get("after_year", cfg.change_years[1]))
    samples: dict[str, dict[int, list]] = defaultdict(lambda: {ya: [], yb: []})
    for r in records:
        if r.doc_id in texts and r.submitted_at.year in (ya, yb):
            samples[_record_group(r, group_key)][r.submitted_at.year].append(texts[r.doc_id])
    rows = []
    for group in sorted(samples):
        table = pos_category_shift(
            pos_counts(samples[group][ya]), pos_counts(samples[group][yb]),
            k=int(cfg.pos_shift["k"]), threshold=float(cfg.pos_shift["threshold"]), words=llm_words,
        )
        for row in table:
            rows.append([group, row.category, " ".join(row.top_words), row.before, row.after, 100.0 * row.change, int(row.flagged)])
    path = cfg.out / "pos_shift.csv"
    cfg.out.mkdir(parents=True, exist_ok=True)
    _write_csv(path, POS_SHIFT_COLUMNS, rows)
    return path
