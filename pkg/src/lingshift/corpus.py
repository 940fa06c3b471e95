"""Corpus ingest: JSONL parsing, filtering, period bucketing and grouping."""
from __future__ import annotations

import csv
import datetime as dt
import json
import random
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence, TextIO

from .errors import AmbiguityError, InvalidResourceError, OutOfWindowError
from .textkit import MATH_PLACEHOLDER, Lexicons, strip_markup, tokenize


class Discipline(str, Enum):
    COMPUTER_SCIENCE = "ComputerScience"
    PHYSICS = "Physics"
    MATHEMATICS = "Mathematics"
    OTHER = "Other"


class LanguageGroup(str, Enum):
    NES = "NES"
    NNES = "NNES"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class DocumentRecord:
    doc_id: str
    abstract_text: str
    title: str | None = None
    categories: tuple[str, ...] = ()
    submitted_at: dt.date | None = None
    doi: str | None = None
    authors: tuple[str, ...] | None = None
    discipline: Discipline = Discipline.OTHER
    first_author_country: str | None = None
    language_group: LanguageGroup = LanguageGroup.UNKNOWN
    line_number: int = 0

    @property
    def primary_category(self) -> str | None:
        return self.categories[0] if self.categories else None


@dataclass(frozen=True)
class ParseError:
    line_number: int
    reason: str
    detail: str = ""


def _parse_date(text: str) -> dt.date:
    return dt.date.fromisoformat(text)


def parse_records(stream: TextIO | Iterable[str]) -> tuple[list[DocumentRecord], list[ParseError]]:
    """One JSON object per line. Bad lines become ParseErrors; nothing here is fatal."""
    records: list[DocumentRecord] = []
    errors: list[ParseError] = []
    for lineno, line in enumerate(stream, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(ParseError(lineno, "invalid_json", str(exc)))
            continue
        if not isinstance(obj, dict):
            errors.append(ParseError(lineno, "invalid_json", "line is not an object"))
            continue
        missing = [k for k in ("id", "abstract") if k not in obj or obj[k] is None]
        if missing:
            errors.append(ParseError(lineno, "missing_field", ",".join(missing)))
            continue
        try:
            record = _build(obj, lineno)
        except (TypeError, ValueError) as exc:
            reason = "invalid_date" if isinstance(exc, ValueError) else "wrong_type"
            errors.append(ParseError(lineno, reason, str(exc)))
            continue
        records.append(record)
    return records, errors


def _opt_str(obj: dict, key: str) -> str | None:
    v = obj.get(key)
    if v is None:
        return None
    if not isinstance(v, str):
        raise TypeError(f"{key} must be a string")
    return v


def _build(obj: dict, lineno: int) -> DocumentRecord:
    if not isinstance(obj["id"], str) or not isinstance(obj["abstract"], str):
        raise TypeError("id and abstract must be strings")
    cats = obj.get("categories") or []
    if isinstance(cats, str):
        cats = cats.split()
    if not isinstance(cats, list) or not all(isinstance(c, str) for c in cats):
        raise TypeError("categories must be a list of strings")
    authors = obj.get("authors")
    if authors is not None:
        if isinstance(authors, str):
            authors = [a.strip() for a in authors.split(",") if a.strip()]
        if not isinstance(authors, list):
            raise TypeError("authors must be a list")
        authors = tuple(str(a) for a in authors)
    submitted = _opt_str(obj, "submitted")
    return DocumentRecord(
        doc_id=obj["id"],
        abstract_text=obj["abstract"],
        title=_opt_str(obj, "title"),
        categories=tuple(cats),
        submitted_at=_parse_date(submitted) if submitted else None,
        doi=_opt_str(obj, "doi"),
        authors=authors,
        line_number=lineno,
    )


# category prefix -> discipline; first match wins, longest prefixes first
DEFAULT_PREFIXES: dict[str, Discipline] = {
    "cs.": Discipline.COMPUTER_SCIENCE,
    "math-ph": Discipline.PHYSICS,
    "math.": Discipline.MATHEMATICS,
    "physics.": Discipline.PHYSICS,
    "astro-ph": Discipline.PHYSICS,
    "cond-mat": Discipline.PHYSICS,
    "gr-qc": Discipline.PHYSICS,
    "hep-": Discipline.PHYSICS,
    "nlin": Discipline.PHYSICS,
    "nucl-": Discipline.PHYSICS,
    "quant-ph": Discipline.PHYSICS,
}


def discipline_of(category: str | None, prefixes: Mapping[str, Discipline] = DEFAULT_PREFIXES) -> Discipline:
    if not category:
        return Discipline.OTHER
    cat = category.strip().lower()
    for prefix in sorted(prefixes, key=len, reverse=True):
        if cat.startswith(prefix.lower()):
            return Discipline(prefixes[prefix])
    return Discipline.OTHER


def normalize_country(name: str) -> str:
    return re.sub(r"\s+", " ", name.strip().upper())


def load_country_groups(path: str | Path) -> dict[str, LanguageGroup]:
    table: dict[str, LanguageGroup] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        if next(reader, None) != ["country", "group"]:
            raise InvalidResourceError("header must be 'country,group'", path=path, line=1)
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 2 or row[1].strip().upper() not in ("NES", "NNES"):
                raise InvalidResourceError("expected 'country,NES|NNES'", path=path, line=lineno)
            table[normalize_country(row[0])] = LanguageGroup(row[1].strip().upper())
    return table


def classify_document(
    record: DocumentRecord,
    country_groups: Mapping[str, LanguageGroup],
    prefixes: Mapping[str, Discipline] = DEFAULT_PREFIXES,
) -> DocumentRecord:
    group = LanguageGroup.UNKNOWN
    if record.first_author_country:
        group = country_groups.get(normalize_country(record.first_author_country), LanguageGroup.UNKNOWN)
    return replace(record, discipline=discipline_of(record.primary_category, prefixes), language_group=group)


@dataclass(frozen=True)
class PeriodIndex:
    ordinal: int
    year: int
    quarter: int


def assign_period(date: dt.date, window_start_year: int, n_periods: int = 40) -> PeriodIndex:
    quarter = (date.month - 1) // 3 + 1
    ordinal = (date.year - window_start_year) * 4 + quarter - 1
    if not 0 <= ordinal < n_periods:
        raise OutOfWindowError(f"{date.isoformat()} is outside the {n_periods}-period window from {window_start_year}")
    return PeriodIndex(ordinal, date.year, quarter)


@dataclass
class FilterConfig:
    min_abstract_tokens: int = 50
    required_fields: tuple[str, ...] = ("title", "categories", "submitted_at", "authors")
    excluded_months: tuple[tuple[int, int], ...] = ((2022, 12),)
    window: tuple[dt.date, dt.date] = (dt.date(2014, 1, 1), dt.date(2023, 12, 31))
    allowed_disciplines: frozenset[Discipline] = frozenset(
        {Discipline.COMPUTER_SCIENCE, Discipline.PHYSICS, Discipline.MATHEMATICS}
    )
    prefixes: dict[str, Discipline] = field(default_factory=lambda: dict(DEFAULT_PREFIXES))

    @property
    def window_start_year(self) -> int:
        return self.window[0].year

    @property
    def n_periods(self) -> int:
        return (self.window[1].year - self.window[0].year + 1) * 4


def abstract_token_count(text: str, lexicons: Lexicons) -> int:
    """Word tokens of the markup-stripped abstract, math placeholders excluded."""
    return sum(1 for t in tokenize(strip_markup(text), lexicons) if t != MATH_PLACEHOLDER and any(c.isalnum() for c in t))


def _missing(record: DocumentRecord, name: str) -> bool:
    v = getattr(record, name)
    if name == "authors":
        # the field is optional in the input schema; only a present-but-empty list fails
        return v is not None and len(v) == 0
    return v is None or v == "" or v == ()


def rejection_reason(record: DocumentRecord, config: FilterConfig, lexicons: Lexicons) -> str | None:
    if not record.abstract_text.strip() or any(_missing(record, f) for f in config.required_fields):
        return "missing_field"
    d = record.submitted_at
    if d is not None:
        if not config.window[0] <= d <= config.window[1]:
            return "out_of_window"
        if (d.year, d.month) in config.excluded_months:
            return "excluded_month"
    if discipline_of(record.primary_category, config.prefixes) not in config.allowed_disciplines:
        return "excluded_discipline"
    if abstract_token_count(record.abstract_text, lexicons) < config.min_abstract_tokens:
        return "too_short"
    return None


def filter_records(
    records: Iterable[DocumentRecord], config: FilterConfig, lexicons: Lexicons
) -> tuple[list[DocumentRecord], Counter]:
    kept: list[DocumentRecord] = []
    tally: Counter = Counter()
    for r in records:
        reason = rejection_reason(r, config, lexicons)
        if reason is None:
            kept.append(r)
        else:
            tally[reason] += 1
    return kept, tally


def sample_per_period(
    records: Sequence[DocumentRecord], n: int, seed: int, window_start_year: int = 2014, n_periods: int = 40
) -> list[DocumentRecord]:
    """Up to ``n`` records per period, uniformly without replacement, ordered by doc_id."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    by_period: dict[int, list[DocumentRecord]] = defaultdict(list)
    for r in records:
        by_period[assign_period(r.submitted_at, window_start_year, n_periods).ordinal].append(r)
    out: list[DocumentRecord] = []
    for p in sorted(by_period):
        group = sorted(by_period[p], key=lambda r: r.doc_id)
        out.extend(group if len(group) <= n else rng.sample(group, n))
    return sorted(out, key=lambda r: r.doc_id)


def read_country_sidecar(path: str | Path) -> dict[str, str]:
    mapping: dict[str, str] = {}
    dups: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return mapping
        if [h.strip() for h in header] != ["doc_id", "country"]:
            raise InvalidResourceError("header must be 'doc_id,country'", path=path, line=1)
        for lineno, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) != 2:
                raise InvalidResourceError("expected 'doc_id,country'", path=path, line=lineno)
            doc_id = row[0].strip()
            if doc_id in mapping:
                dups.add(doc_id)
            mapping[doc_id] = row[1].strip()
    if dups:
        raise AmbiguityError(f"duplicate doc_id in country sidecar: {', '.join(sorted(dups))}", ids=sorted(dups))
    return mapping


def join_author_countries(
    records: Sequence[DocumentRecord], sidecar: str | Path | Mapping[str, str]
) -> tuple[list[DocumentRecord], int]:
    mapping = sidecar if isinstance(sidecar, Mapping) else read_country_sidecar(sidecar)
    out = []
    matched = 0
    for r in records:
        country = mapping.get(r.doc_id)
        if country:
            matched += 1
            r = replace(r, first_author_country=country)
        out.append(r)
    return out, matched
