"""Bibliographic CSV ingestion, reproducible sampling, and journal-level
bibliometric descriptives.

Input files are UTF-8 CSV exports (RFC 4180 quoting, optional BOM) with one
row per document.  Column names are mapped through a configurable column
map; only the title column is mandatory.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, CsvParseError, DomainError

__all__ = [
    "BibRecord",
    "Corpus",
    "BiblioSummary",
    "DEFAULT_COLUMN_MAP",
    "parse_bibliographic_csv",
    "write_corpus_csv",
    "sample_corpus",
    "bibliometric_descriptives",
]

# Identity of the sampling generator, recorded in report provenance so a
# sample can be reproduced exactly.
SAMPLING_RNG = "numpy.random.Generator(PCG64)"

YEAR_RANGE = (1900, 2100)

# Logical field -> default CSV header (Scopus-style export names).
DEFAULT_COLUMN_MAP = {
    "title": "Title",
    "abstract": "Abstract",
    "year": "Year",
    "venue": "Source title",
    "citations": "Cited by",
    "author_count": "Author count",
}


@dataclass(frozen=True)
class BibRecord:
    """One bibliographic document."""

    id: str
    title: str
    abstract: str = ""
    year: int | None = None
    venue: str = ""
    citations: int = 0
    author_count: int = 0

    def __post_init__(self):
        if not self.title.strip():
            raise DomainError(f"record {self.id!r}: title is empty")
        if self.year is not None and not YEAR_RANGE[0] <= self.year <= YEAR_RANGE[1]:
            raise DomainError(f"record {self.id!r}: year {self.year} out of range")
        if self.citations < 0:
            raise DomainError(f"record {self.id!r}: negative citation count")
        if self.author_count < 0:
            raise DomainError(f"record {self.id!r}: negative author count")


@dataclass(frozen=True)
class Corpus:
    """A labeled, ordered collection of records with unique ids.

    ``skipped_rows`` counts input rows dropped for having an empty title;
    it is parse metadata, not part of the corpus content.
    """

    label: str
    records: tuple[BibRecord, ...]
    skipped_rows: int = 0

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.id in seen:
                raise DomainError(
                    f"corpus {self.label!r}: duplicate record id {record.id!r}"
                )
            seen.add(record.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def titles(self) -> list[str]:
        return [record.title for record in self.records]


@dataclass(frozen=True)
class BiblioSummary:
    """Journal-level descriptives: documents, authors, ratios, growth."""

    document_count: int
    author_total: int
    authors_per_document: float
    citations_per_document: float
    annual_growth_pct: float
    timespan: tuple[int, int] | None


def _parse_int(raw: str, default: int = 0) -> int:
    raw = raw.strip()
    if not raw:
        return default
    try:
        return int(float(raw))
    except ValueError:
        return default


def _parse_year(raw: str) -> int | None:
    raw = raw.strip()
    if not raw:
        return None
    try:
        year = int(float(raw))
    except ValueError:
        return None
    if YEAR_RANGE[0] <= year <= YEAR_RANGE[1]:
        return year
    return None


def parse_bibliographic_csv(
    source,
    column_map: dict[str, str] | None = None,
    label: str = "",
) -> Corpus:
    """Parse a bibliographic CSV export into a Corpus.

    ``source`` may be a path, a text stream, or a binary stream (decoded as
    UTF-8, BOM tolerated).  ``column_map`` maps logical names (title,
    abstract, year, venue, citations, author_count, id) to CSV headers; it
    must name at least the title column.  Rows whose title is empty are
    skipped and counted.  Missing abstract/citations default to empty / 0;
    unparseable or out-of-range years are treated as absent.

    Raises CsvParseError (with a row number) on malformed CSV and
    ConfigError when an explicitly mapped column is missing from the header.
    """
    mapping = dict(DEFAULT_COLUMN_MAP if column_map is None else column_map)
    if "title" not in mapping:
        raise ConfigError("column_map must name the title column")
    explicit = column_map is not None

    close = False
    if isinstance(source, (str, Path)):
        stream = open(source, "r", encoding="utf-8-sig", newline="")
        close = True
    elif isinstance(source, (bytes, bytearray)):
        stream = io.StringIO(source.decode("utf-8-sig"))
    elif hasattr(source, "read"):
        probe = source.read(0)
        if isinstance(probe, bytes):
            stream = io.TextIOWrapper(source, encoding="utf-8-sig", newline="")
        else:
            stream = source
    else:
        raise ConfigError(f"unsupported CSV source: {type(source).__name__}")

    try:
        reader = csv.reader(stream, strict=True)
        try:
            header = next(reader, None)
        except csv.Error as exc:
            raise CsvParseError(str(exc), row=1) from exc
        if header is None:
            raise CsvParseError("input has no header row", row=1)
        index = {name: pos for pos, name in enumerate(header)}

        columns: dict[str, int] = {}
        for logical, csv_name in mapping.items():
            if csv_name in index:
                columns[logical] = index[csv_name]
            elif logical == "title" or explicit:
                raise ConfigError(
                    f"column {csv_name!r} (for {logical!r}) not found in header {header}"
                )

        def cell(row: list[str], logical: str) -> str:
            pos = columns.get(logical)
            if pos is None or pos >= len(row):
                return ""
            return row[pos]

        records = []
        skipped = 0
        data_row = 0
        while True:
            try:
                row = next(reader, None)
            except csv.Error as exc:
                raise CsvParseError(str(exc), row=reader.line_num) from exc
            if row is None:
                break
            if not row:
                continue
            data_row += 1
            title = cell(row, "title").strip()
            if not title:
                skipped += 1
                continue
            rec_id = cell(row, "id").strip() or f"row{data_row}"
            records.append(
                BibRecord(
                    id=rec_id,
                    title=title,
                    abstract=cell(row, "abstract"),
                    year=_parse_year(cell(row, "year")),
                    venue=cell(row, "venue").strip(),
                    citations=_parse_int(cell(row, "citations")),
                    author_count=_parse_int(cell(row, "author_count")),
                )
            )
        return Corpus(label=label, records=tuple(records), skipped_rows=skipped)
    finally:
        if close:
            stream.close()


_WRITE_COLUMNS = [
    ("id", "Id"),
    ("title", "Title"),
    ("abstract", "Abstract"),
    ("year", "Year"),
    ("venue", "Source title"),
    ("citations", "Cited by"),
    ("author_count", "Author count"),
]

# Column map matching write_corpus_csv output; round-trips every field.
ROUNDTRIP_COLUMN_MAP = {logical: header for logical, header in _WRITE_COLUMNS}


def write_corpus_csv(corpus: Corpus, target) -> None:
    """Serialize a corpus back to CSV (RFC 4180); parsing the output with
    ROUNDTRIP_COLUMN_MAP reproduces the records field-for-field."""
    close = False
    if isinstance(target, (str, Path)):
        target = open(target, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow([header for _, header in _WRITE_COLUMNS])
        for rec in corpus.records:
            writer.writerow(
                [
                    rec.id,
                    rec.title,
                    rec.abstract,
                    "" if rec.year is None else rec.year,
                    rec.venue,
                    rec.citations,
                    rec.author_count,
                ]
            )
    finally:
        if close:
            target.close()


def sample_corpus(corpus: Corpus, n: int, seed: int) -> Corpus:
    """Uniform random sample of exactly ``n`` records, without replacement.

    Deterministic in (corpus, n, seed); the sample preserves the input
    ordering of the chosen records and the corpus label.
    """
    if n <= 0:
        raise DomainError(f"sample size must be positive, got {n}")
    if n > len(corpus.records):
        raise DomainError(
            f"sample size {n} exceeds corpus {corpus.label!r} size {len(corpus.records)}"
        )
    rng = np.random.Generator(np.random.PCG64(seed))
    chosen = np.sort(rng.choice(len(corpus.records), size=n, replace=False))
    return Corpus(
        label=corpus.label,
        records=tuple(corpus.records[i] for i in chosen),
    )


def bibliometric_descriptives(
    corpus: Corpus, distinct_author_total: int | None = None
) -> BiblioSummary:
    """Journal-level summary in the shape of a bibliometric overview table.

    The author total defaults to the sum of per-record author counts; pass
    ``distinct_author_total`` when a deduplicated corpus-level figure is
    known (per-record sums double-count recurring authors).  Annual growth
    is the compound annual growth rate of yearly document counts between
    the first and last observed year, in percent; records without a year
    are excluded from the growth computation only.
    """
    if len(corpus.records) == 0:
        raise DomainError("cannot summarize an empty corpus")
    doc_count = len(corpus.records)
    author_total = (
        distinct_author_total
        if distinct_author_total is not None
        else sum(r.author_count for r in corpus.records)
    )
    citations_total = sum(r.citations for r in corpus.records)

    years = [r.year for r in corpus.records if r.year is not None]
    timespan = (min(years), max(years)) if years else None
    growth = 0.0
    if timespan and timespan[1] > timespan[0]:
        counts: dict[int, int] = {}
        for year in years:
            counts[year] = counts.get(year, 0) + 1
        first, last = timespan
        count_first = counts[first]
        count_last = counts[last]
        growth = ((count_last / count_first) ** (1.0 / (last - first)) - 1.0) * 100.0

    return BiblioSummary(
        document_count=doc_count,
        author_total=author_total,
        authors_per_document=author_total / doc_count,
        citations_per_document=citations_total / doc_count,
        annual_growth_pct=growth,
        timespan=timespan,
    )
