"""Per-document lexical measures: title length, readability, lexical diversity.

Title length is a normalized character count; readability is the
Flesch-Kincaid grade level 0.39*(words/sentences) + 11.8*(syllables/words)
- 15.59; diversity is Yule's K, 1e4 * [-1/N + sum_i f(i) * (i/N)^2] over
the token-frequency spectrum (0 = every token unique, higher = more
repetition).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import CsvParseError, DomainError
from .textproc import (
    DEFAULT_ABBREVIATIONS,
    DEFAULT_TOKEN_POLICY,
    TokenPolicy,
    TokenStream,
    count_syllables,
    frequency_spectrum,
    split_sentences,
    tokenize,
)

__all__ = [
    "LexicalRecord",
    "title_length",
    "fkgl",
    "yules_k",
    "lexical_records",
    "metric_vectors",
    "write_metrics_csv",
    "read_metrics_csv",
]

METRIC_NAMES = ("title_length", "fkgl", "yules_k")


@dataclass(frozen=True)
class LexicalRecord:
    """The three metric values for one document.

    ``fkgl`` and ``yules_k`` are None when the document has no abstract
    text (no words to measure).
    """

    doc_id: str
    title_length_chars: int
    fkgl: float | None
    yules_k: float | None


def title_length(title: str, include_spaces: bool = True) -> int:
    """Character count of a title.

    The title is trimmed and internal whitespace runs are collapsed to
    single spaces; every remaining Unicode character counts, including
    punctuation and (by default) the spaces themselves.
    ``include_spaces=False`` counts non-space characters only, an
    alternative convention some tools report.
    """
    normalized = " ".join(title.split())
    if not normalized:
        raise DomainError("title is empty after whitespace trimming")
    if include_spaces:
        return len(normalized)
    return len(normalized.replace(" ", ""))


def fkgl(
    text: str,
    policy: TokenPolicy = DEFAULT_TOKEN_POLICY,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> float:
    """Flesch-Kincaid grade level of running text.

    May be negative for very simple text; raises DomainError when the text
    contains no words (the words-per-sentence term would divide by zero).
    """
    tokens = tokenize(text, policy)
    n_words = len(tokens)
    if n_words == 0:
        raise DomainError("cannot compute a grade level for text with no words")
    sentences = split_sentences(text, abbreviations)
    n_sentences = max(len(sentences), 1)
    n_syllables = sum(count_syllables(token) for token in tokens)
    return 0.39 * (n_words / n_sentences) + 11.8 * (n_syllables / n_words) - 15.59


def yules_k(tokens) -> float:
    """Yule's K of a token sequence (or TokenStream).

    Computed from the frequency spectrum as 1e4 * (S2 - N) / N^2 with
    S2 = sum_i i^2 * f(i), which is the exact integer form of
    1e4 * [-1/N + sum_i f(i) * (i/N)^2]; an all-distinct stream yields
    exactly 0.0.
    """
    if isinstance(tokens, TokenStream):
        tokens = tokens.tokens
    spectrum = frequency_spectrum(tokens)
    n = spectrum.n_tokens
    if n == 0:
        raise DomainError("Yule's K requires at least one token")
    s2 = sum(i * i * count for i, count in spectrum.spectrum.items())
    return 1e4 * (s2 - n) / (n * n)


def lexical_records(
    corpus,
    policy: TokenPolicy = DEFAULT_TOKEN_POLICY,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[LexicalRecord]:
    """Compute the metric row for every record of a corpus (ingest.Corpus).

    Abstract-less documents receive None for fkgl / yules_k; they still get
    a title length.  Errors are annotated with the offending document id.
    """
    rows = []
    for record in corpus.records:
        try:
            length = title_length(record.title)
            abstract_tokens = tokenize(record.abstract, policy)
            if len(abstract_tokens) == 0:
                grade, diversity = None, None
            else:
                grade = fkgl(record.abstract, policy, abbreviations)
                diversity = yules_k(abstract_tokens)
        except DomainError as exc:
            raise DomainError(f"document {record.id!r}: {exc}") from exc
        rows.append(
            LexicalRecord(
                doc_id=record.id,
                title_length_chars=length,
                fkgl=grade,
                yules_k=diversity,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Metric table CSV (doc_id,title_length_chars,fkgl,yules_k)
# ---------------------------------------------------------------------------

_CSV_HEADER = ["doc_id", "title_length_chars", "fkgl", "yules_k"]


def write_metrics_csv(records: list[LexicalRecord], target) -> None:
    """Write the per-document metric table; floats keep full precision
    (shortest round-trip repr), empty cells for missing abstracts."""
    close = False
    if isinstance(target, (str, Path)):
        target = open(target, "w", encoding="utf-8", newline="")
        close = True
    try:
        writer = csv.writer(target, lineterminator="\n")
        writer.writerow(_CSV_HEADER)
        for rec in records:
            writer.writerow(
                [
                    rec.doc_id,
                    rec.title_length_chars,
                    "" if rec.fkgl is None else repr(rec.fkgl),
                    "" if rec.yules_k is None else repr(rec.yules_k),
                ]
            )
    finally:
        if close:
            target.close()


def read_metrics_csv(source) -> list[LexicalRecord]:
    """Read a metric table written by :func:`write_metrics_csv`."""
    close = False
    if isinstance(source, (str, Path)):
        source = open(source, "r", encoding="utf-8", newline="")
        close = True
    try:
        reader = csv.reader(source)
        header = next(reader, None)
        if header != _CSV_HEADER:
            raise CsvParseError(f"expected header {_CSV_HEADER}, got {header}", row=1)
        rows = []
        for row in reader:
            if len(row) != len(_CSV_HEADER):
                raise CsvParseError(
                    f"expected {len(_CSV_HEADER)} fields, got {len(row)}",
                    row=reader.line_num,
                )
            doc_id, length, grade, diversity = row
            rows.append(
                LexicalRecord(
                    doc_id=doc_id,
                    title_length_chars=int(length),
                    fkgl=None if grade == "" else float(grade),
                    yules_k=None if diversity == "" else float(diversity),
                )
            )
        return rows
    finally:
        if close:
            source.close()


def metric_vectors(records: list[LexicalRecord]) -> dict[str, list[float]]:
    """Extract per-metric value vectors, skipping missing-abstract entries
    for fkgl / yules_k (title lengths are always present)."""
    return {
        "title_length": [float(r.title_length_chars) for r in records],
        "fkgl": [r.fkgl for r in records if r.fkgl is not None],
        "yules_k": [r.yules_k for r in records if r.yules_k is not None],
    }
