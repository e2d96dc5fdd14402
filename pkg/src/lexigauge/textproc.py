"""Deterministic text segmentation primitives.

Tokens, sentences, syllables, and the token-frequency spectrum that the
lexical metrics are defined over.  All functions are pure; behaviour is
controlled only by the explicit policy objects so that metric values are
reproducible across runs and machines.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

__all__ = [
    "TokenPolicy",
    "TokenStream",
    "FrequencySpectrum",
    "DEFAULT_ABBREVIATIONS",
    "tokenize",
    "split_sentences",
    "count_syllables",
    "frequency_spectrum",
    "load_token_policy",
    "load_abbreviations",
]

# Version tag for the segmentation rule set; recorded in report provenance
# because metric values are only comparable under identical rules.
SEGMENTATION_RULES_VERSION = "1"


@dataclass(frozen=True)
class TokenPolicy:
    """Controls word segmentation.

    keep_numbers: keep tokens with no letters (e.g. "2020").
    bind_hyphens: "top-tier" stays one token instead of two.
    bind_apostrophes: "yule's" stays one token; trailing possessive
        apostrophes never bind ("articles'" -> "articles").
    """

    keep_numbers: bool = True
    bind_hyphens: bool = True
    bind_apostrophes: bool = True


DEFAULT_TOKEN_POLICY = TokenPolicy()

# Word characters: Unicode letters and digits, underscore excluded.
_WORD = r"[^\W_]"
_PATTERN_CACHE: dict[tuple[bool, bool], re.Pattern] = {}


def _token_pattern(policy: TokenPolicy) -> re.Pattern:
    key = (policy.bind_hyphens, policy.bind_apostrophes)
    pattern = _PATTERN_CACHE.get(key)
    if pattern is None:
        joiners = ""
        if policy.bind_hyphens:
            joiners += r"\-"
        if policy.bind_apostrophes:
            joiners += "'’"
        if joiners:
            pattern = re.compile(rf"{_WORD}+(?:[{joiners}]{_WORD}+)*")
        else:
            pattern = re.compile(rf"{_WORD}+")
        _PATTERN_CACHE[key] = pattern
    return pattern


@dataclass(frozen=True)
class TokenStream:
    """Lowercased word tokens plus the character count of the source text."""

    tokens: tuple[str, ...]
    source_char_count: int

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def tokenize(text: str, policy: TokenPolicy = DEFAULT_TOKEN_POLICY) -> TokenStream:
    """Segment ``text`` into lowercase word tokens.

    Punctuation is never a token.  Intra-word hyphens/apostrophes bind per
    ``policy``; diacritic letters count as word characters.  Empty text (or
    text with no word characters) yields an empty stream.
    """
    tokens = [m.group(0).lower() for m in _token_pattern(policy).finditer(text)]
    if not policy.keep_numbers:
        tokens = [t for t in tokens if any(c.isalpha() for c in t)]
    return TokenStream(tokens=tuple(tokens), source_char_count=len(text))


# ---------------------------------------------------------------------------
# Sentence splitting
# ---------------------------------------------------------------------------

# Abbreviations whose trailing period must not end a sentence.  Entries are
# matched case-insensitively against the text ending at the period.
DEFAULT_ABBREVIATIONS = frozenset(
    {"e.g.", "i.e.", "et al.", "vs.", "cf.", "etc."}
)

_TERMINATOR = re.compile(r"[.!?]+")


def split_sentences(
    text: str, abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS
) -> list[str]:
    """Split ``text`` into sentences.

    A run of ``.``, ``!`` or ``?`` ends a sentence when followed by
    whitespace and an uppercase letter or digit, or when it ends the text.
    Periods belonging to ``abbreviations`` never split.  Text containing at
    least one word character but no terminator is a single sentence.
    """
    word_at = _token_pattern(DEFAULT_TOKEN_POLICY)
    boundaries = []
    for match in _TERMINATOR.finditer(text):
        end = match.end()
        if end < len(text):
            if not text[end].isspace():
                continue  # "4.8" or "e.g" mid-abbreviation: no split
            following = text[end:].lstrip()
            if following and not (following[0].isupper() or following[0].isdigit()):
                continue  # continuation starts lowercase: no split
        if _ends_with_abbreviation(text, end, abbreviations):
            continue
        boundaries.append(end)

    sentences = []
    start = 0
    for end in [*boundaries, len(text)]:
        chunk = text[start:end].strip()
        if chunk and word_at.search(chunk):
            sentences.append(chunk)
        start = end
    return sentences


def _ends_with_abbreviation(text: str, end: int, abbreviations) -> bool:
    head = text[:end].lower()
    return any(
        head.endswith(abbr) and (len(head) == len(abbr) or not head[-len(abbr) - 1].isalnum())
        for abbr in abbreviations
    )


# ---------------------------------------------------------------------------
# Syllable counting
# ---------------------------------------------------------------------------

_VOWELS = frozenset("aeiouy")
_VOWEL_RUN = re.compile(r"[aeiouy]+")
_ALPHA_SPLIT = re.compile(r"[^a-z]+")

# /iz/ after sibilants: "boxes", "pages", "houses" keep their final syllable.
_PRONOUNCED_ES = frozenset("scgxzj")
# Suffixes that leave a preceding stem-final silent "e" silent:
# "manage+ment" -> 3, "love+ly" -> 2.  Longest match wins.
_NEUTRAL_SUFFIXES = ("ments", "ment", "fully", "ness", "less", "ful", "ly")


def count_syllables(word: str) -> int:
    """Heuristic syllable count for one token; always >= 1.

    Counts maximal vowel runs (a, e, i, o, u, y) over the lowercased word,
    then discounts silent "e": word-final ("like"), before inflections
    ("makes", "walked"), and before neutral suffixes ("management"), with
    the usual consonant-le ("table"), pronounced-es ("boxes") and
    pronounced-ed ("wanted") exceptions.  Tokens without a-z letters
    (numerals, symbol runs) and vowel-less acronyms count as 1.  Hyphenated
    or apostrophised tokens are counted per alphabetic part and summed.
    """
    total = 0
    for part in _ALPHA_SPLIT.split(word.lower()):
        if part:
            total += _part_syllables(part)
    return max(total, 1)


def _part_syllables(part: str) -> int:
    runs = len(_VOWEL_RUN.findall(part))
    if runs <= 1:
        return runs
    if _has_silent_e(part):
        runs -= 1
    return max(runs, 1)


def _is_cons(ch: str) -> bool:
    return ch not in _VOWELS


def _has_silent_e(p: str) -> bool:
    # Word-final "e": silent after a consonant, except consonant+"le"
    # ("table" keeps it, "whale" and "like" drop it).
    if p.endswith("e"):
        if len(p) < 2 or not _is_cons(p[-2]):
            return False
        if p.endswith("le") and len(p) >= 3 and _is_cons(p[-3]):
            return False
        return True
    # "...ed": silent unless the /id/ cases "ted"/"ded" ("wanted", "needed").
    if p.endswith("ed"):
        if len(p) < 3 or not _is_cons(p[-3]):
            return False
        return p[-3] not in "td"
    # "...es": silent unless pronounced /iz/ after sibilants ("boxes",
    # "pages") or part of consonant+"les" ("tables").
    if p.endswith("es"):
        if len(p) < 3 or not _is_cons(p[-3]):
            return False
        if p[-3] in _PRONOUNCED_ES:
            return False
        if p[-3] == "h" and len(p) >= 4 and p[-4] in "cs":  # "watches", "washes"
            return False
        if p[-3] == "l" and len(p) >= 4 and _is_cons(p[-4]):  # "tables"
            return False
        return True
    # Stem-final silent "e" before a neutral suffix ("manage+ment").
    for suffix in _NEUTRAL_SUFFIXES:
        if p.endswith("e" + suffix):
            i = len(p) - len(suffix) - 2
            if i >= 0 and _is_cons(p[i]):
                return True
            return False
    return False


# ---------------------------------------------------------------------------
# Frequency spectrum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrequencySpectrum:
    """Token-frequency spectrum: ``spectrum[i]`` = number of types that
    occur exactly ``i`` times among ``n_tokens`` tokens."""

    n_tokens: int
    n_types: int
    spectrum: dict[int, int]


def frequency_spectrum(tokens) -> FrequencySpectrum:
    """Exact frequency spectrum of a token sequence (or TokenStream)."""
    if isinstance(tokens, TokenStream):
        tokens = tokens.tokens
    freq = Counter(tokens)
    spectrum = dict(sorted(Counter(freq.values()).items()))
    return FrequencySpectrum(
        n_tokens=sum(freq.values()), n_types=len(freq), spectrum=spectrum
    )


# ---------------------------------------------------------------------------
# Plain-text policy loaders
# ---------------------------------------------------------------------------


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Load a sentence-abbreviation list: one entry per line, ``#`` comments
    and blank lines ignored; entries lowercased."""
    entries = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(line.lower())
    return frozenset(entries)


_BOOL_VALUES = {"true": True, "yes": True, "1": True,
                "false": False, "no": False, "0": False}


def load_token_policy(path: str | Path) -> TokenPolicy:
    """Load a TokenPolicy from a plain-text file: one ``flag = value`` entry
    per line (flags: keep_numbers, bind_hyphens, bind_apostrophes)."""
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'flag = value', got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip().lower()
        if key not in TokenPolicy.__dataclass_fields__:
            raise ConfigError(f"{path}:{lineno}: unknown token policy flag {key!r}")
        if raw not in _BOOL_VALUES:
            raise ConfigError(f"{path}:{lineno}: expected a boolean, got {raw!r}")
        values[key] = _BOOL_VALUES[raw]
    return TokenPolicy(**values)
