"""Per-document lexical metrics
================================

Walks through the three measures computed for every document: title
length in characters, Flesch-Kincaid grade level, and Yule's K, plus the
segmentation primitives they are built on.

Run:  python demos/01_document_metrics.py
"""

from lexigauge import (
    count_syllables,
    fkgl,
    frequency_spectrum,
    split_sentences,
    title_length,
    tokenize,
    yules_k,
)

# --- tokenization ---------------------------------------------------------
# Lowercased word tokens; intra-word hyphens and apostrophes bind, so
# "co-word" and "yule's" stay single tokens.  Punctuation never appears.
text = "Co-word networks reveal Yule's K at scale: 42 journals, top-tier and not."
stream = tokenize(text)
print("tokens:", list(stream.tokens))

# --- sentences and syllables ----------------------------------------------
paragraph = (
    "Readability is graded per sentence. Abbreviations, e.g. this one, do "
    "not split. Does a question? It does."
)
for sentence in split_sentences(paragraph):
    print("sentence:", sentence)

for word in ["cat", "table", "like", "management", "optimization"]:
    print(f"syllables({word}) = {count_syllables(word)}")

# --- the three metrics -----------------------------------------------------
title = "Mediated Sensemaking"
print(f"title_length({title!r}) = {title_length(title)} characters")

abstract = (
    "This study measures how hard abstracts are to read. Long sentences "
    "with polysyllabic vocabulary raise the required schooling grade "
    "substantially. Short ones lower it."
)
print(f"fkgl = {fkgl(abstract):.2f} (US grade level)")

tokens = tokenize(abstract)
spectrum = frequency_spectrum(tokens)
print(f"tokens N={spectrum.n_tokens}, types V={spectrum.n_types}, "
      f"spectrum {spectrum.spectrum}")
print(f"yules_k = {yules_k(tokens):.2f} (0 = every token unique)")

# Repetition drives K up: repeating the whole token list doubles every
# type's count and lowers diversity.
print(f"yules_k doubled text = {yules_k(list(tokens) * 2):.2f}")
