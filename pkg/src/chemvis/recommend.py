"""Candidate scoring and the side-by-side entity alignment.

The ranking blends two bounded similarity channels under user weights:
cosine over entity frequency vectors (the simple-matching end of the design
space) and TF-IDF cosine over term counts. Alignment pairs the entity
occurrences of two documents and quantizes match frequency into shade
levels for the comparison view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .enrichment import EntityKey, ResolvedEntity, Resolver
from .errors import InvalidWeights, UnknownDocument
from .ingestion import CorpusStore

MAX_SHADE = 3


@dataclass(frozen=True)
class SimilarityWeights:
    """User-tunable blend coefficients, normalized at construction so
    w_entity + w_text == 1. Negative inputs or a zero sum are rejected."""

    w_entity: float
    w_text: float

    def __post_init__(self):
        entity, text = float(self.w_entity), float(self.w_text)
        if entity < 0 or text < 0:
            raise InvalidWeights(f"weights must be non-negative, got ({entity}, {text})")
        total = entity + text
        if total <= 0:
            raise InvalidWeights("at least one weight must be positive")
        normalized = entity / total
        object.__setattr__(self, "w_entity", normalized)
        object.__setattr__(self, "w_text", 1.0 - normalized)


@dataclass(frozen=True)
class Recommendation:
    candidate_id: str
    score: float
    entity_component: float
    text_component: float


@dataclass(frozen=True)
class AlignmentRow:
    """One row of the comparison view. matched iff the entity occurs in both
    documents; shade is 0 for unmatched rows and otherwise grows with the
    smaller of the two frequencies, capped at MAX_SHADE."""

    entity: ResolvedEntity
    freq_input: int
    freq_candidate: int
    matched: bool
    shade: int


def entity_similarity(a: Mapping[str, int], b: Mapping[str, int]) -> float:
    """Cosine over entity frequency vectors; both-empty is 0 by convention.

    Computed through an exact rational so mathematically equal similarities
    land on identical doubles: ties then break deterministically by id
    downstream instead of by floating-point noise.
    """
    if not a or not b:
        return 0.0
    dot = sum(value * b[key] for key, value in a.items() if key in b)
    if dot == 0:
        return 0.0
    norm_sq_a = sum(value * value for value in a.values())
    norm_sq_b = sum(value * value for value in b.values())
    squared = Fraction(dot * dot, norm_sq_a * norm_sq_b)
    if squared >= 1:  # Cauchy-Schwarz: only scalar multiples reach 1
        return 1.0
    return math.sqrt(squared)


def _float_cosine(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    # Canonical (sorted-key) summation order keeps equal vectors on equal
    # doubles regardless of dict construction order.
    if not a or not b:
        return 0.0
    if a == b:
        return 1.0
    dot = sum(a[key] * b[key] for key in sorted(set(a) & set(b)))
    if dot == 0:
        return 0.0
    norm_sq_a = sum(a[key] ** 2 for key in sorted(a))
    norm_sq_b = sum(b[key] ** 2 for key in sorted(b))
    return min(1.0, dot / math.sqrt(norm_sq_a * norm_sq_b))


def idf(n_docs: int, document_frequency: int) -> float:
    return math.log((n_docs + 1) / (document_frequency + 1)) + 1.0


def text_similarity(
    a: Mapping[str, int],
    b: Mapping[str, int],
    corpus_stats: tuple[int, Mapping[str, int]],
) -> float:
    """TF-IDF-weighted cosine (tf = raw count, idf = ln((N+1)/(df+1)) + 1)."""
    n_docs, df = corpus_stats
    weighted_a = {t: c * idf(n_docs, df.get(t, 0)) for t, c in a.items()}
    weighted_b = {t: c * idf(n_docs, df.get(t, 0)) for t, c in b.items()}
    return _float_cosine(weighted_a, weighted_b)


def recommend(
    store: CorpusStore, input_id: str, k: int, weights: SimilarityWeights
) -> list[Recommendation]:
    """Top-k candidates by blended score, non-increasing; ties broken by
    ascending document id. The candidate pool is every other stored document.
    k == 0 yields an empty list."""
    if not store.has_document(input_id):
        raise UnknownDocument(input_id)
    if k < 0:
        raise ValueError("k must be non-negative")
    stats = store.corpus_stats()
    input_entities = store.entity_vector(input_id)
    input_terms = store.term_vector(input_id)
    results = []
    for candidate_id in store.document_ids():
        if candidate_id == input_id:
            continue
        entity_component = entity_similarity(input_entities, store.entity_vector(candidate_id))
        text_component = text_similarity(input_terms, store.term_vector(candidate_id), stats)
        score = weights.w_entity * entity_component + weights.w_text * text_component
        results.append(Recommendation(candidate_id, score, entity_component, text_component))
    results.sort(key=lambda r: (-r.score, r.candidate_id))
    return results[:k]


def shade_for(freq_input: int, freq_candidate: int) -> int:
    """Quantize match frequency into the 0..3 shade scale; kept in one place
    so the mapping is easy to revise."""
    if freq_input < 1 or freq_candidate < 1:
        return 0
    return max(1, min(MAX_SHADE, min(freq_input, freq_candidate)))


def align_entities(
    store: CorpusStore, input_id: str, candidate_id: str, resolver: Resolver
) -> list[AlignmentRow]:
    """One row per entity key in the union of both documents' occurrences.

    Matched rows first (by min frequency descending, then display name),
    then input-only rows, then candidate-only rows.
    """
    for doc_id in (input_id, candidate_id):
        if not store.has_document(doc_id):
            raise UnknownDocument(doc_id)
    vector_input = store.entity_vector(input_id)
    vector_candidate = store.entity_vector(candidate_id)

    rows: list[AlignmentRow] = []
    for key_string in set(vector_input) | set(vector_candidate):
        freq_input = vector_input.get(key_string, 0)
        freq_candidate = vector_candidate.get(key_string, 0)
        matched = freq_input >= 1 and freq_candidate >= 1
        entity = resolver.entity_for_key(EntityKey.from_string(key_string))
        rows.append(
            AlignmentRow(entity, freq_input, freq_candidate, matched, shade_for(freq_input, freq_candidate))
        )

    def name_key(row: AlignmentRow) -> tuple[str, str]:
        return (row.entity.display_name.casefold(), row.entity.key.as_string())

    matched_rows = sorted(
        (r for r in rows if r.matched),
        key=lambda r: (-min(r.freq_input, r.freq_candidate), *name_key(r)),
    )
    input_only = sorted((r for r in rows if not r.matched and r.freq_input >= 1), key=name_key)
    candidate_only = sorted((r for r in rows if not r.matched and r.freq_candidate >= 1), key=name_key)
    return matched_rows + input_only + candidate_only
