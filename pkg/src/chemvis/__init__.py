"""Chemistry-aware research paper recommender.

Parses and canonicalizes molecular formulas, extracts and disambiguates
chemical entities from paper full text, ranks candidate papers by a
user-weighted blend of entity and text similarity, and serves the
side-by-side entity comparison view over HTTP and the CLI.
"""

from .enrichment import EntityKey, Lexicon, ResolvedEntity, Resolver
from .extraction import EntityOccurrence, Mention, aggregate_occurrences, extract_mentions
from .formula import Composition, canonical_hill, molecular_weight, parse_formula
from .ingestion import CorpusStore, Document, ingest_document, parse_structured, reindex
from .recommend import (
    AlignmentRow,
    Recommendation,
    SimilarityWeights,
    align_entities,
    entity_similarity,
    recommend,
    text_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentRow",
    "Composition",
    "CorpusStore",
    "Document",
    "EntityKey",
    "EntityOccurrence",
    "Lexicon",
    "Mention",
    "Recommendation",
    "ResolvedEntity",
    "Resolver",
    "SimilarityWeights",
    "aggregate_occurrences",
    "align_entities",
    "canonical_hill",
    "entity_similarity",
    "extract_mentions",
    "ingest_document",
    "molecular_weight",
    "parse_formula",
    "parse_structured",
    "recommend",
    "reindex",
    "text_similarity",
    "__version__",
]
