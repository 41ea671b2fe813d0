"""Canonical JSON payloads shared by the HTTP service and the CLI.

Both surfaces serialize through to_json so their bodies are byte-identical
for the same underlying data.
"""

from __future__ import annotations

import json

from .enrichment import ResolvedEntity, Resolver
from .ingestion import CorpusStore
from .recommend import AlignmentRow, Recommendation, SimilarityWeights


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def entity_fields(entity: ResolvedEntity, frequency: int | None = None) -> dict:
    data = {
        "key": entity.key.as_string(),
        "cid": entity.cid,
        "name": entity.display_name,
        "iupac_name": entity.iupac_name,
        "formula": entity.formula,
        "weight": entity.weight,
        "structure_image": entity.structure_image,
        "synonyms": list(entity.synonyms),
        "status": entity.status,
    }
    if frequency is not None:
        data["frequency"] = frequency
    return data


def ingest_payload(doc_id: str) -> dict:
    return {"id": doc_id}


def document_entities_payload(store: CorpusStore, doc_id: str, resolver: Resolver) -> dict:
    document = store.get_document(doc_id)
    rows = []
    for occurrence in document.entities:
        entity = resolver.entity_for_key(occurrence.entity_key)
        rows.append((occurrence.frequency, entity))
    rows.sort(key=lambda pair: (-pair[0], pair[1].display_name.casefold(), pair[1].key.as_string()))
    return {
        "id": doc_id,
        "title": document.title,
        "entities": [entity_fields(entity, frequency) for frequency, entity in rows],
    }


def recommendations_payload(
    doc_id: str, k: int, weights: SimilarityWeights, ranked: list[Recommendation]
) -> dict:
    return {
        "input": doc_id,
        "k": k,
        "w_entity": weights.w_entity,
        "w_text": weights.w_text,
        "recommendations": [
            {
                "id": r.candidate_id,
                "score": r.score,
                "entity_component": r.entity_component,
                "text_component": r.text_component,
            }
            for r in ranked
        ],
    }


def compare_payload(input_id: str, candidate_id: str, rows: list[AlignmentRow]) -> dict:
    return {
        "input": input_id,
        "candidate": candidate_id,
        "rows": [
            {
                "entity": entity_fields(row.entity),
                "freq_input": row.freq_input,
                "freq_candidate": row.freq_candidate,
                "matched": row.matched,
                "shade": row.shade,
            }
            for row in rows
        ],
    }


def bookmarks_payload(input_id: str | None, bookmarks: list[dict]) -> dict:
    return {
        "input": input_id,
        "bookmarks": [
            {"input": b["input"], "candidate": b["candidate"], "seq": b["seq"]} for b in bookmarks
        ],
    }
