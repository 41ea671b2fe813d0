"""Document ingestion and the on-disk corpus store.

Uploaded payloads are parsed into ordered sections (structured XML via a
configurable tag map, or plaintext as a single body section), entities are
extracted and resolved, term counts computed, and everything is persisted in
a single directory: manifest + per-document records + one index file. Writes
go through a file lock and land via atomic rename, so many readers can
coexist with one writer.
"""

from __future__ import annotations

import json
import os
import re
import uuid
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from xml.etree import ElementTree

from filelock import FileLock

from .enrichment import EntityKey, Resolver
from .errors import (
    EmptyDocument,
    MalformedDocument,
    StorageCorrupt,
    UnknownDocument,
    UnsupportedFormat,
)
from .extraction import EntityOccurrence, Mention, aggregate_occurrences, extract_mentions

DEFAULT_TAG_MAP = {
    "title": "title",
    "abstract": "abstract",
    "heading": "heading",
    "p": "paragraph",
    "paragraph": "paragraph",
}

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    text = resources.files("chemvis.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


def count_terms(texts) -> dict[str, int]:
    """Lowercased alphanumeric token counts with the stopword list applied."""
    drop = stopwords()
    counts: Counter[str] = Counter()
    for text in texts:
        for token in _TOKEN_RE.findall(text.lower()):
            if token not in drop:
                counts[token] += 1
    return dict(counts)


def _collapse(text: str) -> str:
    return " ".join(text.split())


def _local_tag(tag) -> str:
    if isinstance(tag, str):
        return tag.rsplit("}", 1)[-1]
    return ""  # comments / processing instructions


class _SectionBuilder:
    def __init__(self):
        self.sections: list[tuple[str, str]] = []
        self._label: str | None = None
        self._parts: list[str] = []

    def open(self, label: str) -> None:
        self.flush()
        self._label = label

    def add(self, text: str | None) -> None:
        if text and text.strip():
            self._parts.append(_collapse(text))

    def flush(self) -> None:
        if self._parts:
            self.sections.append((self._label or "body", " ".join(self._parts)))
        self._parts = []
        self._label = None


def parse_structured(xml: bytes | str, tag_map: dict[str, str] | None = None) -> tuple[str, list[tuple[str, str]]]:
    """Walk the element tree recursively in document order.

    The tag map classifies elements into section labels; the first
    title-mapped element becomes the document title (later ones read as
    headings). Text of unmapped elements is collected into the enclosing
    section so nothing is silently dropped.
    """
    mapping = DEFAULT_TAG_MAP if tag_map is None else tag_map
    try:
        root = ElementTree.fromstring(xml)
    except ElementTree.ParseError as exc:
        raise MalformedDocument(f"XML parse failure: {exc}") from exc

    builder = _SectionBuilder()
    title_parts: list[str] = []

    def walk(element) -> None:
        label = mapping.get(_local_tag(element.tag))
        if label == "title":
            if not title_parts:
                title_parts.append(_collapse(" ".join(element.itertext())))
                return  # tail is handled by the caller
            label = "heading"
        if label is not None:
            builder.open(label)
        builder.add(element.text)
        for child in element:
            walk(child)
            builder.add(child.tail)

    walk(root)
    builder.flush()
    return (title_parts[0] if title_parts else "", builder.sections)


@dataclass(frozen=True)
class Document:
    """An ingested paper. Entities and term counts are derived solely from
    the sections, so they can always be recomputed."""

    id: str
    title: str
    sections: tuple[tuple[str, str], ...]
    entities: tuple[EntityOccurrence, ...]
    term_counts: dict[str, int]


def _occurrence_to_json(occurrence: EntityOccurrence) -> dict:
    return {
        "key": occurrence.entity_key.as_string(),
        "frequency": occurrence.frequency,
        "mentions": [
            {
                "surface": m.surface,
                "section": m.section,
                "start": m.start,
                "end": m.end,
                "kind": m.kind,
            }
            for m in occurrence.mentions
        ],
    }


def _occurrence_from_json(data: dict) -> EntityOccurrence:
    mentions = tuple(
        Mention(m["surface"], m["section"], m["start"], m["end"], m["kind"])
        for m in data["mentions"]
    )
    return EntityOccurrence(EntityKey.from_string(data["key"]), data["frequency"], mentions)


@dataclass
class ReindexReport:
    drift: list[str]

    @property
    def ok(self) -> bool:
        return not self.drift


class CorpusStore:
    """Single-directory persistent corpus: manifest.json, documents/<id>.json,
    index.json (inverted term index + per-document entity vectors), and the
    bookmark set. One writer at a time; readers need no lock."""

    MANIFEST = "manifest.json"
    INDEX = "index.json"
    DOCUMENTS = "documents"

    def __init__(self, root: str | os.PathLike, create: bool = True):
        self.root = Path(root)
        if create:
            (self.root / self.DOCUMENTS).mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.root / ".write.lock"))
        if not (self.root / self.MANIFEST).exists():
            if not create:
                raise StorageCorrupt(f"no manifest in {self.root}")
            with self._lock:
                if not (self.root / self.MANIFEST).exists():
                    self._write_json(self.MANIFEST, {"version": 1, "documents": {}, "bookmarks": []})
                    self._write_json(self.INDEX, {"version": 1, "terms": {}, "entity_vectors": {}})
        self._doc_cache: dict[str, Document] = {}
        # parsed manifest/index keyed by (mtime_ns, size), so an external
        # writer invalidates readers automatically
        self._json_cache: dict[str, tuple[tuple[int, int], dict]] = {}

    # -- file plumbing -----------------------------------------------------

    def _read_json(self, relative: str) -> dict:
        path = self.root / relative
        try:
            stamp_stat = path.stat()
            stamp = (stamp_stat.st_mtime_ns, stamp_stat.st_size)
            cached = self._json_cache.get(relative)
            if cached is not None and cached[0] == stamp:
                return cached[1]
            payload = json.loads(path.read_text("utf-8"))
            self._json_cache[relative] = (stamp, payload)
            return payload
        except FileNotFoundError as exc:
            raise StorageCorrupt(f"missing store file {relative}") from exc
        except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise StorageCorrupt(f"unreadable store file {relative}: {exc}") from exc

    def _write_json(self, relative: str, payload: dict) -> None:
        path = self.root / relative
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=1), "utf-8")
        os.replace(tmp, path)

    # -- documents -----------------------------------------------------------

    def add_document(
        self,
        title: str,
        sections: list[tuple[str, str]],
        entities: list[EntityOccurrence],
        term_counts: dict[str, int],
    ) -> str:
        doc_id = uuid.uuid4().hex
        record = {
            "id": doc_id,
            "title": title,
            "sections": [list(s) for s in sections],
            "entities": [_occurrence_to_json(o) for o in entities],
            "term_counts": term_counts,
        }
        with self._lock:
            manifest = self._read_json(self.MANIFEST)
            index = self._read_json(self.INDEX)
            self._write_json(f"{self.DOCUMENTS}/{doc_id}.json", record)
            manifest["documents"][doc_id] = {"title": title}
            for term, count in term_counts.items():
                index["terms"].setdefault(term, {})[doc_id] = count
            index["entity_vectors"][doc_id] = {
                o.entity_key.as_string(): o.frequency for o in entities
            }
            self._write_json(self.INDEX, index)
            self._write_json(self.MANIFEST, manifest)
        return doc_id

    def document_ids(self) -> list[str]:
        return sorted(self._read_json(self.MANIFEST)["documents"])

    def has_document(self, doc_id: str) -> bool:
        return doc_id in self._read_json(self.MANIFEST)["documents"]

    def get_document(self, doc_id: str) -> Document:
        cached = self._doc_cache.get(doc_id)
        if cached is not None:
            return cached
        if not self.has_document(doc_id):
            raise UnknownDocument(doc_id)
        data = self._read_json(f"{self.DOCUMENTS}/{doc_id}.json")
        document = Document(
            id=data["id"],
            title=data["title"],
            sections=tuple((label, text) for label, text in data["sections"]),
            entities=tuple(_occurrence_from_json(o) for o in data["entities"]),
            term_counts=dict(data["term_counts"]),
        )
        self._doc_cache[doc_id] = document
        return document

    def entity_vector(self, doc_id: str) -> dict[str, int]:
        vectors = self._read_json(self.INDEX)["entity_vectors"]
        if doc_id not in vectors:
            raise UnknownDocument(doc_id)
        return dict(vectors[doc_id])

    def term_vector(self, doc_id: str) -> dict[str, int]:
        return self.get_document(doc_id).term_counts

    def corpus_stats(self) -> tuple[int, dict[str, int]]:
        """(number of documents, document frequency per term)."""
        manifest = self._read_json(self.MANIFEST)
        index = self._read_json(self.INDEX)
        df = {term: len(postings) for term, postings in index["terms"].items()}
        return len(manifest["documents"]), df

    # -- bookmarks -----------------------------------------------------------

    def add_bookmark(self, input_id: str, candidate_id: str) -> None:
        for doc_id in (input_id, candidate_id):
            if not self.has_document(doc_id):
                raise UnknownDocument(doc_id)
        with self._lock:
            manifest = self._read_json(self.MANIFEST)
            pairs = [(b["input"], b["candidate"]) for b in manifest["bookmarks"]]
            if (input_id, candidate_id) not in pairs:
                manifest["bookmarks"].append(
                    {"input": input_id, "candidate": candidate_id, "seq": len(pairs) + 1}
                )
                self._write_json(self.MANIFEST, manifest)

    def list_bookmarks(self, input_id: str | None = None) -> list[dict]:
        if input_id is not None and not self.has_document(input_id):
            raise UnknownDocument(input_id)
        bookmarks = self._read_json(self.MANIFEST)["bookmarks"]
        if input_id is not None:
            bookmarks = [b for b in bookmarks if b["input"] == input_id]
        return sorted(bookmarks, key=lambda b: b["seq"])


def ingest_document(
    store: CorpusStore,
    payload: bytes,
    format: str,
    title: str | None = None,
    *,
    resolver: Resolver,
    tag_map: dict[str, str] | None = None,
) -> str:
    """Parse, extract, and persist one uploaded document; returns its id."""
    if not payload or not payload.strip():
        raise EmptyDocument("document payload is empty")
    if format == "xml":
        parsed_title, sections = parse_structured(payload, tag_map)
        doc_title = title if title else parsed_title
    elif format == "plaintext":
        try:
            text = payload.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"plaintext payload is not UTF-8: {exc}") from exc
        sections = [("body", _collapse(text))]
        doc_title = title or ""
    else:
        raise UnsupportedFormat(f"unsupported format {format!r}")
    if not sections:
        raise EmptyDocument("document has no text content")

    texts = [text for _, text in sections]
    mentions = extract_mentions(texts, resolver.lexicon)
    entities = aggregate_occurrences(mentions, resolver.key_for)
    term_counts = count_terms(texts)
    return store.add_document(doc_title, sections, entities, term_counts)


def reindex(store: CorpusStore, resolver: Resolver) -> ReindexReport:
    """Rebuild the inverted index and entity vectors from stored sections,
    write the rebuilt index, and report any drift (expected: none)."""
    manifest = store._read_json(store.MANIFEST)
    old_index = store._read_json(store.INDEX)
    drift: list[str] = []
    terms: dict[str, dict[str, int]] = {}
    entity_vectors: dict[str, dict[str, int]] = {}

    for doc_id in sorted(manifest["documents"]):
        data = store._read_json(f"{store.DOCUMENTS}/{doc_id}.json")
        texts = [text for _, text in data["sections"]]
        mentions = extract_mentions(texts, resolver.lexicon)
        entities = aggregate_occurrences(mentions, resolver.key_for)
        term_counts = count_terms(texts)
        if term_counts != data["term_counts"]:
            drift.append(f"document {doc_id}: stored term counts differ from sections")
        stored_vector = {o["key"]: o["frequency"] for o in data["entities"]}
        rebuilt_vector = {o.entity_key.as_string(): o.frequency for o in entities}
        if stored_vector != rebuilt_vector:
            drift.append(f"document {doc_id}: stored entities differ from sections")
        for term, count in term_counts.items():
            terms.setdefault(term, {})[doc_id] = count
        entity_vectors[doc_id] = rebuilt_vector

    if old_index.get("terms") != terms:
        drift.append("index: inverted term index differs from rebuild")
    if old_index.get("entity_vectors") != entity_vectors:
        drift.append("index: entity vectors differ from rebuild")

    with store._lock:
        store._write_json(store.INDEX, {"version": 1, "terms": terms, "entity_vectors": entity_vectors})
    return ReindexReport(drift=drift)
