"""HTTP facade over ingestion, recommendation, comparison, and bookmarks.

All responses are JSON rendered through payloads.to_json (so CLI output and
endpoint bodies are byte-identical); errors use a uniform
{error, code, detail} body. The service is stateless above the store:
restart preserves all documents and bookmarks.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import payloads
from .config import ServiceConfig, build_resolver, load_config
from .errors import (
    ChemvisError,
    EmptyDocument,
    EmptyInput,
    ExternalServiceError,
    InvalidWeights,
    MalformedDocument,
    MalformedFormula,
    NotFound,
    PayloadTooLarge,
    StorageCorrupt,
    UnknownDocument,
    UnknownElement,
    UnsupportedFormat,
)
from .ingestion import CorpusStore, ingest_document
from .recommend import SimilarityWeights, align_entities, recommend

_STATUS_FOR = {
    UnsupportedFormat: (400, "unsupported_format"),
    MalformedDocument: (400, "malformed_document"),
    EmptyDocument: (400, "empty_document"),
    MalformedFormula: (400, "malformed_formula"),
    UnknownElement: (400, "unknown_element"),
    EmptyInput: (400, "empty_input"),
    UnknownDocument: (404, "unknown_document"),
    NotFound: (404, "not_found"),
    PayloadTooLarge: (413, "payload_too_large"),
    InvalidWeights: (422, "invalid_weights"),
    ExternalServiceError: (502, "external_service_error"),
    StorageCorrupt: (500, "storage_corrupt"),
}


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=payloads.to_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _error_response(status: int, code: str, detail: str) -> Response:
    return _json_response({"error": code, "code": status, "detail": detail}, status)


class BookmarkRequest(BaseModel):
    input: str
    candidate: str


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or load_config()
    store = CorpusStore(config.store_dir)
    resolver = build_resolver(config)

    app = FastAPI(title="chemvis", docs_url=None, redoc_url=None)
    app.state.config = config
    app.state.store = store
    app.state.resolver = resolver

    @app.exception_handler(ChemvisError)
    async def domain_error_handler(_request: Request, exc: ChemvisError):
        for cls in type(exc).__mro__:
            if cls in _STATUS_FOR:
                status, code = _STATUS_FOR[cls]
                return _error_response(status, code, str(exc))
        return _error_response(500, "internal_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_request: Request, exc: RequestValidationError):
        return _error_response(422, "validation_error", str(exc.errors()))

    @app.post("/api/documents")
    async def upload_document(
        file: UploadFile = File(...),
        format: str = Form(...),
        title: str | None = Form(None),
    ):
        payload = await file.read()
        if len(payload) > config.max_upload_bytes:
            raise PayloadTooLarge(
                f"payload of {len(payload)} bytes exceeds cap {config.max_upload_bytes}"
            )
        doc_id = ingest_document(
            store, payload, format, title, resolver=resolver, tag_map=config.tag_map
        )
        return _json_response(payloads.ingest_payload(doc_id), status_code=201)

    @app.get("/api/documents/{doc_id}/entities")
    async def document_entities(doc_id: str):
        return _json_response(payloads.document_entities_payload(store, doc_id, resolver))

    @app.get("/api/documents/{doc_id}/recommendations")
    async def document_recommendations(
        doc_id: str,
        k: int = 10,
        w_entity: float | None = None,
        w_text: float | None = None,
    ):
        if k < 0:
            raise InvalidWeights("k must be non-negative")
        weights = SimilarityWeights(
            config.w_entity if w_entity is None else w_entity,
            config.w_text if w_text is None else w_text,
        )
        ranked = recommend(store, doc_id, k, weights)
        return _json_response(payloads.recommendations_payload(doc_id, k, weights, ranked))

    @app.get("/api/compare")
    async def compare(input: str, candidate: str):
        rows = align_entities(store, input, candidate, resolver)
        return _json_response(payloads.compare_payload(input, candidate, rows))

    @app.post("/api/bookmarks")
    async def add_bookmark(body: BookmarkRequest):
        store.add_bookmark(body.input, body.candidate)
        return _json_response(
            payloads.bookmarks_payload(body.input, store.list_bookmarks(body.input))
        )

    @app.get("/api/bookmarks")
    async def list_bookmarks(input: str | None = None):
        return _json_response(payloads.bookmarks_payload(input, store.list_bookmarks(input)))

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
