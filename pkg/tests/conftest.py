"""Shared fixtures: lexicon, offline resolver, corpus stores, a local stub
compound service, and a socket recorder for offline guarantees."""

from __future__ import annotations

import json
import socket
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from chemvis.enrichment import Lexicon, Resolver
from chemvis.ingestion import CorpusStore

# 1x1 transparent PNG, enough to exercise the Base64 image path.
TINY_PNG = bytes.fromhex(
    "89504e470d0a1a0a0000000d494844520000000100000001080600000"
    "01f15c4890000000d4944415478da63fcffffff7f030006fd02fea72d"
    "e1ea0000000049454e44ae426082"
)

MORPHINE_PROPS = {
    "CID": 5288826,
    "Title": "Morphine",
    "IUPACName": "(4R,4aR,7S,7aR,12bS)-3-methyl-2,4,4a,7,7a,13-hexahydro-1H-4,12-methanobenzofuro[3,2-e]isoquinoline-7,9-diol",
    "MolecularFormula": "C17H19NO3",
    "MolecularWeight": "285.34",
}

MAGNESIUM_SULPHATE_PROPS = {
    "CID": 24083,
    "Title": "Magnesium sulphate",
    "IUPACName": "magnesium;sulfate",
    "MolecularFormula": "MgO4S",
    "MolecularWeight": "120.37",
}


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return Lexicon.load()


@pytest.fixture()
def resolver(lexicon) -> Resolver:
    return Resolver(lexicon)


@pytest.fixture()
def store(tmp_path) -> CorpusStore:
    return CorpusStore(tmp_path / "store")


class _StubHandler(BaseHTTPRequestHandler):
    """PUG-REST-shaped stub: routes are looked up in server.routes, a dict of
    path -> (status, content_type, body bytes). Unknown paths 404."""

    def do_GET(self):  # noqa: N802 (http.server API)
        self.server.requests.append(self.path)
        route = self.server.routes.get(self.path)
        if route is None:
            body = json.dumps({"Fault": {"Code": "PUGREST.NotFound"}}).encode()
            self.send_response(404)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)
            return
        status, content_type, body = route
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):  # keep test output quiet
        pass


def _json_route(payload) -> tuple[int, str, bytes]:
    return (200, "application/json", json.dumps(payload).encode())


@pytest.fixture()
def stub_service():
    """Local compound-service stub preloaded with morphine and the
    comparison-view compounds; yields (base_url, server)."""
    server = ThreadingHTTPServer(("127.0.0.1", 0), _StubHandler)
    props = ",".join(("IUPACName", "Title", "MolecularFormula", "MolecularWeight"))
    server.routes = {
        f"/compound/cid/5288826/property/{props}/JSON": _json_route(
            {"PropertyTable": {"Properties": [MORPHINE_PROPS]}}
        ),
        f"/compound/cid/24083/property/{props}/JSON": _json_route(
            {"PropertyTable": {"Properties": [MAGNESIUM_SULPHATE_PROPS]}}
        ),
        f"/compound/name/morphine/property/{props}/JSON": _json_route(
            {"PropertyTable": {"Properties": [MORPHINE_PROPS]}}
        ),
        "/compound/fastformula/C17H19NO3/cids/JSON": _json_route(
            {"IdentifierList": {"CID": [5288826]}}
        ),
        "/compound/cid/5288826/PNG": (200, "image/png", TINY_PNG),
        "/compound/cid/24083/PNG": (200, "image/png", TINY_PNG),
    }
    server.requests = []
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}", server
    finally:
        server.shutdown()
        server.server_close()


class SocketRecorder:
    """Records every attempted outbound socket connection."""

    def __init__(self):
        self.connections: list = []


@pytest.fixture()
def no_network(monkeypatch):
    """Fails loudly on any socket connect; yields the recorder."""
    recorder = SocketRecorder()
    original = socket.socket.connect

    def guarded(self, address, _original=original):
        recorder.connections.append(address)
        raise AssertionError(f"outbound connection attempted: {address!r}")

    monkeypatch.setattr(socket.socket, "connect", guarded)
    yield recorder
