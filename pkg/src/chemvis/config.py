"""Runtime configuration: one JSON config file, every field overridable by
environment variable, plus constructors for the shared runtime pieces."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .enrichment import Lexicon, PubChemClient, Resolver

DEFAULT_PUBCHEM_BASE = "https://pubchem.ncbi.nlm.nih.gov/rest/pug"

_ENV_PREFIX = "CHEMVIS_"

# config field -> environment variable suffix
_ENV_MAP = {
    "listen": "LISTEN",
    "store_dir": "STORE",
    "offline": "OFFLINE",
    "pubchem_base": "PUBCHEM_BASE",
    "cache_dir": "CACHE_DIR",
    "rate_limit": "RATE_LIMIT",
    "max_concurrent": "MAX_CONCURRENT",
    "tag_map": "TAG_MAP",
    "w_entity": "W_ENTITY",
    "w_text": "W_TEXT",
    "max_upload_bytes": "MAX_UPLOAD",
    "static_dir": "STATIC_DIR",
    "lexicon_path": "LEXICON",
    "pubchem_properties": "PUBCHEM_PROPERTIES",
}

_TRUTHY = {"1", "true", "yes", "on"}


@dataclass
class ServiceConfig:
    listen: str = "127.0.0.1:8040"
    store_dir: str = "chemvis-store"
    offline: bool = False
    pubchem_base: str = DEFAULT_PUBCHEM_BASE
    cache_dir: str | None = None
    rate_limit: float = 5.0
    max_concurrent: int = 2
    tag_map: dict[str, str] | None = None
    w_entity: float = 0.5
    w_text: float = 0.5
    max_upload_bytes: int = 10_000_000
    static_dir: str | None = None
    lexicon_path: str | None = None
    # property names requested from the external compound service; extend to
    # fetch more per entity
    pubchem_properties: list[str] = field(
        default_factory=lambda: ["IUPACName", "Title", "MolecularFormula", "MolecularWeight"]
    )

    @property
    def host_and_port(self) -> tuple[str, int]:
        host, _, port = self.listen.rpartition(":")
        return host or "127.0.0.1", int(port)


def _coerce(name: str, raw: str, current):
    if name == "offline":
        return raw.strip().lower() in _TRUTHY
    if name == "tag_map":
        return json.loads(raw)
    if name == "pubchem_properties":
        return [p for p in raw.split(",") if p]
    if isinstance(current, bool):
        return raw.strip().lower() in _TRUTHY
    if isinstance(current, int) and not isinstance(current, bool):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    return raw


def load_config(path: str | os.PathLike | None = None, environ: dict | None = None) -> ServiceConfig:
    """Defaults, then the config file (JSON object of config keys), then
    environment variables."""
    env = os.environ if environ is None else environ
    config = ServiceConfig()
    if path is None:
        path = env.get(_ENV_PREFIX + "CONFIG")
    if path:
        data = json.loads(Path(path).read_text("utf-8"))
        known = {f.name for f in fields(ServiceConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(config, key, value)
    for name, suffix in _ENV_MAP.items():
        raw = env.get(_ENV_PREFIX + suffix)
        if raw is not None and raw != "":
            setattr(config, name, _coerce(name, raw, getattr(ServiceConfig(), name)))
    return config


def build_resolver(config: ServiceConfig) -> Resolver:
    lexicon = Lexicon.load(config.lexicon_path)
    if config.offline:
        return Resolver(lexicon)
    client = PubChemClient(
        config.pubchem_base,
        properties=tuple(config.pubchem_properties),
        rate_limit_per_s=config.rate_limit,
        max_concurrent=config.max_concurrent,
        cache_dir=config.cache_dir,
    )
    return Resolver(lexicon, client)
