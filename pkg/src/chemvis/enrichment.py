"""Entity disambiguation: lexicon lookups, an optional external compound
service client, and the key scheme that makes different notations of one
compound compare equal.

Resolution is offline-first: the bundled lexicon answers deterministically,
and only when a client is configured do misses go out to a PUG-REST-shaped
HTTP service. Unresolved mentions are retained with a formula- or name-tier
key rather than dropped.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import re
import threading
import time
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from urllib.parse import quote

import requests

from .errors import (
    EmptyInput,
    ExternalServiceError,
    MalformedFormula,
    NotFound,
    UnknownElement,
)
from .formula import canonical_hill, molecular_weight, parse_formula

LEXICON_VERSION = "v1"

_TIER_RANK = {"cid": 0, "formula": 1, "name": 2}


@dataclass(frozen=True)
class EntityKey:
    """Disambiguation identity of a mention: CID if resolved, else canonical
    formula, else case-folded name. Keys are equal iff tier and value match;
    tier precedence is cid > formula > name."""

    tier: str
    value: int | str

    def __post_init__(self) -> None:
        if self.tier not in _TIER_RANK:
            raise ValueError(f"unknown key tier {self.tier!r}")
        if self.tier == "cid" and (not isinstance(self.value, int) or self.value <= 0):
            raise ValueError(f"cid key needs a positive integer, got {self.value!r}")

    @classmethod
    def for_cid(cls, cid: int) -> "EntityKey":
        return cls("cid", cid)

    @classmethod
    def for_formula(cls, canonical: str) -> "EntityKey":
        return cls("formula", canonical)

    @classmethod
    def for_name(cls, name: str) -> "EntityKey":
        return cls("name", name.strip().casefold())

    def as_string(self) -> str:
        return f"{self.tier}:{self.value}"

    @classmethod
    def from_string(cls, text: str) -> "EntityKey":
        tier, _, value = text.partition(":")
        if tier == "cid":
            return cls(tier, int(value))
        return cls(tier, value)

    @property
    def rank(self) -> int:
        return _TIER_RANK[self.tier]


@dataclass(frozen=True)
class ResolvedEntity:
    """A disambiguated compound with its display properties.

    status == "resolved" implies a CID is present; when both formula and
    weight are present the weight agrees with the formula within ±0.02 g/mol.
    structure_image carries PNG bytes as Base64 text.
    """

    key: EntityKey
    display_name: str
    cid: int | None = None
    iupac_name: str | None = None
    formula: str | None = None
    weight: float | None = None
    structure_image: str | None = None
    synonyms: tuple[str, ...] = ()
    status: str = "unresolved"


@dataclass(frozen=True)
class LexiconRecord:
    cid: int
    name: str
    formula: str
    weight: float
    synonyms: tuple[str, ...] = ()


class Lexicon:
    """Curated offline slice of compound records with case-insensitive
    name/synonym lookup and canonical-formula lookup."""

    def __init__(self, records: list[LexiconRecord]):
        self.records = list(records)
        self._by_term: dict[str, LexiconRecord] = {}
        self._by_formula: dict[str, list[LexiconRecord]] = {}
        self._by_cid: dict[int, LexiconRecord] = {}
        for record in self.records:
            if record.cid in self._by_cid:
                raise ValueError(f"duplicate cid {record.cid} in lexicon")
            self._by_cid[record.cid] = record
            for term in (record.name, *record.synonyms):
                folded = term.casefold()
                other = self._by_term.get(folded)
                if other is not None and other.cid != record.cid:
                    raise ValueError(f"term {term!r} maps to both cid {other.cid} and {record.cid}")
                self._by_term[folded] = record
            self._by_formula.setdefault(record.formula, []).append(record)
        for siblings in self._by_formula.values():
            siblings.sort(key=lambda r: r.cid)
        self._term_regex: re.Pattern[str] | None = None

    @classmethod
    def load(cls, path: str | os.PathLike | None = None) -> "Lexicon":
        if path is None:
            text = resources.files("chemvis.data").joinpath("lexicon.tsv").read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        lines = text.splitlines()
        if not lines or not lines[0].startswith("#chemvis-lexicon"):
            raise ValueError("lexicon file is missing its version header")
        records = []
        for line in lines[1:]:
            if not line or line.startswith("#"):
                continue
            cid, name, formula, weight, *synonyms = line.split("\t")
            records.append(
                LexiconRecord(
                    cid=int(cid),
                    name=name,
                    formula=formula,
                    weight=float(weight),
                    synonyms=tuple(s for s in synonyms if s),
                )
            )
        return cls(records)

    def __len__(self) -> int:
        return len(self.records)

    def record_for_name(self, name: str) -> LexiconRecord | None:
        return self._by_term.get(name.strip().casefold())

    def records_for_formula(self, canonical: str) -> list[LexiconRecord]:
        return list(self._by_formula.get(canonical, ()))

    def record_for_cid(self, cid: int) -> LexiconRecord | None:
        return self._by_cid.get(cid)

    def formulas(self) -> set[str]:
        return set(self._by_formula)

    def terms(self) -> list[str]:
        return list(self._by_term)

    def term_pattern(self) -> re.Pattern[str]:
        """Regex that captures, at every position, the longest dictionary term
        starting there (overlap-friendly via a capturing lookahead)."""
        if self._term_regex is None:
            terms = sorted(self._by_term, key=lambda t: (-len(t), t))
            alternation = "|".join(re.escape(t) for t in terms)
            self._term_regex = re.compile(
                rf"(?=((?<!\w)(?:{alternation})(?!\w)))", re.IGNORECASE
            )
        return self._term_regex


def _entity_from_record(record: LexiconRecord) -> ResolvedEntity:
    return ResolvedEntity(
        key=EntityKey.for_cid(record.cid),
        display_name=record.name,
        cid=record.cid,
        formula=record.formula,
        weight=record.weight,
        synonyms=record.synonyms,
        status="resolved",
    )


class RateLimiter:
    """Paces calls so the configured requests/second is never exceeded.

    Clock and sleep are injectable so tests can drive it with fake time.
    """

    def __init__(self, per_second: float, clock=time.monotonic, sleep=time.sleep):
        self._interval = 1.0 / per_second if per_second > 0 else 0.0
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next: float | None = None

    def acquire(self) -> None:
        if self._interval == 0.0:
            return
        with self._lock:
            now = self._clock()
            if self._next is None or now >= self._next:
                self._next = now + self._interval
                return
            wait = self._next - now
            self._next += self._interval
        self._sleep(wait)


DEFAULT_PROPERTIES = ("IUPACName", "Title", "MolecularFormula", "MolecularWeight")


class PubChemClient:
    """Minimal PUG-REST-shaped HTTP client with disk caching.

    Endpoints used:
      GET {base}/compound/name/{name}/property/{props}/JSON
      GET {base}/compound/cid/{cid}/property/{props}/JSON
      GET {base}/compound/fastformula/{formula}/cids/JSON
      GET {base}/compound/cid/{cid}/PNG

    Responses are cached content-addressed under cache_dir with no expiry
    (compound data is stable). A clean upstream not-found is not an error;
    network and server failures raise ExternalServiceError.
    """

    def __init__(
        self,
        base_url: str,
        *,
        properties: tuple[str, ...] = DEFAULT_PROPERTIES,
        rate_limit_per_s: float = 5.0,
        max_concurrent: int = 2,
        cache_dir: str | os.PathLike | None = None,
        session: requests.Session | None = None,
        clock=time.monotonic,
        sleep=time.sleep,
        timeout: float = 10.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.properties = tuple(properties)
        self._session = session or requests.Session()
        self._timeout = timeout
        self._limiter = RateLimiter(rate_limit_per_s, clock=clock, sleep=sleep)
        self._slots = threading.BoundedSemaphore(max_concurrent)
        self._cache_dir = Path(cache_dir) if cache_dir is not None else None

    # -- caching ---------------------------------------------------------

    def _cache_path(self, kind: str, key: str, suffix: str) -> Path | None:
        if self._cache_dir is None:
            return None
        digest = hashlib.sha256(f"{kind}:{key}".encode("utf-8")).hexdigest()
        return self._cache_dir / f"{digest}{suffix}"

    def _cached_bytes(self, kind: str, key: str, suffix: str, fetch) -> bytes:
        path = self._cache_path(kind, key, suffix)
        if path is not None and path.exists():
            return path.read_bytes()
        data = fetch()
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(path.suffix + ".tmp")
            tmp.write_bytes(data)
            os.replace(tmp, path)
        return data

    # -- transport -------------------------------------------------------

    def _get(self, path: str) -> requests.Response:
        url = f"{self.base_url}{path}"
        with self._slots:
            self._limiter.acquire()
            try:
                response = self._session.get(url, timeout=self._timeout)
            except requests.RequestException as exc:
                raise ExternalServiceError(f"GET {url} failed: {exc}") from exc
        if response.status_code >= 500:
            raise ExternalServiceError(f"GET {url} returned {response.status_code}")
        return response

    def _get_json(self, kind: str, key: str, path: str) -> dict | None:
        """Returns the decoded body, or None for an upstream 404."""

        def fetch() -> bytes:
            response = self._get(path)
            if response.status_code == 404:
                return b"null"
            if response.status_code != 200:
                raise ExternalServiceError(f"GET {path} returned {response.status_code}")
            return response.content

        raw = self._cached_bytes(kind, key, ".json", fetch)
        return json.loads(raw.decode("utf-8"))

    # -- lookups ---------------------------------------------------------

    def properties_by_name(self, name: str) -> dict | None:
        props = ",".join(self.properties)
        key = name.strip().casefold()
        body = self._get_json("name", key, f"/compound/name/{quote(name)}/property/{props}/JSON")
        if body is None:
            return None
        return self._first_property_row(body)

    def properties_by_cid(self, cid: int) -> dict:
        props = ",".join(self.properties)
        body = self._get_json("cid", str(cid), f"/compound/cid/{cid}/property/{props}/JSON")
        if body is None:
            raise NotFound(f"cid {cid} unknown upstream")
        return self._first_property_row(body)

    def cids_by_formula(self, formula: str) -> list[int]:
        body = self._get_json("formula", formula, f"/compound/fastformula/{quote(formula)}/cids/JSON")
        if body is None:
            return []
        cids = body.get("IdentifierList", {}).get("CID", [])
        return sorted(int(c) for c in cids)

    def structure_png(self, cid: int) -> bytes | None:
        def fetch() -> bytes:
            response = self._get(f"/compound/cid/{cid}/PNG")
            if response.status_code == 404:
                return b""
            if response.status_code != 200:
                raise ExternalServiceError(f"PNG for cid {cid} returned {response.status_code}")
            return response.content

        data = self._cached_bytes("png", str(cid), ".png", fetch)
        return data or None

    @staticmethod
    def _first_property_row(body: dict) -> dict:
        try:
            return body["PropertyTable"]["Properties"][0]
        except (KeyError, IndexError, TypeError) as exc:
            raise ExternalServiceError(f"unexpected property payload: {body!r}") from exc


class Resolver:
    """Two-mode resolution (by name, by formula) over lexicon-then-client,
    with per-process memoization on top of the client's disk cache."""

    def __init__(self, lexicon: Lexicon, client: PubChemClient | None = None):
        self.lexicon = lexicon
        self.client = client
        self._name_cache: dict[str, ResolvedEntity] = {}
        self._formula_cache: dict[str, tuple[ResolvedEntity, ...]] = {}

    @property
    def offline(self) -> bool:
        return self.client is None

    def resolve_by_name(self, name: str) -> ResolvedEntity:
        if not name or not name.strip():
            raise EmptyInput("empty name")
        folded = name.strip().casefold()
        hit = self._name_cache.get(folded)
        if hit is not None:
            return hit
        record = self.lexicon.record_for_name(folded)
        if record is not None:
            entity = _entity_from_record(record)
        elif self.client is not None:
            row = self.client.properties_by_name(name.strip())
            entity = self._entity_from_properties(row) if row else self._unresolved_name(name)
        else:
            entity = self._unresolved_name(name)
        self._name_cache[folded] = entity
        return entity

    def resolve_by_formula(self, formula: str) -> list[ResolvedEntity]:
        canonical = canonical_hill(parse_formula(formula))
        hit = self._formula_cache.get(canonical)
        if hit is not None:
            return list(hit)
        records = self.lexicon.records_for_formula(canonical)
        if records:
            entities = tuple(_entity_from_record(r) for r in records)
        elif self.client is not None:
            cids = self.client.cids_by_formula(canonical)
            entities = tuple(self.fetch_properties(cid) for cid in cids)
        else:
            entities = ()
        self._formula_cache[canonical] = entities
        return list(entities)

    def fetch_properties(self, cid: int) -> ResolvedEntity:
        """Fetch the display property set for a CID from the external service."""
        if self.client is None:
            raise ExternalServiceError("no external client configured (offline mode)")
        row = self.client.properties_by_cid(cid)
        png = self.client.structure_png(cid)
        return self._entity_from_properties(row, structure=png)

    def _entity_from_properties(self, row: dict, structure: bytes | None = None) -> ResolvedEntity:
        cid = int(row["CID"])
        raw_formula = row.get("MolecularFormula")
        formula = None
        if raw_formula:
            try:
                formula = canonical_hill(parse_formula(raw_formula))
            except (MalformedFormula, UnknownElement, EmptyInput):
                formula = str(raw_formula)  # charged/isotopic upstream formulas pass through
        weight = row.get("MolecularWeight")
        display = row.get("Title") or row.get("IUPACName") or f"CID {cid}"
        return ResolvedEntity(
            key=EntityKey.for_cid(cid),
            display_name=str(display),
            cid=cid,
            iupac_name=row.get("IUPACName"),
            formula=formula,
            weight=float(weight) if weight is not None else None,
            structure_image=base64.b64encode(structure).decode("ascii") if structure else None,
            status="resolved",
        )

    def _structure_for(self, cid: int) -> str | None:
        """Best-effort structure image for display; never fatal."""
        if self.client is None:
            return None
        try:
            png = self.client.structure_png(cid)
        except (NotFound, ExternalServiceError):
            return None
        return base64.b64encode(png).decode("ascii") if png else None

    @staticmethod
    def _unresolved_name(name: str) -> ResolvedEntity:
        return ResolvedEntity(
            key=EntityKey.for_name(name),
            display_name=name.strip(),
            status="unresolved",
        )

    def _unresolved_formula(self, canonical: str) -> ResolvedEntity:
        composition = parse_formula(canonical)
        return ResolvedEntity(
            key=EntityKey.for_formula(canonical),
            display_name=canonical,
            formula=canonical,
            weight=round(molecular_weight(composition), 3),
            status="unresolved",
        )

    def key_for(self, mention) -> EntityKey:
        """Resolution function used when aggregating mentions into occurrences."""
        if mention.kind == "formula":
            candidates = self.resolve_by_formula(mention.surface)
            if candidates:
                return candidates[0].key
            return EntityKey.for_formula(canonical_hill(parse_formula(mention.surface)))
        return self.resolve_by_name(mention.surface).key

    def entity_for_key(self, key: EntityKey) -> ResolvedEntity:
        """Display properties for a stored entity key (never raises for keys
        produced by key_for; falls back to bare-bones entities)."""
        if key.tier == "cid":
            cid = int(key.value)
            record = self.lexicon.record_for_cid(cid)
            if record is not None:
                entity = _entity_from_record(record)
                image = self._structure_for(cid)
                if image is not None:
                    entity = replace(entity, structure_image=image)
                return entity
            if self.client is not None:
                try:
                    return self.fetch_properties(cid)
                except (NotFound, ExternalServiceError):
                    pass
            return ResolvedEntity(
                key=key, display_name=f"CID {key.value}", cid=cid, status="resolved"
            )
        if key.tier == "formula":
            records = self.lexicon.records_for_formula(str(key.value))
            if records:
                return _entity_from_record(records[0])
            return self._unresolved_formula(str(key.value))
        record = self.lexicon.record_for_name(str(key.value))
        if record is not None:
            return _entity_from_record(record)
        return ResolvedEntity(key=key, display_name=str(key.value), status="unresolved")
