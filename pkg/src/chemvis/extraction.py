"""Chemical mention detection over document text.

Two detectors run over each section: a dictionary matcher for lexicon names
and synonyms (case-insensitive, longest match wins) and a formula matcher
that parses candidate tokens with the formula grammar. A guard rule keeps
English-word lookalikes ("He", "In", "NO") from becoming formula mentions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .enrichment import EntityKey, Lexicon
from .errors import EmptyInput, MalformedFormula, UnknownElement
from .formula import SUBSCRIPT_DIGITS, canonical_hill, parse_formula

# Candidate formula tokens: element letters, digits, groups, hydrate dots,
# and subscript digits. "·" stays inside a token; all other punctuation and
# whitespace are boundaries.
_FORMULA_TOKEN_RE = re.compile(r"[A-Za-z0-9()·⋅∙₀-₉]+")
_ASCII_COUNT_RE = re.compile(r"\d+")

_KIND_RANK = {"name": 0, "synonym": 0, "formula": 1}


@dataclass(frozen=True)
class Mention:
    """One occurrence of a chemical entity in a section's text."""

    surface: str
    section: int
    start: int
    end: int
    kind: str  # "name" | "synonym" | "formula"

    @property
    def span(self) -> tuple[int, int, int]:
        return (self.section, self.start, self.end)


@dataclass(frozen=True)
class EntityOccurrence:
    """All mentions of one disambiguated entity within a document."""

    entity_key: EntityKey
    frequency: int
    mentions: tuple[Mention, ...]


def extract_mentions(sections: Sequence[str], lexicon: Lexicon) -> list[Mention]:
    """All non-overlapping mentions across sections, in (section, start) order.

    Deterministic: repeated runs over the same inputs are byte-identical.
    """
    candidates: list[Mention] = []
    for index, text in enumerate(sections):
        candidates.extend(_dictionary_candidates(index, text, lexicon))
        candidates.extend(_formula_candidates(index, text, lexicon))
    return _resolve_overlaps(candidates)


def _dictionary_candidates(section: int, text: str, lexicon: Lexicon) -> Iterable[Mention]:
    for match in lexicon.term_pattern().finditer(text):
        surface = match.group(1)
        start = match.start(1)
        record = lexicon.record_for_name(surface)
        kind = "name" if record is not None and surface.casefold() == record.name.casefold() else "synonym"
        yield Mention(surface, section, start, start + len(surface), kind)


def _formula_candidates(section: int, text: str, lexicon: Lexicon) -> Iterable[Mention]:
    for match in _FORMULA_TOKEN_RE.finditer(text):
        start, end = match.start(), match.end()
        if start > 0 and (text[start - 1].isalnum() or text[start - 1] == "_"):
            continue
        if end < len(text) and (text[end].isalnum() or text[end] == "_"):
            continue
        token, start = _trim_token(match.group(), start)
        if not token:
            continue
        try:
            composition = parse_formula(token)
        except (MalformedFormula, UnknownElement, EmptyInput):
            continue
        if _passes_guard(token, composition, lexicon):
            yield Mention(token, section, start, start + len(token), "formula")


def _trim_token(token: str, start: int) -> tuple[str, int]:
    """Shave punctuation that belongs to the surrounding prose, not the
    formula: stray closers/openers at the edges and fully wrapping parens."""
    while token and token[0] in ")·⋅∙":
        token, start = token[1:], start + 1
    while token and token[-1] in "(·⋅∙":
        token = token[:-1]
    while token.count("(") < token.count(")") and token.endswith(")"):
        token = token[:-1]
    while token.count("(") > token.count(")") and token.startswith("("):
        token, start = token[1:], start + 1
    while len(token) > 1 and token[0] == "(" and token[-1] == ")" and _wraps(token):
        token, start = token[1:-1], start + 1
    return token, start


def _wraps(token: str) -> bool:
    depth = 0
    for i, ch in enumerate(token):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return i == len(token) - 1
    return False


def _passes_guard(token: str, composition: dict[str, int], lexicon: Lexicon) -> bool:
    """Accept a formula-shaped token only when it cannot plausibly be an
    English word: an explicit count > 1, a subscript digit, two or more
    distinct elements with a multi-letter symbol, or a lexicon formula."""
    if any(ch in SUBSCRIPT_DIGITS for ch in token):
        return True
    if any(int(run) > 1 for run in _ASCII_COUNT_RE.findall(token)):
        return True
    if len(composition) >= 2 and any(len(symbol) > 1 for symbol in composition):
        return True
    return canonical_hill(composition) in lexicon.formulas()


def _resolve_overlaps(candidates: list[Mention]) -> list[Mention]:
    # Longest match wins; ties broken by earliest start, then dictionary
    # mentions over formula mentions on identical spans.
    ordered = sorted(
        candidates,
        key=lambda m: (-(m.end - m.start), m.section, m.start, _KIND_RANK[m.kind]),
    )
    taken: dict[int, list[tuple[int, int]]] = {}
    kept: list[Mention] = []
    for mention in ordered:
        spans = taken.setdefault(mention.section, [])
        if any(mention.start < e and s < mention.end for s, e in spans):
            continue
        spans.append((mention.start, mention.end))
        kept.append(mention)
    kept.sort(key=lambda m: (m.section, m.start))
    return kept


def aggregate_occurrences(
    mentions: Iterable[Mention], resolver: Callable[[Mention], EntityKey]
) -> list[EntityOccurrence]:
    """Group mentions by resolved entity key; frequencies sum.

    Unresolved mentions group under their fallback (formula- or name-tier)
    key, so nothing is dropped. Order follows first appearance.
    """
    groups: dict[EntityKey, list[Mention]] = {}
    for mention in mentions:
        groups.setdefault(resolver(mention), []).append(mention)
    return [
        EntityOccurrence(key, len(group), tuple(group)) for key, group in groups.items()
    ]
