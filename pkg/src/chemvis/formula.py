"""Molecular formula parsing, Hill-order canonicalization, and molecular weights.

Accepts the notation variants that show up in scholarly full text: ASCII and
Unicode-subscript counts, interior whitespace, nested parenthesized groups
with optional multipliers, and middle-dot hydrate segments such as
"Sc(NO3)3·5H2O". Charges, isotope markers, and repeating-unit suffixes are
rejected.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from importlib import resources

from .errors import EmptyInput, MalformedFormula, UnknownElement

# A composition is the notation-independent meaning of a formula: every count
# is a positive integer and parsing never produces an empty mapping.
Composition = dict[str, int]

SUBSCRIPT_DIGITS = "₀₁₂₃₄₅₆₇₈₉"
_SUBSCRIPT_TO_ASCII = {ord(ch): ord("0") + value for value, ch in enumerate(SUBSCRIPT_DIGITS)}

HYDRATE_DOT = "·"
_DOT_VARIANTS = "⋅∙•"  # dot operator, bullet operator, bullet


@lru_cache(maxsize=1)
def atomic_masses() -> dict[str, float]:
    """Element symbol -> atomic weight in g/mol, for all 118 elements.

    Loaded once from the bundled versioned table (see data/atomic_masses.tsv
    for provenance and regeneration notes).
    """
    text = resources.files("chemvis.data").joinpath("atomic_masses.tsv").read_text("utf-8")
    masses: dict[str, float] = {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        symbol, _number, mass = line.split("\t")
        masses[symbol] = float(mass)
    if len(masses) != 118:
        raise RuntimeError(f"atomic mass table has {len(masses)} entries, expected 118")
    return masses


@lru_cache(maxsize=1)
def element_symbols() -> frozenset[str]:
    return frozenset(atomic_masses())


def _normalize(text: str) -> str:
    out = text.translate(_SUBSCRIPT_TO_ASCII)
    for dot in _DOT_VARIANTS:
        out = out.replace(dot, HYDRATE_DOT)
    return "".join(out.split())


def _read_count(segment: str, i: int, original: str) -> tuple[int, int]:
    j = i
    while j < len(segment) and segment[j].isdigit():
        j += 1
    value = int(segment[i:j])
    if value == 0:
        raise MalformedFormula(f"zero count in {original!r}")
    return value, j


def _read_symbol(segment: str, i: int, original: str) -> tuple[str, int]:
    j = i + 1
    while j < len(segment) and j - i < 3 and segment[j].islower():
        j += 1
    symbol = segment[i:j]
    if symbol not in element_symbols():
        raise UnknownElement(f"unknown element {symbol!r} in {original!r}")
    return symbol, j


def _parse_units(segment: str, i: int, original: str, depth: int) -> tuple[Counter[str], int]:
    counts: Counter[str] = Counter()
    while i < len(segment):
        ch = segment[i]
        if ch == "(":
            inner, i = _parse_units(segment, i + 1, original, depth + 1)
            if i >= len(segment) or segment[i] != ")":
                raise MalformedFormula(f"unbalanced parentheses in {original!r}")
            i += 1
            if not inner:
                raise MalformedFormula(f"empty group in {original!r}")
            multiplier = 1
            if i < len(segment) and segment[i].isdigit():
                multiplier, i = _read_count(segment, i, original)
            for symbol, count in inner.items():
                counts[symbol] += count * multiplier
        elif ch == ")":
            if depth == 0:
                raise MalformedFormula(f"unbalanced parentheses in {original!r}")
            return counts, i
        elif ch.isupper():
            symbol, i = _read_symbol(segment, i, original)
            count = 1
            if i < len(segment) and segment[i].isdigit():
                count, i = _read_count(segment, i, original)
            counts[symbol] += count
        else:
            raise MalformedFormula(f"unexpected {ch!r} in {original!r}")
    if depth > 0:
        raise MalformedFormula(f"unbalanced parentheses in {original!r}")
    return counts, i


def parse_formula(text: str) -> Composition:
    """Parse formula notation into an element -> count mapping.

    Group multipliers distribute, repeated elements accumulate, and hydrate
    segments ("·6H2O") are summed into the composition. Raises EmptyInput,
    UnknownElement, or MalformedFormula.
    """
    if text is None or not str(text).strip():
        raise EmptyInput("empty formula")
    normalized = _normalize(str(text))
    if not normalized:
        raise EmptyInput("empty formula")
    total: Counter[str] = Counter()
    for position, segment in enumerate(normalized.split(HYDRATE_DOT)):
        if not segment:
            raise MalformedFormula(f"empty hydrate segment in {text!r}")
        multiplier, i = 1, 0
        if position > 0 and segment[0].isdigit():
            multiplier, i = _read_count(segment, 0, str(text))
        counts, end = _parse_units(segment, i, str(text), depth=0)
        if end != len(segment):
            raise MalformedFormula(f"unexpected {segment[end]!r} in {text!r}")
        if not counts:
            raise MalformedFormula(f"segment with no elements in {text!r}")
        for symbol, count in counts.items():
            total[symbol] += count * multiplier
    return dict(total)


def canonical_hill(composition: Composition) -> str:
    """Render a composition in Hill order with ASCII digits.

    Carbon first and hydrogen second when carbon is present, all remaining
    elements alphabetical; fully alphabetical without carbon. Count 1 is
    omitted. Deterministic, and a fixed point under re-parse/re-render.
    """
    if not composition:
        raise MalformedFormula("empty composition")
    for symbol, count in composition.items():
        if symbol not in element_symbols():
            raise UnknownElement(f"unknown element {symbol!r}")
        if not isinstance(count, int) or count < 1:
            raise MalformedFormula(f"count for {symbol} must be a positive integer, got {count!r}")
    rest = sorted(s for s in composition if s not in ("C", "H"))
    if "C" in composition:
        ordered = ["C"] + (["H"] if "H" in composition else []) + rest
    else:
        ordered = sorted(composition)
    return "".join(
        symbol + (str(composition[symbol]) if composition[symbol] != 1 else "")
        for symbol in ordered
    )


def molecular_weight(composition: Composition, masses: dict[str, float] | None = None) -> float:
    """Sum of count * atomic mass over the composition, in g/mol."""
    table = masses if masses is not None else atomic_masses()
    try:
        return sum(count * table[symbol] for symbol, count in composition.items())
    except KeyError as exc:
        raise UnknownElement(f"no atomic mass for {exc.args[0]!r}") from None


def combine(a: Composition, b: Composition, times: int = 1) -> Composition:
    """Element-wise sum a + times*b; used for hydrate arithmetic."""
    total = Counter(a)
    for symbol, count in b.items():
        total[symbol] += count * times
    return dict(total)
