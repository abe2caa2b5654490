"""Gazetteer lexicons: fixed phrase lists mapped to one category each.

Lexicon files hold one phrase per line; ``#`` starts a comment. Brand entries
match case-sensitively (vendor names), everything else case-insensitively.
"""

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from ..categories import EntityCategory
from ..ingest import normalize_text


class MatchMode(str, Enum):
    CASE_SENSITIVE = "case_sensitive"
    CASE_INSENSITIVE = "case_insensitive"


# Gazetteer-backed categories and their lexicon file names. The remaining
# categories are covered by unit patterns and the formula recognizer.
LEXICON_FILES: dict[EntityCategory, str] = {
    EntityCategory.DESCRIPTOR: "descriptor.txt",
    EntityCategory.OPERATION: "operation.txt",
    EntityCategory.DEVICE: "device.txt",
    EntityCategory.BRAND: "brand.txt",
    EntityCategory.PROPERTY_PRESSURE: "property_pressure.txt",
    EntityCategory.MATERIAL_OTHERS: "material_others.txt",
    EntityCategory.MATERIAL_INTERMEDIUM: "material_intermedium.txt",
}

AUX_RECIPE_FILE = "recipe_formulas.txt"
AUX_CONTEXT_FILE = "formula_context.txt"


@dataclass(frozen=True)
class Lexicon:
    category: EntityCategory
    entries: frozenset[str]
    match_mode: MatchMode

    def __post_init__(self):
        if not self.entries:
            raise ValueError(f"lexicon for {self.category} is empty")
        if any(not e.strip() for e in self.entries):
            raise ValueError(f"lexicon for {self.category} has a blank entry")

    def compile(self) -> "re.Pattern[str]":
        # Longest-first alternation keeps matching deterministic when one
        # entry is a prefix of another ("Sigma" vs "Sigma-Aldrich").
        ordered = sorted(self.entries, key=lambda e: (-len(e), e))
        body = "|".join(re.escape(e) for e in ordered)
        flags = re.IGNORECASE if self.match_mode is MatchMode.CASE_INSENSITIVE else 0
        return re.compile(rf"(?<!\w)(?:{body})(?!\w)", flags)


def read_phrase_file(text: str) -> list[str]:
    phrases = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        line = normalize_text(line)
        if line:
            phrases.append(line)
    return phrases


def _read_source(config_dir: Path | None, filename: str) -> str:
    if config_dir is not None:
        path = Path(config_dir) / filename
        if path.exists():
            return path.read_text("utf-8")
    return (resources.files("matkb") / "data" / "lexicons" / filename).read_text("utf-8")


def load_lexicons(config_dir: Path | None = None) -> dict[EntityCategory, Lexicon]:
    """Load gazetteers from a directory, falling back to the packaged set."""
    lexicons = {}
    for category, filename in LEXICON_FILES.items():
        mode = (
            MatchMode.CASE_SENSITIVE
            if category is EntityCategory.BRAND
            else MatchMode.CASE_INSENSITIVE
        )
        entries = frozenset(read_phrase_file(_read_source(config_dir, filename)))
        lexicons[category] = Lexicon(category=category, entries=entries, match_mode=mode)
    return lexicons


def load_aux_set(filename: str, config_dir: Path | None = None) -> frozenset[str]:
    return frozenset(read_phrase_file(_read_source(config_dir, filename)))
