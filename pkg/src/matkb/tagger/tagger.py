"""Deterministic rule tagger: unit patterns, formula recognizer, gazetteers.

Candidates from the three recognizer classes compete left to right: the
longest span wins, with the earlier recognizer class breaking exact ties.
Accepted mentions never overlap.
"""

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..categories import EntityCategory
from ..models import EntityMention, Paragraph
from .formula import FORMULA_STOPLIST, parse_chemical_formula
from .lexicons import (
    AUX_CONTEXT_FILE,
    AUX_RECIPE_FILE,
    Lexicon,
    load_aux_set,
    load_lexicons,
)
from .normalize import normalize_value
from .patterns import UNIT_PATTERNS

_CLASS_UNIT = 1
_CLASS_FORMULA = 2
_CLASS_LEXICON = 3

_CATEGORY_ORDER = {c: i for i, c in enumerate(EntityCategory)}

_WORD_TOKEN = re.compile(r"[A-Za-z0-9]+")


@dataclass(frozen=True)
class TaggerConfig:
    """Immutable recognizer configuration; shareable across workers."""

    lexicons: dict[EntityCategory, Lexicon]
    recipe_formulas: frozenset[str]
    formula_context_words: frozenset[str]
    _compiled: list = field(init=False, repr=False, compare=False, default_factory=list)

    def __post_init__(self):
        compiled = [
            (cat, self.lexicons[cat].compile())
            for cat in sorted(self.lexicons, key=_CATEGORY_ORDER.__getitem__)
        ]
        object.__setattr__(self, "_compiled", compiled)

    @classmethod
    def load(cls, config_dir: Path | None = None) -> "TaggerConfig":
        return cls(
            lexicons=load_lexicons(config_dir),
            recipe_formulas=load_aux_set(AUX_RECIPE_FILE, config_dir),
            formula_context_words=load_aux_set(AUX_CONTEXT_FILE, config_dir),
        )

    def content_hash(self) -> str:
        """Stable digest of the configuration, recorded as KB provenance."""
        payload = {
            "lexicons": {
                lex.category.value: [sorted(lex.entries), lex.match_mode.value]
                for lex in self.lexicons.values()
            },
            "recipe_formulas": sorted(self.recipe_formulas),
            "formula_context_words": sorted(self.formula_context_words),
        }
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]


def _formula_candidates(text: str, config: TaggerConfig) -> list[tuple[int, int, EntityCategory]]:
    tokens = [(m.start(), m.end(), m.group()) for m in _WORD_TOKEN.finditer(text)]
    parses = [parse_chemical_formula(t, apply_stoplist=False) for _, _, t in tokens]
    plain_accept = [
        parses[i] is not None and tokens[i][2] not in FORMULA_STOPLIST
        for i in range(len(tokens))
    ]

    out = []
    for i, (start, end, token) in enumerate(tokens):
        parts = parses[i]
        if parts is None:
            continue
        if token in FORMULA_STOPLIST:
            # A stoplisted token needs a neighboring formula or a material
            # context word to count ("elemental In", "Ga powders").
            neighbors_ok = any(
                0 <= j < len(tokens)
                and (plain_accept[j] or tokens[j][2].lower() in config.formula_context_words)
                for j in (i - 1, i + 1)
            )
            if not neighbors_ok:
                continue
        if len(parts) == 1 or token in config.recipe_formulas:
            category = EntityCategory.MATERIAL_RECIPE
        else:
            category = EntityCategory.MATERIAL_TARGET
        out.append((start, end, category))
    return out


def tag_paragraph(paragraph: Paragraph, config: TaggerConfig) -> list[EntityMention]:
    """Tag one paragraph. Pure function of (text, config); spans never overlap."""
    text = paragraph.text
    if not text:
        return []

    candidates: list[tuple[int, int, int, int, EntityCategory]] = []
    for category, pattern in UNIT_PATTERNS:
        for m in pattern.finditer(text):
            candidates.append(
                (m.start(), m.end(), _CLASS_UNIT, _CATEGORY_ORDER[category], category)
            )
    for start, end, category in _formula_candidates(text, config):
        candidates.append((start, end, _CLASS_FORMULA, _CATEGORY_ORDER[category], category))
    for category, pattern in config._compiled:
        for m in pattern.finditer(text):
            candidates.append(
                (m.start(), m.end(), _CLASS_LEXICON, _CATEGORY_ORDER[category], category)
            )

    # Earliest start first; at equal starts the longest span, then the
    # earliest recognizer class, then the schema's category order.
    candidates.sort(key=lambda c: (c[0], c[0] - c[1], c[2], c[3]))
    mentions: list[EntityMention] = []
    taken_until = 0
    for start, end, _klass, _order, category in candidates:
        if start < taken_until:
            continue
        surface = text[start:end]
        mentions.append(
            EntityMention(
                paragraph_id=paragraph.paragraph_id,
                start=start,
                end=end,
                category=category,
                surface=surface,
                normalized=normalize_value(surface, category),
            )
        )
        taken_until = end
    return mentions


def tag_corpus(paragraphs, config: TaggerConfig) -> list[EntityMention]:
    mentions = []
    for p in paragraphs:
        mentions.extend(tag_paragraph(p, config))
    return mentions
