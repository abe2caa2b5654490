"""Slot-aware inverted index over mentions plus a token index for free text.

Paragraph ordinals are assigned in sorted paragraph-id order, so posting
lists are strictly increasing and slot-only results come back in stable id
order. Every mention contributes one posting under its (category,
normalized value) key; paragraph text, article id and mention spans are kept
alongside so search results can be rendered from the index alone.
"""

import re
from array import array
from collections import Counter
from dataclasses import dataclass, field

from ..categories import EntityCategory
from ..kb import KnowledgeBase
from ..tagger.formula import is_formula

CATEGORIES: tuple[EntityCategory, ...] = tuple(EntityCategory)
_CATEGORY_INDEX = {c: i for i, c in enumerate(CATEGORIES)}

TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Case-folded alphanumeric tokens; formula tokens also kept verbatim."""
    tokens = []
    for m in TOKEN_RE.finditer(text):
        raw = m.group()
        tokens.append(raw.casefold())
        if raw != raw.casefold() and is_formula(raw):
            tokens.append(raw)
    return tokens


@dataclass
class SlotIndex:
    paragraph_ids: list[str]
    article_ids: list[str]
    texts: list[str]
    doc_lengths: array
    slot_keys: dict[tuple[int, str], int]
    slot_postings: list[array]
    mention_spans: list[array]  # per ordinal, flat (start, end, key_id) triples
    token_ids: dict[str, int]
    token_postings: list[array]  # per token, flat (ordinal, tf) pairs
    _pid_to_ordinal: dict[str, int] = field(default_factory=dict, repr=False)
    _keys_by_id: list = field(default_factory=list, repr=False)

    @property
    def n_paragraphs(self) -> int:
        return len(self.paragraph_ids)

    @property
    def avg_doc_length(self) -> float:
        if not self.doc_lengths:
            return 0.0
        return sum(self.doc_lengths) / len(self.doc_lengths)

    def ordinal_of(self, paragraph_id: str) -> int | None:
        if not self._pid_to_ordinal and self.paragraph_ids:
            self._pid_to_ordinal = {pid: i for i, pid in enumerate(self.paragraph_ids)}
        return self._pid_to_ordinal.get(paragraph_id)

    def key_id(self, category: EntityCategory, value: str) -> int | None:
        return self.slot_keys.get((_CATEGORY_INDEX[category], value))

    def key_of(self, key_id: int) -> tuple[int, str]:
        """Inverse of slot_keys: key id back to (category index, value)."""
        if not self._keys_by_id and self.slot_keys:
            by_id: list = [None] * len(self.slot_keys)
            for key, kid in self.slot_keys.items():
                by_id[kid] = key
            self._keys_by_id = by_id
        return self._keys_by_id[key_id]

    def postings_for(self, category: EntityCategory, value: str) -> array:
        kid = self.key_id(category, value)
        return self.slot_postings[kid] if kid is not None else array("I")


def build_index(kb: KnowledgeBase) -> SlotIndex:
    """Deterministically index a validated KB."""
    ordered_pids = sorted(kb.paragraphs)
    pid_to_ordinal = {pid: i for i, pid in enumerate(ordered_pids)}
    texts = [kb.paragraphs[pid].text for pid in ordered_pids]
    article_ids = [kb.paragraphs[pid].article_id for pid in ordered_pids]

    # Slot postings: gather ordinals per (category, normalized value) key,
    # then freeze key ids in sorted key order.
    raw_postings: dict[tuple[int, str], set[int]] = {}
    raw_spans: dict[int, list[tuple[int, int, tuple[int, str]]]] = {}
    for m in kb.mentions:
        ordinal = pid_to_ordinal[m.paragraph_id]
        key = (_CATEGORY_INDEX[m.category], m.normalized)
        raw_postings.setdefault(key, set()).add(ordinal)
        raw_spans.setdefault(ordinal, []).append((m.start, m.end, key))

    slot_keys = {key: kid for kid, key in enumerate(sorted(raw_postings))}
    slot_postings = [array("I", sorted(raw_postings[key])) for key in sorted(raw_postings)]

    mention_spans: list[array] = []
    for ordinal in range(len(ordered_pids)):
        flat = array("I")
        for start, end, key in sorted(
            raw_spans.get(ordinal, ()), key=lambda t: (t[0], t[1], slot_keys[t[2]])
        ):
            flat.extend((start, end, slot_keys[key]))
        mention_spans.append(flat)

    # Token postings with term frequencies for BM25.
    doc_lengths = array("I", [0] * len(ordered_pids))
    raw_tokens: dict[str, list[tuple[int, int]]] = {}
    for ordinal, text in enumerate(texts):
        tokens = tokenize(text)
        doc_lengths[ordinal] = sum(1 for t in tokens if t == t.casefold())
        for token, tf in sorted(Counter(tokens).items()):
            raw_tokens.setdefault(token, []).append((ordinal, tf))

    token_ids = {token: tid for tid, token in enumerate(sorted(raw_tokens))}
    token_postings = []
    for token in sorted(raw_tokens):
        flat = array("I")
        for ordinal, tf in raw_tokens[token]:
            flat.extend((ordinal, tf))
        token_postings.append(flat)

    return SlotIndex(
        paragraph_ids=ordered_pids,
        article_ids=article_ids,
        texts=texts,
        doc_lengths=doc_lengths,
        slot_keys=slot_keys,
        slot_postings=slot_postings,
        mention_spans=mention_spans,
        token_ids=token_ids,
        token_postings=token_postings,
        _pid_to_ordinal=pid_to_ordinal,
    )
