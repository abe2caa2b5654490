"""Query evaluation: conjunctive slot constraints, BM25-ranked free text.

The candidate set is the intersection of the slot posting lists (smallest
list first, galloping lookups when one list dwarfs another). Free text then
scores candidates with BM25 (k1=1.2, b=0.75), keeping only paragraphs that
match at least one query token; slot-only queries score 1.0 in paragraph-id
order.
"""

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Sequence

from ..categories import EntityCategory, resolve_slot
from ..tagger.formula import is_formula
from ..tagger.normalize import normalize_value
from .build import CATEGORIES, TOKEN_RE, SlotIndex
from .queryparse import SlotQuery

BM25_K1 = 1.2
BM25_B = 0.75

# Lists longer than this factor times the running intersection are probed by
# galloping search instead of merged linearly.
GALLOP_RATIO = 8


@dataclass(frozen=True)
class Highlight:
    start: int
    end: int
    category: EntityCategory


@dataclass(frozen=True)
class SearchResult:
    paragraph_id: str
    article_id: str
    score: float
    snippet: str
    highlights: tuple[Highlight, ...]


@dataclass(frozen=True)
class SearchPage:
    total: int
    results: tuple[SearchResult, ...]


def _linear_intersect(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            out.append(x)
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return out


def _gallop_intersect(small: Sequence[int], large: Sequence[int]) -> list[int]:
    out = []
    lo = 0
    n = len(large)
    for x in small:
        # Exponential probe from the last cursor, then binary search inside.
        step = 1
        hi = lo
        while hi < n and large[hi] < x:
            hi = lo + step
            step *= 2
        pos = bisect_left(large, x, lo, min(hi + 1, n))
        if pos < n and large[pos] == x:
            out.append(x)
        lo = pos
        if lo >= n:
            break
    return out


def intersect_postings(lists: list[Sequence[int]]) -> list[int]:
    """Intersect sorted unique ordinal lists, smallest first."""
    if not lists:
        return []
    ordered = sorted(lists, key=len)
    result: Sequence[int] = ordered[0]
    for other in ordered[1:]:
        if not result:
            break
        if len(other) > GALLOP_RATIO * len(result):
            result = _gallop_intersect(result, other)
        else:
            result = _linear_intersect(result, other)
    return list(result)


def _query_tokens(index: SlotIndex, text: str) -> list[str]:
    """Query tokens fold like document tokens, except that a formula-shaped
    token searches its verbatim form when the index has it."""
    out = []
    for m in TOKEN_RE.finditer(text):
        raw = m.group()
        folded = raw.casefold()
        if raw != folded and raw in index.token_ids and is_formula(raw):
            out.append(raw)
        else:
            out.append(folded)
    return out


def _bm25_scores(
    index: SlotIndex, tokens: list[str], restrict: list[int] | None
) -> dict[int, float]:
    """Accumulated BM25 per ordinal, over paragraphs matching ≥1 token."""
    n_docs = index.n_paragraphs
    avgdl = index.avg_doc_length or 1.0
    restrict_set = set(restrict) if restrict is not None else None

    scores: dict[int, float] = {}
    for token in dict.fromkeys(tokens):
        tid = index.token_ids.get(token)
        if tid is None:
            continue
        flat = index.token_postings[tid]
        df = len(flat) // 2
        idf = math.log(1.0 + (n_docs - df + 0.5) / (df + 0.5))
        for k in range(0, len(flat), 2):
            ordinal, tf = flat[k], flat[k + 1]
            if restrict_set is not None and ordinal not in restrict_set:
                continue
            dl = index.doc_lengths[ordinal]
            denom = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / avgdl)
            scores[ordinal] = scores.get(ordinal, 0.0) + idf * tf * (BM25_K1 + 1.0) / denom
    return scores


def _resolve_constraints(index: SlotIndex, query: SlotQuery) -> list[tuple[EntityCategory, str, int | None]]:
    resolved = []
    for name, value in query.slot_constraints:
        category = resolve_slot(name)  # raises UnknownSlotError
        normalized = normalize_value(value, category)
        resolved.append((category, normalized, index.key_id(category, normalized)))
    return resolved


def execute(index: SlotIndex, query: SlotQuery) -> SearchPage:
    """Run a query and return one page of results plus the total match count."""
    constraints = _resolve_constraints(index, query)

    candidates: list[int] | None = None
    if constraints:
        if any(kid is None for _, _, kid in constraints):
            return SearchPage(total=0, results=())
        candidates = intersect_postings(
            [index.slot_postings[kid] for _, _, kid in constraints]
        )

    free_text = (query.free_text or "").strip()
    if free_text:
        scores = _bm25_scores(index, _query_tokens(index, free_text), candidates)
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], index.paragraph_ids[kv[0]]))
    else:
        ranked = [(ordinal, 1.0) for ordinal in (candidates or [])]

    total = len(ranked)
    page = ranked[query.offset : query.offset + query.limit]
    key_ids = {kid for _, _, kid in constraints if kid is not None}
    results = tuple(_build_result(index, ordinal, score, key_ids) for ordinal, score in page)
    return SearchPage(total=total, results=results)


def _build_result(
    index: SlotIndex, ordinal: int, score: float, key_ids: set[int]
) -> SearchResult:
    highlights = []
    flat = index.mention_spans[ordinal]
    for k in range(0, len(flat), 3):
        start, end, kid = flat[k], flat[k + 1], flat[k + 2]
        if kid in key_ids:
            cat_idx, _ = index.key_of(kid)
            highlights.append(Highlight(start=start, end=end, category=CATEGORIES[cat_idx]))
    return SearchResult(
        paragraph_id=index.paragraph_ids[ordinal],
        article_id=index.article_ids[ordinal],
        score=score,
        snippet=index.texts[ordinal],
        highlights=tuple(highlights),
    )
