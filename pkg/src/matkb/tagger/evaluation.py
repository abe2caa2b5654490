"""Span-level scoring under the exact-match criterion.

A prediction is correct iff (paragraph_id, start, end, category) all equal a
gold mention. Precision/recall/F1 are micro-averaged, with a per-category
breakdown; duplicate identical spans pair off one-to-one.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from ..categories import EntityCategory
from ..models import EntityMention


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float
    predicted: int
    gold: int
    correct: int


def _prf(correct: int, predicted: int, gold: int) -> PRF:
    precision = correct / predicted if predicted else 0.0
    recall = correct / gold if gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision, recall, f1, predicted, gold, correct)


@dataclass(frozen=True)
class SpanF1Report:
    overall: PRF
    per_category: dict[EntityCategory, PRF]

    def to_dict(self) -> dict:
        def row(p: PRF) -> dict:
            return {
                "precision": p.precision,
                "recall": p.recall,
                "f1": p.f1,
                "predicted": p.predicted,
                "gold": p.gold,
                "correct": p.correct,
            }

        return {
            "overall": row(self.overall),
            "per_category": {c.value: row(p) for c, p in self.per_category.items()},
        }


def eval_span_f1(
    pred: Iterable[EntityMention], gold: Iterable[EntityMention]
) -> SpanF1Report:
    pred_keys = Counter(m.span_key() for m in pred)
    gold_keys = Counter(m.span_key() for m in gold)
    correct = sum(min(n, gold_keys[k]) for k, n in pred_keys.items() if k in gold_keys)

    per_category = {}
    for category in EntityCategory:
        p_n = sum(n for k, n in pred_keys.items() if k[3] is category)
        g_n = sum(n for k, n in gold_keys.items() if k[3] is category)
        c_n = sum(
            min(n, gold_keys[k])
            for k, n in pred_keys.items()
            if k[3] is category and k in gold_keys
        )
        if p_n or g_n:
            per_category[category] = _prf(c_n, p_n, g_n)

    overall = _prf(correct, sum(pred_keys.values()), sum(gold_keys.values()))
    return SpanF1Report(overall=overall, per_category=per_category)
