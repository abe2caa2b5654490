"""Key-phrase relevance filter over paragraphs, plus the recall protocol.

Two strategies decide whether a paragraph describes synthesis work:

* S1 keeps a paragraph when any phrase from the primary list occurs in it.
* S2 keeps a paragraph when a gate term ("polycrystalline") occurs together
  with any verb phrase from the secondary list.

Matching is case-insensitive plain substring containment; a paragraph is kept
when either strategy fires, with S1 reported when both do.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Iterable

from .ingest import normalize_text
from .models import Paragraph


class Strategy(str, Enum):
    S1 = "S1"
    S2 = "S2"
    NONE = "none"


@dataclass(frozen=True)
class FilterRuleSet:
    strategy1_phrases: tuple[str, ...]
    strategy2_gate_terms: tuple[str, ...]
    strategy2_phrases: tuple[str, ...]
    version: str = "v1"

    def __post_init__(self):
        for name in ("strategy1_phrases", "strategy2_gate_terms", "strategy2_phrases"):
            for phrase in getattr(self, name):
                if not phrase or normalize_text(phrase) != phrase:
                    raise ValueError(f"{name} entry not whitespace-normalized: {phrase!r}")


@dataclass(frozen=True)
class FilterDecision:
    paragraph_id: str
    kept: bool
    matched_strategy: Strategy
    matched_phrases: tuple[str, ...] = field(default_factory=tuple)


def load_rules(path=None) -> FilterRuleSet:
    """Load a rule set; defaults to the packaged filter_rules.v1.json."""
    if path is None:
        data = json.loads(
            (resources.files("matkb") / "data" / "filter_rules.v1.json").read_text("utf-8")
        )
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    return FilterRuleSet(
        strategy1_phrases=tuple(data["strategy1_phrases"]),
        strategy2_gate_terms=tuple(data["strategy2_gate_terms"]),
        strategy2_phrases=tuple(data["strategy2_phrases"]),
        version=data.get("version", "v1"),
    )


def apply_filter(paragraph: Paragraph, rules: FilterRuleSet) -> FilterDecision:
    """Decide one paragraph. Assumes the text is already normalized."""
    text = paragraph.text.lower()
    s1_hits = tuple(p for p in rules.strategy1_phrases if p.lower() in text)
    s2_hits: tuple[str, ...] = ()
    if any(g.lower() in text for g in rules.strategy2_gate_terms):
        s2_hits = tuple(p for p in rules.strategy2_phrases if p.lower() in text)

    if s1_hits:
        strategy = Strategy.S1
    elif s2_hits:
        strategy = Strategy.S2
    else:
        strategy = Strategy.NONE
    return FilterDecision(
        paragraph_id=paragraph.paragraph_id,
        kept=strategy is not Strategy.NONE,
        matched_strategy=strategy,
        matched_phrases=s1_hits + s2_hits,
    )


def filter_corpus(corpus: Iterable[Paragraph], rules: FilterRuleSet) -> list[FilterDecision]:
    return [apply_filter(p, rules) for p in corpus]


@dataclass(frozen=True)
class RecallReport:
    retrieved_relevant: int
    gold_total: int

    @property
    def recall(self) -> Fraction:
        return Fraction(self.retrieved_relevant, self.gold_total)

    def to_dict(self) -> dict:
        # the ratio is reported unreduced: "230/290", not "23/29"
        recall = self.recall
        return {
            "retrieved_relevant": self.retrieved_relevant,
            "gold_total": self.gold_total,
            "recall": f"{self.retrieved_relevant}/{self.gold_total}",
            "recall_decimal": round(float(recall), 4),
            "recall_percent": f"{float(recall) * 100:.1f}%",
        }


def eval_recall(decisions: Iterable[FilterDecision], gold_relevant: set[str]) -> RecallReport:
    """Fraction of gold-relevant paragraph ids retained by the filter."""
    if not gold_relevant:
        raise ValueError("gold set is empty; recall is undefined")
    kept = {d.paragraph_id for d in decisions if d.kept}
    return RecallReport(
        retrieved_relevant=len(gold_relevant & kept),
        gold_total=len(gold_relevant),
    )


def decision_to_record(decision: FilterDecision) -> dict:
    return {
        "paragraph_id": decision.paragraph_id,
        "kept": decision.kept,
        "matched_strategy": decision.matched_strategy.value,
        "matched_phrases": list(decision.matched_phrases),
    }


def read_decisions(path) -> list[FilterDecision]:
    decisions = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            decisions.append(
                FilterDecision(
                    paragraph_id=obj["paragraph_id"],
                    kept=obj["kept"],
                    matched_strategy=Strategy(obj["matched_strategy"]),
                    matched_phrases=tuple(obj.get("matched_phrases", ())),
                )
            )
    return decisions


def kept_article_ids(decisions: Iterable[FilterDecision]) -> list[str]:
    """Articles with at least one kept paragraph, in first-kept order."""
    seen: dict[str, None] = {}
    for d in decisions:
        if d.kept:
            seen.setdefault(d.paragraph_id.rsplit("#", 1)[0], None)
    return list(seen)
