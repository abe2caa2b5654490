#!/usr/bin/env python3
"""Regenerate frontend/tests/fixtures/highlight_fixture.json.

Cases carry paragraph text plus mention spans as the server reports them
(offsets in Unicode scalar values). The astral-character cases exist to
catch UTF-16 indexing mistakes in the browser client.
"""

import json
from pathlib import Path

from matkb.ingest import read_paragraphs
from matkb.models import Paragraph
from matkb.tagger import TaggerConfig, tag_paragraph

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures" / "highlight_fixture.json"

EXTRA_TEXTS = [
    # astral char (2 UTF-16 units, 1 scalar) before the mentions
    "\U0001d6fc-Fe2O3 powder was sintered at 700 °C for 24 h",
    "phase \U0001f9ea mixing Co3O4 with ethanol at room temperature",
    "π-phase ZnO annealed under vacuum",
]


def case_from(paragraph: Paragraph, config: TaggerConfig) -> dict | None:
    mentions = tag_paragraph(paragraph, config)
    if len(mentions) < 2:
        return None
    return {
        "text": paragraph.text,
        "spans": [
            {"start": m.start, "end": m.end, "category": m.category.value, "surface": m.surface}
            for m in mentions
        ],
    }


def main():
    config = TaggerConfig.load()
    cases = []
    for i, text in enumerate(EXTRA_TEXTS):
        case = case_from(Paragraph(f"x#{i}", "x", text), config)
        assert case, f"extra text produced <2 mentions: {text!r}"
        cases.append(case)
    for paragraph in read_paragraphs(ROOT / "tests" / "fixtures" / "synthesis_corpus.jsonl")[:40]:
        case = case_from(paragraph, config)
        if case:
            cases.append(case)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"cases": cases}, ensure_ascii=False, indent=2) + "\n", "utf-8")
    print(f"wrote {len(cases)} cases -> {OUT}")


if __name__ == "__main__":
    main()
