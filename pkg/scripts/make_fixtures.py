#!/usr/bin/env python3
"""Regenerate the committed test fixtures (deterministic, seeded).

* recall_corpus.jsonl / recall_gold.txt: 290 gold paragraphs of which exactly
  230 contain filter phrases, for the recall protocol.
* synthesis_corpus.jsonl: ~600 paragraphs of synthesis-style text fed through
  the real ingest path (including degree-sign and whitespace variants).
"""

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from matkb.filtering import apply_filter, load_rules
from matkb.ingest import ingest_corpus, paragraph_to_record
from matkb.models import Paragraph

import synth

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

POSITIVE_TEMPLATES = [
    "In this work {phrase} following the standard route and characterized afterwards.",
    "As reported previously, {phrase} and the product was examined by diffraction.",
    "{phrase} from high-purity starting reagents inside a glove box.",
    "For each composition {phrase}, then the furnace was switched off.",
]
S2_TEMPLATES = [
    "Polycrystalline specimens of the target phase {phrase} by solid-state reaction.",
    "The polycrystalline batch {phrase} after several regrinding steps.",
    "High-density polycrystalline ceramics {phrase} under flowing argon.",
]
NEGATIVE_SENTENCES = [
    "We measured the resistivity of the single crystal between 2 K and 300 K.",
    "The band structure calculation employed a plane-wave basis set.",
    "Magnetization curves show a clear hysteresis loop at low field.",
    "X-ray diffraction patterns match the reference card without extra peaks.",
    "The specific heat anomaly confirms the bulk nature of the transition.",
    "Optical conductivity spectra reveal a narrow Drude peak at low energy.",
    "Transport measurements employed a standard four-probe configuration.",
    "The thermal expansion coefficient decreases monotonically on heating.",
    "Neutron scattering intensity maps show no sign of secondary phases.",
    "Electron microscopy images display well-connected micron-sized domains.",
    "Raman spectra exhibit the modes expected for the tetragonal cell.",
    "Density functional theory reproduces the observed lattice constants.",
]


def random_case(rng: random.Random, phrase: str) -> str:
    mode = rng.randrange(3)
    if mode == 0:
        return phrase
    if mode == 1:
        return phrase.upper()
    return phrase.capitalize()


def make_recall_fixture(rng: random.Random) -> None:
    rules = load_rules()
    paragraphs = []

    for i in range(230):
        if rng.random() < 0.6:
            phrase = rules.strategy1_phrases[rng.randrange(len(rules.strategy1_phrases))]
            template = POSITIVE_TEMPLATES[rng.randrange(len(POSITIVE_TEMPLATES))]
        else:
            phrase = rules.strategy2_phrases[rng.randrange(len(rules.strategy2_phrases))]
            template = S2_TEMPLATES[rng.randrange(len(S2_TEMPLATES))]
        text = template.format(phrase=random_case(rng, phrase))
        paragraphs.append(text)

    for i in range(60):
        text = NEGATIVE_SENTENCES[i % len(NEGATIVE_SENTENCES)]
        text += f" Sample batch {i:03d} was measured twice."
        paragraphs.append(text)

    rng.shuffle(paragraphs)

    records = []
    gold_ids = []
    kept = 0
    for i, text in enumerate(paragraphs):
        pid = f"G{i // 5:03d}#{i % 5}"
        p = Paragraph(paragraph_id=pid, article_id=pid.split("#")[0], text=text)
        decision = apply_filter(p, rules)
        kept += decision.kept
        records.append(p)
        gold_ids.append(pid)
    assert kept == 230, f"expected exactly 230 kept, got {kept}"

    with open(OUT / "recall_corpus.jsonl", "w", encoding="utf-8") as fh:
        for p in records:
            fh.write(json.dumps(paragraph_to_record(p), ensure_ascii=False) + "\n")
    (OUT / "recall_gold.txt").write_text("\n".join(gold_ids) + "\n", encoding="utf-8")
    print(f"recall fixture: {len(records)} paragraphs, {kept} kept")


SYNTH_BODIES = [
    "{d} {t} samples were synthesized from {r} and {r2} powders. The mixture was "
    "{op} in a {dev} at {temp} for {time} under {press}.",
    "Stoichiometric amounts of {r} ({brand}) were {op} and heated to {temp} at "
    "{rate}. After {time} the product {t} formed as {d} grains.",
    "The precursor {r} was dissolved in {sol}, dried, and {op}. Final sintering "
    "took place at {temp} for {time} in {press}.",
    "{t} pellets were {op} twice, with intermediate grinding, at {temp} ({time}, "
    "{press}); the cooling followed a {rate} profile down to room temperature.",
]


def make_synthesis_corpus(rng: random.Random, n_paragraphs: int = 600) -> None:
    # Raw bodies include degree-sign variants that ingest must canonicalize.
    def temp():
        value = rng.choice(["700", "800", "900", "1000", "1100", "600", "450"])
        style = rng.randrange(3)
        if style == 0:
            return f"{value} °C"
        if style == 1:
            return f"{value}℃"
        return f"{value}° C"

    articles = []
    per_article = 4
    n_articles = (n_paragraphs + per_article - 1) // per_article
    count = 0
    for a in range(n_articles):
        blocks = []
        for _ in range(min(per_article, n_paragraphs - count)):
            body = rng.choice(SYNTH_BODIES).format(
                d=rng.choice(synth.DESCRIPTORS),
                t=rng.choice(synth.FORMULA_TARGETS),
                r=rng.choice(synth.FORMULA_RECIPES),
                r2=rng.choice(synth.FORMULA_RECIPES),
                op=rng.choice(synth.OPERATIONS),
                dev=rng.choice(synth.DEVICES),
                temp=temp(),
                time=rng.choice(synth.TIMES),
                press=rng.choice(synth.PRESSURES),
                rate=rng.choice(["1 K/min", "2 K/min", "5 K/min"]),
                brand=rng.choice(synth.BRANDS),
                sol=rng.choice(synth.OTHERS),
            )
            blocks.append(body)
            count += 1
        articles.append(
            {
                "article_id": f"S{a:04d}",
                "title": f"Synthesis study {a}",
                "venue": "Journal of Fixture Materials",
                "year": 2000 + a % 25,
                "body_text": "\n\n".join(blocks),
            }
        )

    lines = [json.dumps(a, ensure_ascii=False) for a in articles]
    result = ingest_corpus(lines)
    assert not result.report, result.report
    paragraphs = result.paragraphs()
    assert len(paragraphs) == n_paragraphs

    with open(OUT / "synthesis_corpus.jsonl", "w", encoding="utf-8") as fh:
        for p in paragraphs:
            fh.write(json.dumps(paragraph_to_record(p), ensure_ascii=False) + "\n")
    with open(OUT / "synthesis_articles.jsonl", "w", encoding="utf-8") as fh:
        for a in articles:
            meta = {k: a[k] for k in ("article_id", "title", "venue", "year")}
            fh.write(json.dumps(meta, ensure_ascii=False) + "\n")
    print(f"synthesis corpus: {len(paragraphs)} paragraphs")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    make_recall_fixture(random.Random(20240229))
    make_synthesis_corpus(random.Random(7))


if __name__ == "__main__":
    main()
