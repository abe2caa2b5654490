"""Acceptance suite: one test per release criterion, at pinned tolerances.

Each test prints a `[PASS]`/`[FAIL]` line straight to the terminal (bypassing
capture) so a full run reads as a checklist.
"""

import json
import random
import re
import statistics
import time
from contextlib import contextmanager
from urllib.parse import quote_plus

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

import synth
from matkb.categories import EntityCategory as C
from matkb.cli import main as cli_main
from matkb.filtering import apply_filter, load_rules
from matkb.index import SlotQuery, build_index, dump_index, execute, parse_query, save_index
from matkb.ingest import read_paragraphs
from matkb.kb import KnowledgeBase, compute_stats, load_kb, mentions_to_jsonl, save_kb
from matkb.models import EntityMention, Paragraph
from matkb.service import ApiConfig, create_app
from matkb.tagger import (
    ELEMENT_SYMBOLS,
    TaggerConfig,
    eval_span_f1,
    parse_chemical_formula,
    tag_paragraph,
)
from matkb.tagger.normalize import normalize_value


@pytest.fixture()
def criterion(capsys):
    @contextmanager
    def _report(name):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"[FAIL] {name}")
            raise
        with capsys.disabled():
            print(f"[PASS] {name}")

    return _report


# --- filter ---------------------------------------------------------------


def test_criterion_filter_recall_protocol(criterion, fixtures_dir, tmp_path):
    with criterion("filter recall protocol: 230/290 -> 79.3%, < 1 s"):
        runner = CliRunner()
        work = tmp_path / "flt"
        r = runner.invoke(
            cli_main,
            ["filter", "--corpus", str(fixtures_dir / "recall_corpus.jsonl"), "--out", str(work)],
        )
        assert r.exit_code == 0, r.output

        start = time.perf_counter()
        r = runner.invoke(
            cli_main,
            [
                "eval-recall",
                "--decisions", str(work / "filter_decisions.jsonl"),
                "--gold", str(fixtures_dir / "recall_gold.txt"),
                "--json",
            ],
        )
        elapsed = time.perf_counter() - start
        assert r.exit_code == 0, r.output
        payload = json.loads(r.output)
        assert payload["recall"] == "230/290"
        assert payload["retrieved_relevant"] == 230
        assert payload["gold_total"] == 290
        assert payload["recall_percent"] == "79.3%"
        assert elapsed < 1.0, f"eval-recall took {elapsed:.3f}s"


def test_criterion_filter_oracle_equivalence(criterion):
    with criterion("filter oracle equivalence on 10,000 randomized paragraphs"):
        rules = load_rules()
        every_phrase = (
            rules.strategy1_phrases + rules.strategy2_phrases + rules.strategy2_gate_terms
        )
        vocab = (
            "the sample was then cooled and reground before further analysis "
            "measurements show a clean phase diagram under applied field"
        ).split()
        rng = random.Random(271828)

        def one_paragraph():
            words = [vocab[rng.randrange(len(vocab))] for _ in range(rng.randint(0, 14))]
            for _ in range(rng.randint(0, 2)):
                phrase = every_phrase[rng.randrange(len(every_phrase))]
                mode = rng.randrange(4)
                if mode == 1:
                    phrase = phrase.upper()
                elif mode == 2:
                    phrase = phrase.capitalize()
                elif mode == 3:
                    phrase = phrase.title()
                words.insert(rng.randint(0, len(words)), phrase)
            return " ".join(words)

        def oracle(text):
            low = text.lower()
            if any(p.lower() in low for p in rules.strategy1_phrases):
                return True
            if any(g.lower() in low for g in rules.strategy2_gate_terms):
                return any(p.lower() in low for p in rules.strategy2_phrases)
            return False

        mismatches = 0
        for i in range(10_000):
            text = one_paragraph()
            decision = apply_filter(Paragraph(f"r#{i}", "r", text), rules)
            mismatches += decision.kept != oracle(text)
        assert mismatches == 0


# --- tagger ----------------------------------------------------------------


def test_criterion_tagger_span_validity_and_determinism(criterion, fixtures_dir, tagger_config):
    with criterion("tagger span validity + determinism over bundled corpus"):
        paragraphs = read_paragraphs(fixtures_dir / "synthesis_corpus.jsonl")
        assert len(paragraphs) >= 500

        def run():
            return mentions_to_jsonl(
                m for p in paragraphs for m in tag_paragraph(p, tagger_config)
            )

        first, second = run(), run()
        assert first.encode("utf-8") == second.encode("utf-8")
        total = 0
        by_pid = {p.paragraph_id: p.text for p in paragraphs}
        for line in first.splitlines():
            m = json.loads(line)
            text = by_pid[m["paragraph_id"]]
            assert text[m["start"] : m["end"]] == m["surface"]
            total += 1
        assert total > 0


def test_criterion_formula_parser(criterion):
    with criterion("formula parser: catalog examples accepted, 100 non-formulas rejected"):
        for token in ["SiC", "FeSe", "ZnO", "LaFeAsO", "Co3O4", "Li2Co3", "Al", "Si", "Ga", "Zn"]:
            assert parse_chemical_formula(token) is not None, token

        # independent oracle: regex over the element table, longest-first
        oracle = re.compile(
            r"^(?:(?:%s)(?:[1-9][0-9]*)?)+$"
            % "|".join(sorted(ELEMENT_SYMBOLS, key=lambda s: (-len(s), s)))
        )
        rng = random.Random(1009)
        alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-()"
        rejected = 0
        while rejected < 100:
            token = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 10)))
            if oracle.match(token):
                continue  # oracle says formula-shaped; not a rejection case
            assert parse_chemical_formula(token) is None, token
            rejected += 1
        assert rejected == 100


def test_criterion_span_f1_harness(criterion):
    with criterion("span-F1: P=0.75 R=0.5 F1=0.6 exact + swap symmetry x1000"):
        gold = [
            EntityMention("p#0", i * 10, i * 10 + 4, C.OPERATION, "gggg", "gggg")
            for i in range(6)
        ]
        pred = gold[:3] + [EntityMention("p#0", 777, 781, C.OPERATION, "gggg", "gggg")]
        report = eval_span_f1(pred, gold)
        assert report.overall.precision == 0.75
        assert report.overall.recall == 0.5
        assert report.overall.f1 == 0.6

        cats = list(C)
        rng = random.Random(31337)

        def random_side():
            out = []
            for _ in range(rng.randrange(0, 10)):
                start = rng.randrange(0, 120)
                cat = cats[rng.randrange(len(cats))]
                out.append(
                    EntityMention(
                        f"p#{rng.randrange(4)}", start, start + rng.randrange(1, 6), cat, "s", "s"
                    )
                )
            return out

        for _ in range(1000):
            a, b = random_side(), random_side()
            fwd, rev = eval_span_f1(a, b), eval_span_f1(b, a)
            assert fwd.overall.precision == rev.overall.recall
            assert fwd.overall.recall == rev.overall.precision
            assert abs(fwd.overall.f1 - rev.overall.f1) < 1e-12


# --- kb / stats -------------------------------------------------------------


def test_criterion_stats_oracle(criterion):
    with criterion("stats equal independent group-by up to 10k mentions"):
        kb = synth.gen_kb(950, seed=77, mention_slots=10)
        assert len(kb.mentions) <= 10_000

        counts: dict = {}
        uniques: dict = {}
        for m in kb.mentions:
            counts[m.category] = counts.get(m.category, 0) + 1
            uniques.setdefault(m.category, set()).add(m.normalized)

        report = compute_stats(kb)
        for row in report.rows:
            assert row.count == counts.get(row.category, 0)
            assert row.unique_count == len(uniques.get(row.category, set()))
        assert report.total_count == len(kb.mentions)
        assert report.total_unique == sum(len(v) for v in uniques.values())


def test_criterion_kb_round_trip(criterion, tmp_path):
    with criterion("KB save/load/save byte-identical; flipped byte rejected"):
        kb = synth.gen_kb(80, seed=13, mention_slots=6)
        kb.articles = {"art00000": {"title": "t", "venue": "v", "year": 2001}}
        d1, d2 = tmp_path / "one", tmp_path / "two"
        save_kb(kb, d1)
        save_kb(load_kb(d1), d2)
        for name in ("paragraphs.jsonl", "mentions.jsonl", "articles.jsonl", "manifest.json"):
            assert (d1 / name).read_bytes() == (d2 / name).read_bytes(), name

        corrupted = bytearray((d1 / "mentions.jsonl").read_bytes())
        corrupted[11] ^= 0x01
        (d1 / "mentions.jsonl").write_bytes(bytes(corrupted))
        from matkb.kb import KBLoadError

        with pytest.raises(KBLoadError, match="checksum mismatch"):
            load_kb(d1)


# --- index / query ----------------------------------------------------------


@pytest.fixture(scope="module")
def query_kb():
    kb = synth.gen_kb(1000, seed=2024, mention_slots=8)
    return kb, build_index(kb)


def test_criterion_query_correctness(criterion, query_kb):
    with criterion("200 random slot conjunctions equal brute force on 1k-paragraph KB"):
        kb, idx = query_kb
        keys = sorted({(m.category, m.normalized) for m in kb.mentions})
        rng = random.Random(55)
        for _ in range(200):
            constraints = rng.sample(keys, rng.randint(1, 3))
            expected = synth.brute_force_slot_search(kb, constraints)
            page = execute(
                idx,
                SlotQuery(
                    slot_constraints=tuple((c.value, v) for c, v in constraints),
                    limit=len(kb.paragraphs) + 1,
                ),
            )
            assert [r.paragraph_id for r in page.results] == expected

        # the three published query patterns, via the figure-style aliases
        named = [
            ("Material_recipe:Co3O4", [(C.MATERIAL_RECIPE, "Co3O4")]),
            ('Material_temperature:"700 °C"', [(C.PROPERTY_TEMPERATURE, "700 °C")]),
            (
                'Material_temperature:"1000 °C" Material_recipe:Li2Co3',
                [(C.PROPERTY_TEMPERATURE, "1000 °C"), (C.MATERIAL_RECIPE, "Li2Co3")],
            ),
        ]
        for text, constraints in named:
            parsed = parse_query(text)
            page = execute(
                idx,
                SlotQuery(
                    slot_constraints=parsed.slot_constraints,
                    free_text=parsed.free_text,
                    limit=len(kb.paragraphs) + 1,
                ),
            )
            expected = synth.brute_force_slot_search(kb, constraints)
            assert [r.paragraph_id for r in page.results] == expected
            assert expected, f"named pattern {text!r} should match something"


def test_criterion_normalization_equivalence(criterion, query_kb):
    with criterion('queries "700°C" and "700 °C" return identical results'):
        _, idx = query_kb
        tight = execute(idx, parse_query("Property-temperature:700°C"))
        spaced = execute(idx, parse_query('Property-temperature:"700 °C"'))
        assert tight == spaced
        assert tight.total > 0


# --- service ----------------------------------------------------------------


def test_criterion_api_cli_equivalence(criterion, query_kb, tmp_path):
    with criterion("50 random queries: /api/search equals matkb query"):
        kb, idx = query_kb
        index_path = tmp_path / "index.bin"
        save_index(idx, index_path)

        client = TestClient(create_app(index=idx, kb=kb))
        runner = CliRunner()
        keys = sorted({(m.category, m.normalized) for m in kb.mentions})
        rng = random.Random(404)
        for _ in range(50):
            constraints = rng.sample(keys, rng.randint(1, 3))
            q = " ".join(
                f'{c.value}:"{v}"' if any(ch.isspace() for ch in v) else f"{c.value}:{v}"
                for c, v in constraints
            )
            cli = runner.invoke(
                cli_main,
                ["query", "--index", str(index_path), q, "--limit", "25"],
            )
            assert cli.exit_code == 0, cli.output
            cli_ids = [json.loads(line)["paragraph_id"] for line in cli.output.strip().splitlines() if line]

            api = client.get("/api/search", params={"q": q, "limit": 25}).json()
            api_ids = [r["paragraph_id"] for r in api["results"]]
            assert api_ids == cli_ids, q


# --- secondary: browser client contract --------------------------------------


def _frontend_fixture(name):
    from pathlib import Path

    return Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures" / name


def test_criterion_query_builder_round_trip(criterion):
    with criterion("secondary: builder state grid parses server-side; fixture spans valid"):
        grid = json.loads(_frontend_fixture("query_grid.json").read_text("utf-8"))
        queries = grid["queries"]
        assert len(queries) >= 300
        for q in queries:
            parsed = parse_query(q)  # must not raise
            parsed.canonical()  # every slot name resolves
        # builder-emitted clause values survive the trip intact
        sample = parse_query('Property-temperature:"1000 °C" Material-recipe:Li2Co3')
        assert sample.slot_constraints[0] == ("Property-temperature", "1000 °C")

        fixture = json.loads(_frontend_fixture("highlight_fixture.json").read_text("utf-8"))
        assert len(fixture["cases"]) >= 20
        for case in fixture["cases"]:
            text = case["text"]
            for span in case["spans"]:
                assert text[span["start"] : span["end"]] == span["surface"]


# --- performance ------------------------------------------------------------


def test_criterion_performance(criterion):
    with criterion("100k paragraphs / 1M mentions: build < 60 s, median query < 10 ms"):
        kb = synth.gen_kb(100_000, seed=5, mention_slots=12)
        assert len(kb.mentions) >= 1_000_000

        start = time.perf_counter()
        idx = build_index(kb)
        build_seconds = time.perf_counter() - start
        assert build_seconds < 60.0, f"index build took {build_seconds:.1f}s"

        keys = sorted({(m.category, m.normalized) for m in kb.mentions})
        rng = random.Random(8080)
        latencies = []
        for _ in range(200):
            constraints = rng.sample(keys, rng.randint(2, 3))
            query = SlotQuery(
                slot_constraints=tuple((c.value, v) for c, v in constraints), limit=10
            )
            t0 = time.perf_counter()
            execute(idx, query)
            latencies.append(time.perf_counter() - t0)
        median_ms = statistics.median(latencies) * 1000
        assert median_ms < 10.0, f"median slot-conjunction latency {median_ms:.2f} ms"
