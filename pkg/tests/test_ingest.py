import io
import json

import pytest
from hypothesis import given, strategies as st

from matkb.ingest import (
    DuplicateArticleError,
    article_to_record,
    ingest_corpus,
    normalize_text,
    segment_paragraphs,
)


def test_segment_blank_line_runs():
    assert segment_paragraphs("a\n\nb\n\n\nc") == ["a", "b", "c"]


def test_segment_whitespace_only():
    assert segment_paragraphs("   ") == []


def test_segment_counts_on_large_text():
    # 8 blocks separated by 7 blank-line runs, each block ~1.3 KiB.
    blocks = [f"block {i} " + ("lorem ipsum " * 110) for i in range(8)]
    text = "\n\n".join(blocks)
    assert len(text) > 10 * 1024
    segments = segment_paragraphs(text)
    assert len(segments) == 8
    assert [s.split()[1] for s in segments] == [str(i) for i in range(8)]


def test_normalize_collapses_whitespace_and_nfc():
    assert normalize_text("  a\t\tb\n c  ") == "a b c"
    # NFC: decomposed e + combining acute collapses to a single codepoint
    assert normalize_text("é") == "é"


def test_normalize_degree_variants():
    assert normalize_text("700℃") == "700°C"
    assert normalize_text("700 ℃") == "700 °C"
    assert normalize_text("700° C") == "700°C"
    assert normalize_text("quenched from 900° C rapidly") == "quenched from 900°C rapidly"


def _line(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def test_ingest_body_text_blocks():
    record = {"article_id": "A1", "body_text": "one\n\ntwo\n\n\nthree"}
    result = ingest_corpus([_line(record)])
    assert not result.report
    (article,) = result.articles
    assert [p.paragraph_id for p in article.paragraphs] == ["A1#0", "A1#1", "A1#2"]
    assert [p.text for p in article.paragraphs] == ["one", "two", "three"]


def test_ingest_presegmented_paragraphs():
    record = {"article_id": "A1", "paragraphs": ["  one ", "", "two"], "year": 1999}
    result = ingest_corpus([_line(record)])
    (article,) = result.articles
    # empty segment dropped, ordinals stay consecutive
    assert [p.paragraph_id for p in article.paragraphs] == ["A1#0", "A1#1"]
    assert article.year == 1999


def test_ingest_empty_stream():
    result = ingest_corpus(io.StringIO(""))
    assert result.articles == []
    assert result.report == []


def test_ingest_malformed_line_reported_and_skipped():
    lines = [
        _line({"article_id": "A1", "body_text": "x"}),
        _line({"article_id": "A2", "body_text": "y"}),
        "{this is not json",
        _line({"article_id": "A4", "body_text": "z"}),
        _line({"article_id": "A5", "paragraphs": ["w"]}),
    ]
    result = ingest_corpus(lines)
    assert [a.article_id for a in result.articles] == ["A1", "A2", "A4", "A5"]
    assert [issue.line for issue in result.report] == [3]


@pytest.mark.parametrize(
    "bad",
    [
        {"body_text": "no id"},
        {"article_id": "", "body_text": "x"},
        {"article_id": "A", "body_text": 5},
        {"article_id": "A"},
        {"article_id": "A", "paragraphs": "not a list"},
        {"article_id": "A", "paragraphs": ["ok"], "year": "1999"},
    ],
)
def test_ingest_rejects_malformed_records(bad):
    result = ingest_corpus([_line(bad)])
    assert result.articles == []
    assert len(result.report) == 1


def test_duplicate_article_id_is_hard_error():
    lines = [
        _line({"article_id": "A1", "body_text": "x"}),
        _line({"article_id": "A1", "body_text": "y"}),
    ]
    with pytest.raises(DuplicateArticleError) as exc:
        ingest_corpus(lines)
    assert exc.value.first_line == 1
    assert exc.value.second_line == 2
    assert "A1" in str(exc.value)


_article_records = st.lists(
    st.fixed_dictionaries(
        {
            "article_id": st.uuids().map(lambda u: f"A{u.hex[:8]}"),
            "body_text": st.text(
                alphabet=st.sampled_from("ab cd\nef℃ °C g"), min_size=1, max_size=80
            ),
        }
    ),
    max_size=8,
    unique_by=lambda r: r["article_id"],
)


@given(_article_records)
def test_ingest_idempotent_over_own_output(records):
    first = ingest_corpus([_line(r) for r in records])
    reserialized = [_line(article_to_record(a)) for a in first.articles]
    second = ingest_corpus(reserialized)
    assert second.report == []
    assert [article_to_record(a) for a in second.articles] == [
        article_to_record(a) for a in first.articles
    ]


def test_ingest_deterministic(fixtures_dir):
    lines = (fixtures_dir / "recall_corpus.jsonl").read_text("utf-8").splitlines()
    # paragraphs.jsonl-style lines are not article records; build articles instead
    records = [
        _line({"article_id": f"R{i}", "body_text": json.loads(line)["text"]})
        for i, line in enumerate(lines[:50])
    ]
    a = ingest_corpus(records)
    b = ingest_corpus(records)
    assert [article_to_record(x) for x in a.articles] == [
        article_to_record(x) for x in b.articles
    ]
