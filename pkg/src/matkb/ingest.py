"""Parse line-delimited article records and segment them into paragraphs.

Input lines are JSON objects with a required ``article_id`` and either
``body_text`` (segmented here on blank lines) or ``paragraphs`` (already
segmented). Paragraph ids are deterministic: ``<article_id>#<ordinal>`` with
ordinals assigned after empty segments are dropped, so re-ingesting a
serialized corpus reproduces it exactly.
"""

import json
import re
import unicodedata
from dataclasses import dataclass, field
from typing import IO, Iterable

from .models import ArticleRecord, Paragraph


class DuplicateArticleError(ValueError):
    def __init__(self, article_id: str, first_line: int, second_line: int):
        self.article_id = article_id
        self.first_line = first_line
        self.second_line = second_line
        super().__init__(
            f"duplicate article_id {article_id!r}: lines {first_line} and {second_line}"
        )


# Degree-Celsius sign variants collapse to the two-character sequence "°C" so
# temperature matching is independent of the source encoding.
_DEGREE_SIGN = re.compile("℃")  # single-codepoint ℃
_DEGREE_SPACED = re.compile("° C(?![a-z])")
_WS_RUN = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    """Canonical paragraph text: NFC, single spaces, canonical degree sign."""
    text = unicodedata.normalize("NFC", text)
    text = _DEGREE_SIGN.sub("°C", text)
    text = _WS_RUN.sub(" ", text).strip()
    return _DEGREE_SPACED.sub("°C", text)


def segment_paragraphs(full_text: str) -> list[str]:
    """Split text on runs of blank lines; segments come back normalized.

    Empty or whitespace-only segments are dropped, so whitespace-only input
    yields an empty list.
    """
    segments: list[str] = []
    block: list[str] = []
    for line in full_text.splitlines():
        if line.strip():
            block.append(line)
        elif block:
            segments.append("\n".join(block))
            block = []
    if block:
        segments.append("\n".join(block))
    normalized = (normalize_text(s) for s in segments)
    return [s for s in normalized if s]


@dataclass
class IngestIssue:
    line: int
    error: str

    def to_json(self) -> str:
        return json.dumps({"line": self.line, "error": self.error}, ensure_ascii=False)


@dataclass
class IngestResult:
    articles: list[ArticleRecord]
    report: list[IngestIssue] = field(default_factory=list)

    def paragraphs(self) -> list[Paragraph]:
        return [p for a in self.articles for p in a.paragraphs]


def _parse_record(obj: object) -> ArticleRecord:
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    article_id = obj.get("article_id")
    if not isinstance(article_id, str) or not article_id:
        raise ValueError("missing or empty article_id")

    if "paragraphs" in obj:
        raw = obj["paragraphs"]
        if not isinstance(raw, list) or not all(isinstance(t, str) for t in raw):
            raise ValueError("paragraphs must be an array of strings")
        texts = [t for t in (normalize_text(t) for t in raw) if t]
    elif "body_text" in obj:
        body = obj["body_text"]
        if not isinstance(body, str):
            raise ValueError("body_text must be a string")
        texts = segment_paragraphs(body)
    else:
        raise ValueError("record has neither body_text nor paragraphs")

    title = obj.get("title", "")
    venue = obj.get("venue", "")
    year = obj.get("year")
    if not isinstance(title, str) or not isinstance(venue, str):
        raise ValueError("title and venue must be strings")
    if year is not None and not isinstance(year, int):
        raise ValueError("year must be an integer")

    paragraphs = tuple(
        Paragraph(paragraph_id=f"{article_id}#{i}", article_id=article_id, text=t)
        for i, t in enumerate(texts)
    )
    return ArticleRecord(
        article_id=article_id,
        title=normalize_text(title),
        venue=normalize_text(venue),
        year=year,
        paragraphs=paragraphs,
    )


def ingest_corpus(source: IO[str] | Iterable[str]) -> IngestResult:
    """Parse a stream of line-delimited article records.

    Malformed lines go into the report and are skipped; a duplicate
    ``article_id`` aborts the run since it would corrupt paragraph identity.
    """
    articles: list[ArticleRecord] = []
    report: list[IngestIssue] = []
    seen: dict[str, int] = {}
    for line_no, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            report.append(IngestIssue(line_no, f"invalid JSON: {exc.msg}"))
            continue
        try:
            record = _parse_record(obj)
        except ValueError as exc:
            report.append(IngestIssue(line_no, str(exc)))
            continue
        if record.article_id in seen:
            raise DuplicateArticleError(record.article_id, seen[record.article_id], line_no)
        seen[record.article_id] = line_no
        articles.append(record)
    return IngestResult(articles=articles, report=report)


def article_to_record(article: ArticleRecord) -> dict:
    """Serialize an article back to the ingest input shape (pre-segmented)."""
    record: dict = {
        "article_id": article.article_id,
        "paragraphs": [p.text for p in article.paragraphs],
    }
    if article.title:
        record["title"] = article.title
    if article.venue:
        record["venue"] = article.venue
    if article.year is not None:
        record["year"] = article.year
    return record


def paragraph_to_record(paragraph: Paragraph) -> dict:
    return {
        "paragraph_id": paragraph.paragraph_id,
        "article_id": paragraph.article_id,
        "text": paragraph.text,
    }


def write_outputs(result: IngestResult, out_dir) -> None:
    """Write paragraphs.jsonl, articles.jsonl and ingest_report.jsonl."""
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "paragraphs.jsonl", "w", encoding="utf-8") as fh:
        for article in result.articles:
            for p in article.paragraphs:
                fh.write(json.dumps(paragraph_to_record(p), ensure_ascii=False) + "\n")
    with open(out / "articles.jsonl", "w", encoding="utf-8") as fh:
        for article in result.articles:
            meta = {
                "article_id": article.article_id,
                "title": article.title,
                "venue": article.venue,
                "year": article.year,
            }
            fh.write(json.dumps(meta, ensure_ascii=False) + "\n")
    with open(out / "ingest_report.jsonl", "w", encoding="utf-8") as fh:
        for issue in result.report:
            fh.write(issue.to_json() + "\n")


def read_paragraphs(path) -> list[Paragraph]:
    """Load a paragraphs.jsonl file."""
    paragraphs = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            paragraphs.append(
                Paragraph(
                    paragraph_id=obj["paragraph_id"],
                    article_id=obj["article_id"],
                    text=obj["text"],
                )
            )
    return paragraphs
