"""Import externally produced mention predictions into the pipeline.

Records arrive as JSON lines. Two shapes are accepted:

* span records: ``{paragraph_id, start, end, category, surface}``
* BIO records:  ``{paragraph_id, tokens, tags}`` with ``B-``/``I-``/``O`` tags;
  tokens are located left-to-right in the paragraph text and converted to
  character spans before validation.

Every record is validated against its paragraph; failures are collected into
a report and skipped. Unlike the rule tagger, imported mentions may overlap.
"""

import json
from dataclasses import dataclass
from typing import IO, Iterable

from ..categories import EntityCategory, UnknownSlotError, resolve_slot
from ..models import EntityMention, Paragraph
from .normalize import normalize_value


@dataclass(frozen=True)
class ImportIssue:
    line: int
    reason: str

    def to_json(self) -> str:
        return json.dumps({"line": self.line, "reason": self.reason}, ensure_ascii=False)


@dataclass
class ImportResult:
    mentions: list[EntityMention]
    report: list[ImportIssue]


def _bio_to_spans(tokens: list[str], tags: list[str], text: str) -> list[tuple[int, int, str]]:
    """Locate tokens in text and merge B-/I- runs into (start, end, label)."""
    if len(tokens) != len(tags):
        raise ValueError("tokens and tags differ in length")
    offsets = []
    cursor = 0
    for token in tokens:
        pos = text.find(token, cursor)
        if pos < 0:
            raise ValueError(f"token {token!r} not found in paragraph text")
        offsets.append((pos, pos + len(token)))
        cursor = pos + len(token)

    spans = []
    open_span = None  # (start, end, label)
    for (start, end), tag in zip(offsets, tags):
        if tag == "O" or not tag:
            if open_span:
                spans.append(open_span)
                open_span = None
            continue
        if "-" not in tag:
            raise ValueError(f"malformed BIO tag {tag!r}")
        marker, label = tag.split("-", 1)
        if marker == "B" or open_span is None or open_span[2] != label:
            if open_span:
                spans.append(open_span)
            open_span = (start, end, label)
        elif marker == "I":
            open_span = (open_span[0], end, label)
        else:
            raise ValueError(f"malformed BIO tag {tag!r}")
    if open_span:
        spans.append(open_span)
    return spans


def _mention_from_span(
    paragraph: Paragraph, start, end, category_name, surface
) -> EntityMention:
    if not isinstance(start, int) or not isinstance(end, int):
        raise ValueError("span offsets must be integers")
    if not (0 <= start < end <= len(paragraph.text)):
        raise ValueError(f"span [{start}, {end}) out of range")
    try:
        category = resolve_slot(str(category_name))
    except UnknownSlotError:
        raise ValueError(f"unknown category {category_name!r}") from None
    slice_ = paragraph.text[start:end]
    if surface is not None and surface != slice_:
        raise ValueError("surface mismatch")
    return EntityMention(
        paragraph_id=paragraph.paragraph_id,
        start=start,
        end=end,
        category=category,
        surface=slice_,
        normalized=normalize_value(slice_, category),
    )


def import_mentions(
    source: IO[str] | Iterable[str], paragraphs: dict[str, Paragraph]
) -> ImportResult:
    mentions: list[EntityMention] = []
    report: list[ImportIssue] = []
    for line_no, line in enumerate(source, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            report.append(ImportIssue(line_no, f"invalid JSON: {exc.msg}"))
            continue
        if not isinstance(obj, dict):
            report.append(ImportIssue(line_no, "record is not an object"))
            continue

        paragraph = paragraphs.get(obj.get("paragraph_id"))
        if paragraph is None:
            report.append(ImportIssue(line_no, f"unknown paragraph_id {obj.get('paragraph_id')!r}"))
            continue

        try:
            if "tokens" in obj or "tags" in obj:
                spans = _bio_to_spans(obj.get("tokens", []), obj.get("tags", []), paragraph.text)
                for start, end, label in spans:
                    mentions.append(_mention_from_span(paragraph, start, end, label, None))
            else:
                mentions.append(
                    _mention_from_span(
                        paragraph,
                        obj.get("start"),
                        obj.get("end"),
                        obj.get("category"),
                        obj.get("surface"),
                    )
                )
        except ValueError as exc:
            report.append(ImportIssue(line_no, str(exc)))
    return ImportResult(mentions=mentions, report=report)
