"""Persisted knowledge base: paragraph store + mention store + provenance.

Directory layout: ``paragraphs.jsonl``, ``mentions.jsonl``, optional
``articles.jsonl``, and ``manifest.json`` with record counts and sha256
checksums. Files are written in canonical order so saving the same KB twice
is byte-identical; a KB without a valid manifest refuses to load.
"""

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .categories import EntityCategory
from .models import EntityMention, Paragraph

MANIFEST_NAME = "manifest.json"
PARAGRAPHS_NAME = "paragraphs.jsonl"
MENTIONS_NAME = "mentions.jsonl"
ARTICLES_NAME = "articles.jsonl"


class KBIntegrityError(ValueError):
    pass


class KBLoadError(ValueError):
    pass


@dataclass
class KnowledgeBase:
    paragraphs: dict[str, Paragraph]
    mentions: list[EntityMention]
    provenance: dict = field(default_factory=dict)
    articles: dict[str, dict] = field(default_factory=dict)

    def validate(self) -> None:
        """Check referential integrity and span validity; raise on violation."""
        dangling = sorted({m.paragraph_id for m in self.mentions} - self.paragraphs.keys())
        if dangling:
            raise KBIntegrityError(
                f"mentions reference unknown paragraphs: {', '.join(dangling[:10])}"
            )
        bad_spans = []
        for m in self.mentions:
            text = self.paragraphs[m.paragraph_id].text
            if not (0 <= m.start < m.end <= len(text)) or text[m.start : m.end] != m.surface:
                bad_spans.append(m.paragraph_id)
        if bad_spans:
            raise KBIntegrityError(
                f"invalid mention spans in paragraphs: {', '.join(sorted(set(bad_spans))[:10])}"
            )


def _mention_sort_key(m: EntityMention):
    return (m.paragraph_id, m.start, m.end, m.category.value)


def _canonical_lines_paragraphs(kb: KnowledgeBase) -> list[str]:
    lines = []
    for pid in sorted(kb.paragraphs):
        p = kb.paragraphs[pid]
        obj = {"paragraph_id": p.paragraph_id, "article_id": p.article_id, "text": p.text}
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=True))
    return lines


def _canonical_lines_mentions(kb: KnowledgeBase) -> list[str]:
    lines = []
    for m in sorted(kb.mentions, key=_mention_sort_key):
        obj = {
            "paragraph_id": m.paragraph_id,
            "start": m.start,
            "end": m.end,
            "category": m.category.value,
            "surface": m.surface,
            "normalized": m.normalized,
        }
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=True))
    return lines


def _canonical_lines_articles(kb: KnowledgeBase) -> list[str]:
    lines = []
    for aid in sorted(kb.articles):
        obj = dict(kb.articles[aid])
        obj["article_id"] = aid
        lines.append(json.dumps(obj, ensure_ascii=False, sort_keys=True))
    return lines


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def save_kb(kb: KnowledgeBase, dest) -> dict:
    """Write the KB canonically and return the manifest.

    Invariants are checked before anything is written, and the manifest goes
    last (atomically), so a failed save never leaves a loadable directory.
    """
    kb.validate()
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)

    files = {
        PARAGRAPHS_NAME: _canonical_lines_paragraphs(kb),
        MENTIONS_NAME: _canonical_lines_mentions(kb),
    }
    if kb.articles:
        files[ARTICLES_NAME] = _canonical_lines_articles(kb)

    manifest: dict = {"version": 1, "provenance": kb.provenance, "files": {}}
    for name, lines in files.items():
        payload = ("".join(line + "\n" for line in lines)).encode("utf-8")
        (dest / name).write_bytes(payload)
        manifest["files"][name] = {"records": len(lines), "sha256": _sha256(payload)}

    manifest_bytes = json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2).encode("utf-8")
    tmp = dest / (MANIFEST_NAME + ".tmp")
    tmp.write_bytes(manifest_bytes)
    os.replace(tmp, dest / MANIFEST_NAME)
    return manifest


def load_kb(src) -> KnowledgeBase:
    """Load and fully revalidate a KB directory (checksums, spans, references)."""
    src = Path(src)
    manifest_path = src / MANIFEST_NAME
    if not manifest_path.exists():
        raise KBLoadError(f"no manifest at {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise KBLoadError(f"manifest is not valid JSON: {exc.msg}") from None

    contents: dict[str, bytes] = {}
    for name, meta in manifest.get("files", {}).items():
        path = src / name
        if not path.exists():
            raise KBLoadError(f"manifest lists missing file {name}")
        data = path.read_bytes()
        if _sha256(data) != meta.get("sha256"):
            raise KBLoadError(f"checksum mismatch for {name}")
        contents[name] = data

    if PARAGRAPHS_NAME not in contents or MENTIONS_NAME not in contents:
        raise KBLoadError("manifest must cover paragraphs.jsonl and mentions.jsonl")

    paragraphs: dict[str, Paragraph] = {}
    for line in contents[PARAGRAPHS_NAME].decode("utf-8").splitlines():
        obj = json.loads(line)
        p = Paragraph(obj["paragraph_id"], obj["article_id"], obj["text"])
        if p.paragraph_id in paragraphs:
            raise KBLoadError(f"duplicate paragraph_id {p.paragraph_id!r}")
        paragraphs[p.paragraph_id] = p

    mentions: list[EntityMention] = []
    for line in contents[MENTIONS_NAME].decode("utf-8").splitlines():
        obj = json.loads(line)
        mentions.append(
            EntityMention(
                paragraph_id=obj["paragraph_id"],
                start=obj["start"],
                end=obj["end"],
                category=EntityCategory(obj["category"]),
                surface=obj["surface"],
                normalized=obj["normalized"],
            )
        )

    articles: dict[str, dict] = {}
    if ARTICLES_NAME in contents:
        for line in contents[ARTICLES_NAME].decode("utf-8").splitlines():
            obj = json.loads(line)
            aid = obj.pop("article_id")
            articles[aid] = obj

    kb = KnowledgeBase(
        paragraphs=paragraphs,
        mentions=mentions,
        provenance=manifest.get("provenance", {}),
        articles=articles,
    )
    try:
        kb.validate()
    except KBIntegrityError as exc:
        raise KBLoadError(str(exc)) from None
    return kb


@dataclass(frozen=True)
class CategoryStats:
    category: EntityCategory
    count: int
    unique_count: int
    top_examples: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class StatsReport:
    rows: tuple[CategoryStats, ...]
    total_count: int
    total_unique: int

    def to_dict(self) -> dict:
        return {
            "uniqueness": "distinct normalized values per category",
            "categories": [
                {
                    "category": r.category.value,
                    "count": r.count,
                    "unique": r.unique_count,
                    "top_examples": [{"value": v, "count": n} for v, n in r.top_examples],
                }
                for r in self.rows
            ],
            "total": {"count": self.total_count, "unique": self.total_unique},
        }

    def to_json_bytes(self) -> bytes:
        """Canonical machine-readable form (shared by the CLI and the API)."""
        return (json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n").encode("utf-8")

    def to_table(self) -> str:
        """Aligned-column text table; uniqueness note in the header."""
        header = ["Name", "#Count", "#Unique", "Examples"]
        rows = [
            (
                r.category.value,
                f"{r.count:,}",
                f"{r.unique_count:,}",
                ", ".join(v for v, _ in r.top_examples),
            )
            for r in self.rows
        ]
        rows.append(("Total", f"{self.total_count:,}", f"{self.total_unique:,}", ""))
        widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(4)]
        lines = ["# unique mentions are counted over normalized values"]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)).rstrip())
        lines.append("  ".join("-" * widths[i] for i in range(4)))
        for r in rows:
            lines.append("  ".join(r[i].ljust(widths[i]) for i in range(4)).rstrip())
        return "\n".join(lines) + "\n"


def compute_stats(kb: KnowledgeBase, top_n: int = 4) -> StatsReport:
    """Per-category mention counts and distinct normalized values.

    ``top_examples`` are sorted by frequency, ties broken lexicographically.
    Every category appears even when empty.
    """
    by_category: dict[EntityCategory, Counter] = {c: Counter() for c in EntityCategory}
    for m in kb.mentions:
        by_category[m.category][m.normalized] += 1

    rows = []
    for category in EntityCategory:
        values = by_category[category]
        top = sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        rows.append(
            CategoryStats(
                category=category,
                count=sum(values.values()),
                unique_count=len(values),
                top_examples=tuple(top),
            )
        )
    return StatsReport(
        rows=tuple(rows),
        total_count=sum(r.count for r in rows),
        total_unique=sum(r.unique_count for r in rows),
    )


def mentions_to_jsonl(mentions: Iterable[EntityMention]) -> str:
    lines = []
    for m in mentions:
        obj = {
            "paragraph_id": m.paragraph_id,
            "start": m.start,
            "end": m.end,
            "category": m.category.value,
            "surface": m.surface,
            "normalized": m.normalized,
        }
        lines.append(json.dumps(obj, ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


def read_mentions(path) -> list[EntityMention]:
    mentions = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            mentions.append(
                EntityMention(
                    paragraph_id=obj["paragraph_id"],
                    start=obj["start"],
                    end=obj["end"],
                    category=EntityCategory(obj["category"]),
                    surface=obj["surface"],
                    normalized=obj["normalized"],
                )
            )
    return mentions
