"""Core domain records shared across the pipeline."""

from dataclasses import dataclass, field

from .categories import EntityCategory


@dataclass(frozen=True)
class Paragraph:
    """One retrieval unit: a whitespace-normalized block of article text."""

    paragraph_id: str
    article_id: str
    text: str

    @property
    def char_count(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class ArticleRecord:
    """One source publication with its paragraphs in source order."""

    article_id: str
    title: str = ""
    venue: str = ""
    year: int | None = None
    paragraphs: tuple[Paragraph, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class EntityMention:
    """A tagged span. ``surface`` must equal the paragraph text slice [start, end)."""

    paragraph_id: str
    start: int
    end: int
    category: EntityCategory
    surface: str
    normalized: str

    def span_key(self) -> tuple[str, int, int, EntityCategory]:
        """Identity used for exact-match evaluation."""
        return (self.paragraph_id, self.start, self.end, self.category)
