"""Request/response models for the HTTP API."""

from pydantic import BaseModel, Field


class ApiConfig(BaseModel):
    host: str = "127.0.0.1"
    port: int = Field(default=8000, ge=1, le=65535)
    index_path: str | None = None
    kb_path: str | None = None
    max_page_size: int = Field(default=100, ge=1)
    cors_origins: list[str] = Field(default_factory=list)


class HighlightModel(BaseModel):
    start: int
    end: int
    category: str


class SearchResultModel(BaseModel):
    paragraph_id: str
    article_id: str
    score: float
    snippet: str
    highlights: list[HighlightModel]


class SearchResponse(BaseModel):
    total: int
    limit: int
    offset: int
    clamped: bool = False
    results: list[SearchResultModel]


class TopValue(BaseModel):
    value: str
    count: int


class SlotInfo(BaseModel):
    name: str
    aliases: list[str]
    count: int
    unique_values: int
    top_values: list[TopValue]


class MentionModel(BaseModel):
    start: int
    end: int
    category: str
    surface: str
    normalized: str


class ParagraphModel(BaseModel):
    paragraph_id: str
    article_id: str
    text: str
    char_count: int


class ArticleModel(BaseModel):
    article_id: str
    title: str = ""
    venue: str = ""
    year: int | None = None


class ParagraphResponse(BaseModel):
    paragraph: ParagraphModel
    article: ArticleModel
    mentions: list[MentionModel]
