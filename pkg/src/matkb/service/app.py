"""Read-only HTTP JSON API over an immutable index + knowledge base.

Every endpoint is a pure function of (index, kb, request); nothing mutates
server state, so concurrent requests are safe by construction. Re-indexing
is an offline CLI step followed by a restart.
"""

from collections import defaultdict

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..categories import EntityCategory, UnknownSlotError, slot_aliases
from ..index import (
    QueryParseError,
    SlotIndex,
    SlotQuery,
    execute,
    load_index,
    parse_query,
)
from ..kb import KnowledgeBase, compute_stats, load_kb
from .schemas import (
    ApiConfig,
    ArticleModel,
    HighlightModel,
    MentionModel,
    ParagraphModel,
    ParagraphResponse,
    SearchResponse,
    SearchResultModel,
    SlotInfo,
    TopValue,
)


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    body = {"error": {"code": code, "message": message, **extra}}
    return JSONResponse(status_code=status, content=body)


def create_app(
    index: SlotIndex | None = None,
    kb: KnowledgeBase | None = None,
    config: ApiConfig | None = None,
) -> FastAPI:
    """Build the service; index/kb may be passed directly or loaded from paths."""
    config = config or ApiConfig()
    if index is None:
        if not config.index_path:
            raise ValueError("no index given and no index_path configured")
        index = load_index(config.index_path)
    if kb is None:
        if not config.kb_path:
            raise ValueError("no kb given and no kb_path configured")
        kb = load_kb(config.kb_path)

    stats = compute_stats(kb)
    stats_bytes = stats.to_json_bytes()
    stats_by_category = {row.category: row for row in stats.rows}
    mentions_by_pid = defaultdict(list)
    for m in kb.mentions:
        mentions_by_pid[m.paragraph_id].append(m)
    for pid in mentions_by_pid:
        mentions_by_pid[pid].sort(key=lambda m: (m.start, m.end, m.category.value))

    app = FastAPI(title="matkb", docs_url="/docs")
    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=config.cors_origins,
            allow_methods=["GET"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _error(400, "invalid_request", str(exc.errors()[0].get("msg", "invalid request")))

    @app.get("/api/slots", response_model=list[SlotInfo])
    def get_slots() -> list[SlotInfo]:
        out = []
        for category in EntityCategory:
            row = stats_by_category[category]
            out.append(
                SlotInfo(
                    name=category.value,
                    aliases=slot_aliases(category),
                    count=row.count,
                    unique_values=row.unique_count,
                    top_values=[TopValue(value=v, count=n) for v, n in row.top_examples],
                )
            )
        return out

    @app.get("/api/search")
    def search(q: str = "", limit: int = 10, offset: int = 0):
        try:
            query = parse_query(q)
        except QueryParseError as exc:
            return _error(400, "parse_error", str(exc), column=exc.column)

        clamped = limit > config.max_page_size
        effective_limit = min(max(limit, 1), config.max_page_size)
        try:
            query = SlotQuery(
                slot_constraints=query.slot_constraints,
                free_text=query.free_text,
                limit=effective_limit,
                offset=max(offset, 0),
            )
            page = execute(index, query)
        except UnknownSlotError as exc:
            return _error(400, "unknown_slot", str(exc), valid_slots=exc.valid_slots)

        results = [
            SearchResultModel(
                paragraph_id=r.paragraph_id,
                article_id=r.article_id,
                score=r.score,
                snippet=r.snippet,
                highlights=[
                    HighlightModel(start=h.start, end=h.end, category=h.category.value)
                    for h in r.highlights
                ],
            )
            for r in page.results
        ]
        response = SearchResponse(
            total=page.total,
            limit=effective_limit,
            offset=max(offset, 0),
            clamped=clamped,
            results=results,
        )
        return JSONResponse(content=response.model_dump())

    @app.get("/api/paragraphs/{paragraph_id}", response_model=ParagraphResponse)
    def get_paragraph(paragraph_id: str):
        paragraph = kb.paragraphs.get(paragraph_id)
        if paragraph is None:
            return _error(404, "not_found", f"unknown paragraph id {paragraph_id!r}")
        meta = kb.articles.get(paragraph.article_id, {})
        return ParagraphResponse(
            paragraph=ParagraphModel(
                paragraph_id=paragraph.paragraph_id,
                article_id=paragraph.article_id,
                text=paragraph.text,
                char_count=paragraph.char_count,
            ),
            article=ArticleModel(
                article_id=paragraph.article_id,
                title=meta.get("title", ""),
                venue=meta.get("venue", ""),
                year=meta.get("year"),
            ),
            mentions=[
                MentionModel(
                    start=m.start,
                    end=m.end,
                    category=m.category.value,
                    surface=m.surface,
                    normalized=m.normalized,
                )
                for m in mentions_by_pid.get(paragraph_id, [])
            ],
        )

    @app.get("/api/stats")
    def get_stats() -> Response:
        # Raw bytes so the payload is byte-identical to the CLI's machine output.
        return Response(content=stats_bytes, media_type="application/json")

    return app
