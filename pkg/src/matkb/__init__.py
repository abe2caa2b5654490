"""matkb: structured entity extraction over materials synthesis texts, with a
slot-aware search index and HTTP API on top."""

from .categories import EntityCategory, UnknownSlotError, resolve_slot
from .models import ArticleRecord, EntityMention, Paragraph

__version__ = "0.1.0"

__all__ = [
    "ArticleRecord",
    "EntityCategory",
    "EntityMention",
    "Paragraph",
    "UnknownSlotError",
    "resolve_slot",
    "__version__",
]
