from .build import SlotIndex, build_index, tokenize
from .queryparse import QueryParseError, SlotQuery, parse_query, render_query
from .search import SearchPage, SearchResult, execute, intersect_postings
from .storage import IndexFormatError, dump_index, load_index, load_index_bytes, save_index

__all__ = [
    "IndexFormatError",
    "QueryParseError",
    "SearchPage",
    "SearchResult",
    "SlotIndex",
    "SlotQuery",
    "build_index",
    "dump_index",
    "execute",
    "intersect_postings",
    "load_index",
    "load_index_bytes",
    "parse_query",
    "render_query",
    "save_index",
    "tokenize",
]
