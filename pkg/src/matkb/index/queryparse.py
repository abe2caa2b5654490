"""The slot query language: ``slot:value`` clauses plus free-text barewords.

Slot names are matched case-insensitively with ``_``/``-`` interchangeable;
values may be double-quoted to include spaces (``Property-temperature:"1000
°C"``). Barewords accumulate into the free-text part of the query.
"""

from dataclasses import dataclass, field

from ..categories import resolve_slot


class QueryParseError(ValueError):
    def __init__(self, message: str, column: int):
        self.column = column
        super().__init__(f"{message} (column {column})")


DEFAULT_LIMIT = 10


@dataclass(frozen=True)
class SlotQuery:
    slot_constraints: tuple[tuple[str, str], ...] = ()
    free_text: str | None = None
    limit: int = DEFAULT_LIMIT
    offset: int = 0

    def __post_init__(self):
        if not self.slot_constraints and not (self.free_text or "").strip():
            raise ValueError("query needs at least one slot constraint or free text")
        if self.limit < 1:
            raise ValueError("limit must be positive")
        if self.offset < 0:
            raise ValueError("offset must be non-negative")

    def canonical(self) -> "SlotQuery":
        """Resolve slot aliases to canonical hyphenated names."""
        return SlotQuery(
            slot_constraints=tuple(
                (resolve_slot(name).value, value) for name, value in self.slot_constraints
            ),
            free_text=self.free_text,
            limit=self.limit,
            offset=self.offset,
        )


def parse_query(text: str) -> SlotQuery:
    """Parse a query string; raises QueryParseError with a 1-based column."""
    if not text or not text.strip():
        raise QueryParseError("empty query", column=1)

    constraints: list[tuple[str, str]] = []
    words: list[str] = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        start = i
        while i < n and not text[i].isspace() and text[i] != ":":
            i += 1
        if i < n and text[i] == ":" and i > start:
            slot = text[start:i]
            i += 1
            if i < n and text[i] == '"':
                quote_col = i + 1
                closing = text.find('"', i + 1)
                if closing < 0:
                    raise QueryParseError("unterminated quote", column=quote_col)
                value = text[i + 1 : closing]
                i = closing + 1
            else:
                value_start = i
                while i < n and not text[i].isspace():
                    i += 1
                value = text[value_start:i]
            if not value:
                raise QueryParseError(f"missing value for slot {slot!r}", column=start + 1)
            constraints.append((slot, value))
        else:
            # Bareword; a leading ':' run is swallowed into it.
            while i < n and not text[i].isspace():
                i += 1
            words.append(text[start:i])

    free_text = " ".join(words) if words else None
    try:
        return SlotQuery(slot_constraints=tuple(constraints), free_text=free_text)
    except ValueError as exc:
        raise QueryParseError(str(exc), column=1) from None


def render_query(query: SlotQuery) -> str:
    """Canonical string form; parse_query(render_query(q)) reproduces q."""
    parts = []
    for slot, value in query.slot_constraints:
        if '"' in value or not value:
            raise ValueError(f"value not renderable in query syntax: {value!r}")
        rendered = f'"{value}"' if any(ch.isspace() for ch in value) else value
        parts.append(f"{slot}:{rendered}")
    if query.free_text:
        for word in query.free_text.split():
            if ":" in word[1:]:
                raise ValueError(f"free-text word would parse as a clause: {word!r}")
        parts.append(query.free_text)
    return " ".join(parts)
