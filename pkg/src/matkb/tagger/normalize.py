"""Canonical string form of a mention surface, used as the search index key."""

import re

from ..categories import CASE_PRESERVING, EntityCategory

# One space between a number and the degree unit, capital C/F after the sign:
# "700°C", "700 ° c" and "700 °C" all key as "700 °C".
_DEGREE_AFTER_NUMBER = re.compile(r"(\d)\s*°\s*([cf])\b", re.IGNORECASE)
_WS_RUN = re.compile(r"\s+")


def normalize_value(surface: str, category: EntityCategory) -> str:
    """Normalize a surface for indexing. Idempotent for every category.

    Case folds except for Material-* and Brand, where formula and vendor
    casing is meaningful.
    """
    value = _WS_RUN.sub(" ", surface).strip()
    if category not in CASE_PRESERVING:
        value = value.lower()
    value = _DEGREE_AFTER_NUMBER.sub(lambda m: f"{m.group(1)} °{m.group(2).upper()}", value)
    return value
