"""Numeric unit patterns for temperature, time, pressure, rate and amount spans.

Qualifier words ("below 600 °C", "around 3 g", "approximately 2 K/min") are
absorbed into the span. Rate patterns are longer than the temperature match
they contain, so longest-match selection keeps "2 K/min" out of the
temperature slot.
"""

import re

from ..categories import EntityCategory

_QUAL = r"(?:(?:below|above|about|around|approximately)\s+)?"
_NUM = r"\d+(?:\.\d+)?"
_TIME_UNITS = r"(?:hours|hour|hrs|hr|h|minutes|minute|mins|min|days|day|seconds|second|sec|s)"
_PRESSURE_UNITS = r"(?:kPa|KPa|MPa|GPa|Pa|Torr|torr|mbar|bar|atm)"
_AMOUNT_UNITS = r"(?:(?:mg|g|kg|ml|mL|L|mol|mmol)\b|wt\.?\s?%|at\.?\s?%)"

# Order within this list only breaks exact ties (same span start and length);
# overlap resolution is longest-match-first across all recognizers.
UNIT_PATTERNS: list[tuple[EntityCategory, "re.Pattern[str]"]] = [
    (
        EntityCategory.PROPERTY_RATE,
        re.compile(rf"(?<!\w){_QUAL}{_NUM}\s*(?:°C|K)\s*/\s*{_TIME_UNITS}(?!\w)"),
    ),
    (
        EntityCategory.PROPERTY_TEMPERATURE,
        re.compile(rf"(?<!\w){_QUAL}{_NUM}\s*(?:°[CF]|K)(?!\w)"),
    ),
    (
        EntityCategory.PROPERTY_TIME,
        re.compile(rf"(?<!\w){_QUAL}{_NUM}\s+{_TIME_UNITS}(?!\w)"),
    ),
    (
        EntityCategory.PROPERTY_PRESSURE,
        re.compile(rf"(?<!\w){_QUAL}{_NUM}\s+{_PRESSURE_UNITS}(?!\w)"),
    ),
    (
        EntityCategory.VALUE,
        re.compile(rf"(?<!\w){_QUAL}{_NUM}\s+{_AMOUNT_UNITS}"),
    ),
    (
        EntityCategory.PROPERTY_TEMPERATURE,
        re.compile(r"(?<!\w)room[ -]temperature(?!\w)", re.IGNORECASE),
    ),
    (
        EntityCategory.PROPERTY_PRESSURE,
        re.compile(r"(?<!\w)(?:ambient\s+pressure|vacuum)(?!\w)", re.IGNORECASE),
    ),
    (
        EntityCategory.PROPERTY_RATE,
        re.compile(r"(?<!\w)(?:cooling|heating)\s+rate(?!\w)", re.IGNORECASE),
    ),
    (
        EntityCategory.VALUE,
        re.compile(r"(?<!\w)stoichiometric\s+(?:amounts|quantities|ratios?)(?!\w)", re.IGNORECASE),
    ),
]
