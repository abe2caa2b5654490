"""The closed 13-category entity schema and slot-name alias resolution."""

from enum import Enum


class EntityCategory(str, Enum):
    DESCRIPTOR = "Descriptor"
    MATERIAL_TARGET = "Material-target"
    MATERIAL_INTERMEDIUM = "Material-intermedium"
    OPERATION = "Operation"
    DEVICE = "Device"
    BRAND = "Brand"
    PROPERTY_TIME = "Property-time"
    VALUE = "Value"
    PROPERTY_PRESSURE = "Property-pressure"
    MATERIAL_OTHERS = "Material-others"
    MATERIAL_RECIPE = "Material-recipe"
    PROPERTY_TEMPERATURE = "Property-temperature"
    PROPERTY_RATE = "Property-rate"

    def __str__(self) -> str:
        return self.value


# Categories whose normalized values keep their original casing.
CASE_PRESERVING = frozenset(
    c for c in EntityCategory if c.value.startswith("Material") or c is EntityCategory.BRAND
)


class UnknownSlotError(ValueError):
    """Raised when a slot name does not resolve to any category."""

    def __init__(self, name: str):
        self.slot = name
        self.valid_slots = [c.value for c in EntityCategory]
        super().__init__(
            f"unknown slot {name!r}; valid slots: {', '.join(self.valid_slots)}"
        )


def _fold(name: str) -> str:
    return name.strip().lower().replace("_", "-")


# Every category resolves under case/underscore/hyphen folding.  A handful of
# legacy names used Material_ as the prefix for what the schema files under
# Property-, so those get explicit entries.
_EXTRA_ALIASES = {
    "material-temperature": EntityCategory.PROPERTY_TEMPERATURE,
    "material-time": EntityCategory.PROPERTY_TIME,
    "material-pressure": EntityCategory.PROPERTY_PRESSURE,
    "material-rate": EntityCategory.PROPERTY_RATE,
}

_ALIAS_TABLE: dict[str, EntityCategory] = {_fold(c.value): c for c in EntityCategory}
_ALIAS_TABLE.update(_EXTRA_ALIASES)


def resolve_slot(name: str) -> EntityCategory:
    """Resolve a slot name or alias to its category.

    Matching is case-insensitive and treats ``_`` and ``-`` as
    interchangeable, so ``Material_recipe`` and ``material-recipe`` both
    resolve to ``Material-recipe``.

    Raises:
        UnknownSlotError: if the folded name is not in the alias table.
    """
    try:
        return _ALIAS_TABLE[_fold(name)]
    except KeyError:
        raise UnknownSlotError(name) from None


def slot_aliases(category: EntityCategory) -> list[str]:
    """Underscore spellings and legacy names accepted for a category."""
    aliases = [category.value.replace("-", "_")]
    for alias, target in _EXTRA_ALIASES.items():
        if target is category:
            aliases.append(alias.replace("-", "_").capitalize())
    return aliases
