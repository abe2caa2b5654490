"""Chemical formula recognition: (ElementSymbol Digits?)+ over the 118 IUPAC symbols.

Symbols match case-sensitively and greedily two-letters-first, so "Co3O4"
parses as cobalt/oxygen rather than carbon/oxygen fragments. Short tokens
that double as English words ("In", "As", "He", ...) sit on a stoplist and
only count as formulas when surrounding context vouches for them.
"""

# fmt: off
ELEMENT_SYMBOLS = frozenset([
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne",
    "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr",
    "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn",
    "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb",
    "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
    "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm",
    "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds",
    "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
])
# fmt: on

# Element-parseable tokens that are far more likely to be ordinary prose:
# every single-letter symbol, plus two-letter symbols that spell common
# English words or sentence-initial function words.
FORMULA_STOPLIST = frozenset(
    {s for s in ELEMENT_SYMBOLS if len(s) == 1}
    | {"In", "As", "At", "He", "No", "Be", "Am"}
)


def parse_chemical_formula(token: str, *, apply_stoplist: bool = True) -> list[tuple[str, int]] | None:
    """Parse a token into ordered (element, count) pairs, or None to reject.

    Counts are optional positive integers; ``apply_stoplist=False`` skips the
    English-word stoplist for callers that have already checked context.
    """
    if not token:
        return None
    if apply_stoplist and token in FORMULA_STOPLIST:
        return None

    parts: list[tuple[str, int]] = []
    pos = 0
    n = len(token)
    while pos < n:
        if token[pos : pos + 2] in ELEMENT_SYMBOLS:
            symbol = token[pos : pos + 2]
            pos += 2
        elif token[pos] in ELEMENT_SYMBOLS:
            symbol = token[pos]
            pos += 1
        else:
            return None
        digits_start = pos
        while pos < n and "0" <= token[pos] <= "9":
            pos += 1
        if pos > digits_start:
            # no leading zeros: counts are plain positive integers
            if token[digits_start] == "0":
                return None
            count = int(token[digits_start:pos])
        else:
            count = 1
        parts.append((symbol, count))
    return parts or None


def is_formula(token: str, *, apply_stoplist: bool = True) -> bool:
    return parse_chemical_formula(token, apply_stoplist=apply_stoplist) is not None
