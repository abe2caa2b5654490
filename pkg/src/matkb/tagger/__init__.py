from .evaluation import SpanF1Report, eval_span_f1
from .formula import ELEMENT_SYMBOLS, FORMULA_STOPLIST, is_formula, parse_chemical_formula
from .importer import ImportResult, import_mentions
from .lexicons import Lexicon, MatchMode, load_lexicons
from .normalize import normalize_value
from .tagger import TaggerConfig, tag_corpus, tag_paragraph

__all__ = [
    "ELEMENT_SYMBOLS",
    "FORMULA_STOPLIST",
    "ImportResult",
    "Lexicon",
    "MatchMode",
    "SpanF1Report",
    "TaggerConfig",
    "eval_span_f1",
    "import_mentions",
    "is_formula",
    "load_lexicons",
    "normalize_value",
    "parse_chemical_formula",
    "tag_corpus",
    "tag_paragraph",
]
