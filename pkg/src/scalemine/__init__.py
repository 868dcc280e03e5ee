"""Mining adjective intensity scales from forum text with lexico-syntactic patterns."""

__version__ = "0.1.0"

from .errors import ContradictionError, DataError, ScalemineError  # noqa: E402
from .tagger import AdjectiveInventory, TaggedToken, load_inventory  # noqa: E402
from .patterns import MatchedPhrase, PatternSpec, load_patterns, scan  # noqa: E402
from .pairs import WeakStrongPair, extract_pairs  # noqa: E402
from .graph import build_graph, find_category_paths, resolve_directions  # noqa: E402
from .scales import CategoryScale, build_all_scales, score_category  # noqa: E402
from .evaluation import AgreementReport, compare_to_reference  # noqa: E402

__all__ = [
    "AdjectiveInventory", "AgreementReport", "CategoryScale", "ContradictionError", "DataError",
    "MatchedPhrase", "PatternSpec", "ScalemineError", "TaggedToken", "WeakStrongPair",
    "build_all_scales", "build_graph", "compare_to_reference", "extract_pairs", "find_category_paths",
    "load_inventory", "load_patterns", "resolve_directions", "scan", "score_category",
]
