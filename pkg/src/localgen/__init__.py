"""Which communication complexes let local rules generate a language."""

from .complexes import (
    Graph, SimplicialComplex, all_complexes, boundary, complete_graph, cone, from_maximal, full_complex, join,
    k_a, restrict, spanning_trees,
)
from .decide import (
    GENERATES, REFUTED, UNDECIDED, DecisionResult, Options, check_certificate, decide_generates, decide_many,
    is_v_good, minimal_complexes,
)
from .language import Alphabet, Language, make_language, parse_words
from .procedure import Procedure, comm_complex, compose, image, pushforward, verify_generates

__all__ = [
    "Alphabet", "Language", "make_language", "parse_words",
    "Graph", "SimplicialComplex", "all_complexes", "boundary", "complete_graph", "cone", "from_maximal",
    "full_complex", "join", "k_a", "restrict", "spanning_trees",
    "Procedure", "comm_complex", "compose", "image", "pushforward", "verify_generates",
    "GENERATES", "REFUTED", "UNDECIDED", "DecisionResult", "Options", "check_certificate", "decide_generates",
    "decide_many", "is_v_good", "minimal_complexes",
]
