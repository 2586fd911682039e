"""Arc-standard derivations read as ordered-tree construction."""

from .builder import build, yields
from .core import (
    ROOT,
    UA,
    Arc,
    DependencyTree,
    InvalidTreeError,
    Leaf,
    MalformedTreeError,
    Node,
    NonProjectiveError,
    Sentence,
    Token,
    TreeError,
    crossing_pairs,
    is_projective,
    validate,
)
from .mapped import execute_mapped, step
from .oracle import Transition, derive, execute_plain
from .pproj import delift, lift
from .recover import anchor_of, recover

__version__ = "0.1.0"

__all__ = [
    "ROOT", "UA", "Arc", "DependencyTree", "InvalidTreeError", "Leaf", "MalformedTreeError",
    "Node", "NonProjectiveError", "Sentence", "Token", "Transition", "TreeError",
    "anchor_of", "build", "crossing_pairs", "delift", "derive", "execute_mapped",
    "execute_plain", "is_projective", "lift", "recover", "step", "validate", "yields",
]
