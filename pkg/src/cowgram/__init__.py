"""Word cobordisms as a semantic engine for linear logic grammars."""

from .multiword import (  # noqa: F401
    EMPTY,
    EPSILON,
    STANDARD,
    Boundary,
    CyclicWord,
    Edge,
    Multiword,
    boundary,
    dual_boundary,
    elementary_contraction,
    is_subboundary,
    iterated_contraction,
    multiword,
    pattern,
    tensor_boundary,
    tensor_multiword,
    word,
)
from .category import Cowordism, compose, identity, tensor  # noqa: F401

__version__ = "0.1.0"
