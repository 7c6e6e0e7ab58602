"""Python bindings for the cpccms weighting and ranking core."""

from ._core import (
    ConflictError,
    accordance_index,
    clean,
    criterion_scores,
    derive_weights,
    porter_stem,
    rank_models,
    tokenize,
)

__all__ = [
    "ConflictError",
    "accordance_index",
    "clean",
    "criterion_scores",
    "derive_weights",
    "porter_stem",
    "rank_models",
    "tokenize",
]
