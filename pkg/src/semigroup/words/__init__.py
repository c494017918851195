"""
Words of the free semigroup and windows of shift sequences.
"""

from src.semigroup.words.words import (
    Alphabet,
    OmegaWindow,
    Word,
    enumerate_words,
    is_suffix_le,
    prefixes,
    reverse,
    sample_words,
    symbolic_distance,
    words_array,
)

__all__ = [
    "Alphabet",
    "OmegaWindow",
    "Word",
    "enumerate_words",
    "is_suffix_le",
    "prefixes",
    "reverse",
    "sample_words",
    "symbolic_distance",
    "words_array",
]
