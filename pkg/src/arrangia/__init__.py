"""Colored permutations: objects, statistics, bijections, pattern
counting, and exact generating-function verification."""

from .core import (
    ColoredArrangement,
    SlotDecomposition,
    derangement_form,
    derangement_part,
    excedance_word,
    from_derangement_form,
    from_permutation_form,
    permutation_form,
    reduce_positive,
    reduce_word,
    slot_compose,
    slot_decompose,
    slot_types,
    weak_derangement_part,
)

__version__ = "0.1.0"

__all__ = [
    "ColoredArrangement",
    "SlotDecomposition",
    "derangement_form",
    "derangement_part",
    "excedance_word",
    "from_derangement_form",
    "from_permutation_form",
    "permutation_form",
    "reduce_positive",
    "reduce_word",
    "slot_compose",
    "slot_decompose",
    "slot_types",
    "weak_derangement_part",
    "__version__",
]
