"""circwords: circular words, unbordered conjugates, automatic sequences,
and a small automata-backed first-order decision procedure."""

from circwords._kernels import BACKEND as kernel_backend
from circwords.words import (
    BorderProfile,
    OverlapWitness,
    SquareWitness,
    Word,
    border_correlation,
    border_profile,
    conjugate,
    is_bordered,
    is_primitive,
    mnuc_exhaustive,
    nuc,
    overlap_check,
    square_check,
)

__version__ = "0.1.0"

__all__ = [
    "BorderProfile",
    "OverlapWitness",
    "SquareWitness",
    "Word",
    "border_correlation",
    "border_profile",
    "conjugate",
    "is_bordered",
    "is_primitive",
    "kernel_backend",
    "mnuc_exhaustive",
    "nuc",
    "overlap_check",
    "square_check",
]
