"""Exact algorithms on finite words: conjugates, borders, squares, overlaps,
primitivity, and the exhaustive nuc/mnuc scans.

Indexing is 0-based throughout.  The cyclic shift moves the first symbol to
the end, so ``conjugate(w, i)`` is ``w[i:] + w[:i]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from circwords import _kernels
from circwords.errors import EnumerationBudgetError

DEFAULT_ENUMERATION_BUDGET = 1 << 26
DEFAULT_WITNESS_CAP = 16

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., k-1}."""

    symbols: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("alphabet size must be >= 1")
        if any(s < 0 or s >= self.k for s in self.symbols):
            raise ValueError(f"symbol out of range for alphabet size {self.k}")

    @classmethod
    def parse(cls, text: str, k: int | None = None) -> "Word":
        """Parse digits (k <= 10), comma-separated naturals, or letters a->0, b->1, ..."""
        text = text.strip()
        if text == "":
            syms: tuple[int, ...] = ()
        elif "," in text:
            syms = tuple(int(part) for part in text.split(","))
        elif text.isdigit():
            syms = tuple(int(ch) for ch in text)
        elif all(ch in _LETTERS for ch in text.lower()):
            syms = tuple(_LETTERS.index(ch) for ch in text.lower())
        else:
            raise ValueError(f"cannot parse word {text!r}")
        if k is None:
            k = max(syms, default=0) + 1
        return cls(syms, k)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        if self.k <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)

    def to_letters(self) -> str:
        if self.k > 26:
            raise ValueError("alphabet too large for letter display")
        return "".join(_LETTERS[s] for s in self.symbols)

    def to_bytes(self) -> bytes:
        if self.k > 256:
            raise ValueError("alphabet too large for byte representation")
        return bytes(self.symbols)


@dataclass(frozen=True)
class BorderProfile:
    """All border lengths of a word, in increasing order."""

    borders: tuple[int, ...]
    is_bordered: bool
    shortest: int | None


@dataclass(frozen=True)
class SquareWitness:
    start: int
    period: int
    circular: bool


@dataclass(frozen=True)
class OverlapWitness:
    start: int
    period: int
    circular: bool


def conjugate(w: Word, i: int) -> Word:
    """The i'th cyclic shift of w (first i symbols moved to the end)."""
    n = len(w)
    if n == 0:
        return w
    r = i % n
    return Word(w.symbols[r:] + w.symbols[:r], w.k)


def border_profile(w: Word) -> BorderProfile:
    """Every length ell in (0, |w|) with w[0:ell] == w[|w|-ell:]."""
    s = w.symbols
    n = len(s)
    borders = tuple(ell for ell in range(1, n) if s[:ell] == s[n - ell :])
    return BorderProfile(borders, bool(borders), min(borders) if borders else None)


def is_bordered(w: Word) -> bool:
    """Bordered iff there is a border of length <= |w|/2 (Lyndon-Schutzenberger)."""
    s = w.symbols
    n = len(s)
    return any(s[:ell] == s[n - ell :] for ell in range(1, n // 2 + 1))


def nuc(w: Word) -> int:
    """Number of unbordered conjugates of w (counted over shift indices)."""
    if len(w) == 0:
        raise ValueError("nuc is undefined for the empty word")
    return _kernels.nuc_word(w.to_bytes())


def border_correlation(w: Word) -> str:
    """beta(w): position i is 'u' if the i'th cyclic shift is unbordered, else 'b'."""
    if len(w) == 0:
        raise ValueError("border correlation is undefined for the empty word")
    return "".join("b" if is_bordered(conjugate(w, i)) else "u" for i in range(len(w)))


def square_check(w: Word, circular: bool = False) -> SquareWitness | None:
    """A square witness (least (i, p) lexicographically) or None.

    Circular mode scans the doubled word for squares of period p <= |w|/2
    starting at positions < |w|, i.e. squares of some conjugate.
    """
    hit = _kernels.first_square(w.to_bytes(), circular)
    if hit is None:
        return None
    return SquareWitness(hit[0], hit[1], circular)


def overlap_check(w: Word, circular: bool = False) -> OverlapWitness | None:
    """An overlap witness: least (i, p) with w[i..i+p] == w[i+p..i+2p], or None."""
    hit = _kernels.first_overlap(w.to_bytes(), circular)
    if hit is None:
        return None
    return OverlapWitness(hit[0], hit[1], circular)


def is_primitive(w: Word) -> bool:
    """True iff w is not a proper power (w occurs in ww only at 0 and |w|)."""
    n = len(w)
    if n == 0:
        raise ValueError("primitivity is undefined for the empty word")
    b = w.to_bytes()
    return (b + b).find(b, 1) == n


def mnuc_exhaustive(
    k: int,
    n: int,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> tuple[int, list[Word]]:
    """Exact maximum of nuc over all length-n words over k letters.

    Enumerates one representative per conjugacy class (nuc is a conjugacy
    invariant); witnesses are the lexicographically least achievers, at most
    `witness_cap` of them.  Raises EnumerationBudgetError if k**n exceeds
    the budget rather than returning a partial answer.
    """
    if n < 1:
        raise ValueError("mnuc is undefined for length 0")
    if k < 1:
        raise ValueError("alphabet size must be >= 1")
    if k**n > budget:
        raise EnumerationBudgetError(budget, f"k**n = {k**n}")
    best, witnesses, _ = _kernels.mnuc_scan(k, n, witness_cap)
    return best, [Word(tuple(b), k) for b in witnesses]
