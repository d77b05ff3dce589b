"""Automatic sequences: morphism fixed points, the Thue-Morse word t, the
ternary Thue-Morse word c (three independent constructions), and DFAOs.

DFAOs read the base-k digits of n most significant first; 0 is represented
by the empty string, so the output at the initial state is the value at 0.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_PREFIX_CAP = 1 << 24


@dataclass(frozen=True)
class Morphism:
    """A substitution sending symbol s to the word images[s]."""

    images: tuple[tuple[int, ...], ...]

    @property
    def arity(self) -> int:
        return len(self.images)

    def __post_init__(self):
        k = len(self.images)
        for img in self.images:
            if any(s < 0 or s >= k for s in img):
                raise ValueError("morphism image symbol outside its own alphabet")

    def apply(self, word: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for s in word:
            out.extend(self.images[s])
        return tuple(out)

    def is_uniform(self, k: int) -> bool:
        return all(len(img) == k for img in self.images)

    def prolongable_on(self, seed: int) -> bool:
        img = self.images[seed]
        return len(img) >= 2 and img[0] == seed


@dataclass(frozen=True)
class Coding:
    """A symbol-to-symbol output map."""

    table: tuple[int, ...]

    def __call__(self, s: int) -> int:
        return self.table[s]


def parse_morphism(text: str) -> Morphism:
    """Parse the one-rule-per-line format ``symbol -> image``."""
    rules: dict[int, tuple[int, ...]] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, _, rhs = line.partition("->")
        rules[int(lhs.strip())] = tuple(int(ch) for ch in rhs.strip())
    if sorted(rules) != list(range(len(rules))):
        raise ValueError("morphism rules must cover symbols 0..k-1")
    return Morphism(tuple(rules[s] for s in range(len(rules))))


def parse_coding(text: str) -> Coding:
    m = parse_morphism(text)
    if any(len(img) != 1 for img in m.images):
        raise ValueError("coding images must be single symbols")
    return Coding(tuple(img[0] for img in m.images))


def format_morphism(m: Morphism) -> str:
    return "\n".join(f"{s} -> {''.join(str(x) for x in img)}" for s, img in enumerate(m.images)) + "\n"


# The Thue-Morse morphism and the generators of the ternary Thue-Morse word.
MU = Morphism(((0, 1), (1, 0)))
PHI = Morphism(((0, 1), (2, 0), (2, 3), (0, 2)))
TAU = Coding((2, 1, 0, 1))


def fixed_point_prefix(m: Morphism, seed: int, length: int, cap: int = DEFAULT_PREFIX_CAP) -> tuple[int, ...]:
    """The length-`length` prefix of the fixed point of m starting at seed."""
    if length > cap:
        raise ValueError(f"requested prefix length {length} exceeds cap {cap}")
    if not m.prolongable_on(seed):
        raise ValueError(f"morphism is not prolongable on {seed}")
    word: tuple[int, ...] = (seed,)
    while len(word) < length:
        word = m.apply(word)
    return word[:length]


class _PrefixCache:
    """Lazily grown prefix of an infinite word."""

    def __init__(self, grow):
        self._grow = grow
        self._buf = b""

    def prefix(self, length: int) -> bytes:
        if len(self._buf) < length:
            self._buf = self._grow(length)
        return self._buf[:length]

    def __getitem__(self, i: int) -> int:
        return self.prefix(i + 1)[i]


def _grow_tm(length: int) -> bytes:
    word: tuple[int, ...] = (0,)
    while len(word) < length:
        word = MU.apply(word)
    return bytes(word)


_tm_cache = _PrefixCache(_grow_tm)


def thue_morse_prefix(length: int) -> bytes:
    """The length-`length` prefix of t = 01101001..., as bytes of 0/1."""
    return _tm_cache.prefix(length)


def _gap_count_prefix(length: int) -> bytes:
    """Ternary Thue-Morse via runs of 1s between consecutive 0s of t."""
    out = bytearray()
    t_len = 4 * length + 16
    t = thue_morse_prefix(t_len)
    zeros = [i for i, s in enumerate(t) if s == 0]
    while len(zeros) < length + 1:
        t_len *= 2
        t = thue_morse_prefix(t_len)
        zeros = [i for i, s in enumerate(t) if s == 0]
    for a, b in zip(zeros, zeros[1:]):
        out.append(b - a - 1)
        if len(out) == length:
            break
    return bytes(out)


_c_cache = _PrefixCache(_gap_count_prefix)


def ternary_tm_prefix(length: int, method: str = "gap-count") -> bytes:
    """Prefix of the ternary Thue-Morse word c = 210201...

    method: 'gap-count' (runs of 1s in t), 'coded-fixed-point' (tau of the
    fixed point of phi), or 'dfao' (evaluate the synthesized DFAO).
    """
    if method == "gap-count":
        return _c_cache.prefix(length)
    if method == "coded-fixed-point":
        fp = fixed_point_prefix(PHI, 0, length)
        return bytes(TAU(s) for s in fp)
    if method == "dfao":
        d = ternary_tm_dfao()
        return bytes(d.eval(i) for i in range(length))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class Dfao:
    """Deterministic finite automaton with output, reading (n)_k msd-first.

    transition(initial, 0) == initial is enforced so that evaluation is
    insensitive to leading zeros (0 itself reads as the empty string).
    """

    delta: tuple[tuple[int, ...], ...]
    out: tuple[int, ...]
    initial: int = 0

    def __post_init__(self):
        n = len(self.delta)
        if len(self.out) != n:
            raise ValueError("output table size mismatch")
        width = len(self.delta[0]) if n else 0
        for row in self.delta:
            if len(row) != width:
                raise ValueError("transition table is ragged")
            if any(q < 0 or q >= n for q in row):
                raise ValueError("transition target out of range")
        if n and self.delta[self.initial][0] != self.initial:
            raise ValueError("leading-zero invariant violated: delta(initial, 0) != initial")

    @property
    def base(self) -> int:
        return len(self.delta[0]) if self.delta else 0

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def eval(self, n: int) -> int:
        """Feed the canonical base-k digits of n, msd first; empty string for 0."""
        q = self.initial
        for d in _digits(n, self.base):
            q = self.delta[q][d]
        return self.out[q]


def _digits(n: int, base: int) -> list[int]:
    if n == 0:
        return []
    ds: list[int] = []
    while n:
        ds.append(n % base)
        n //= base
    ds.reverse()
    return ds


def dfao_eval(d: Dfao, n: int) -> int:
    return d.eval(n)


def dfao_from_uniform_morphism(m: Morphism, coding: Coding, seed: int = 0) -> Dfao:
    """The DFAO computing coding(fixed point of the k-uniform morphism m).

    States are the morphism's symbols, delta(q, d) = m(q)[d]; evaluating at n
    yields symbol n of the coded fixed point.
    """
    k = len(m.images[0])
    if not m.is_uniform(k):
        raise ValueError("morphism is not uniform")
    if m.images[seed][0] != seed:
        raise ValueError("seed symbol must satisfy delta(seed, 0) = seed")
    delta = tuple(tuple(img) for img in m.images)
    out = tuple(coding(s) for s in range(m.arity))
    return Dfao(delta, out, seed)


def tm_dfao() -> Dfao:
    """The 2-state DFAO of the Thue-Morse word."""
    return dfao_from_uniform_morphism(MU, Coding((0, 1)))


def ternary_tm_dfao() -> Dfao:
    """The 4-state DFAO of the ternary Thue-Morse word."""
    return dfao_from_uniform_morphism(PHI, TAU)
