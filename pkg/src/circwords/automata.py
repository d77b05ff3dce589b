"""Multi-track DFAs over padded base-2 tuple alphabets.

A TrackDfa reads one bit per track per step, most significant bits first,
with all tracks zero-padded on the left to a common length.  Languages are
kept padding-closed: prepending the all-zeros letter never changes
acceptance, so an automaton decides a predicate on natural-number values.

State numbering after minimize() is breadth-first from the initial state in
letter order, which makes minimal automata canonical (equal languages give
byte-identical tables).
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

import numpy as np

from circwords.errors import StateCapError
from circwords.sequences import Dfao


def default_state_cap() -> int:
    return int(os.environ.get("CIRCWORDS_STATE_CAP", str(1 << 20)))


MINIMIZE_THRESHOLD = 4096

_OPS = {
    "and": lambda x, y: x & y,
    "or": lambda x, y: x | y,
    "implies": lambda x, y: ~x | y,
    "iff": lambda x, y: x == y,
}


class TrackDfa:
    """Deterministic, total automaton over 2**width digit tuples."""

    __slots__ = ("tracks", "delta", "accept", "initial")

    def __init__(self, tracks, delta, accept, initial=0):
        self.tracks = tuple(tracks)
        if list(self.tracks) != sorted(set(self.tracks)):
            raise ValueError("track names must be sorted and distinct")
        self.delta = np.ascontiguousarray(delta, dtype=np.int32)
        self.accept = np.ascontiguousarray(accept, dtype=bool)
        self.initial = int(initial)
        n = self.delta.shape[0]
        if self.delta.ndim != 2 or self.delta.shape[1] != 1 << len(self.tracks):
            raise ValueError("transition table shape does not match track count")
        if self.accept.shape != (n,):
            raise ValueError("acceptance vector shape mismatch")
        if n == 0 or not (0 <= self.initial < n):
            raise ValueError("initial state out of range")
        if self.delta.min(initial=0) < 0 or self.delta.max(initial=0) >= n:
            raise ValueError("transition target out of range")

    # -- basic facts --------------------------------------------------------

    @property
    def width(self) -> int:
        return len(self.tracks)

    @property
    def n_states(self) -> int:
        return int(self.delta.shape[0])

    @property
    def n_letters(self) -> int:
        return 1 << self.width

    def __repr__(self):
        return f"TrackDfa(tracks={self.tracks}, states={self.n_states})"

    # -- running words ------------------------------------------------------

    def run(self, letters) -> int:
        q = self.initial
        for a in letters:
            q = int(self.delta[q, a])
        return q

    def accepts(self, letters) -> bool:
        return bool(self.accept[self.run(letters)])

    def letters_for(self, values: dict[str, int]) -> list[int]:
        """Encode a variable assignment as the minimal padded letter word."""
        missing = [t for t in self.tracks if t not in values]
        if missing:
            raise KeyError(f"missing values for tracks {missing}")
        width = max((values[t].bit_length() for t in self.tracks), default=0)
        out = []
        for pos in range(width - 1, -1, -1):
            letter = 0
            for j, t in enumerate(self.tracks):
                letter |= ((values[t] >> pos) & 1) << (self.width - 1 - j)
            out.append(letter)
        return out

    def accepts_assignment(self, values: dict[str, int]) -> bool:
        return self.accepts(self.letters_for(values))

    def decode_word(self, letters) -> dict[str, int]:
        vals = {t: 0 for t in self.tracks}
        for a in letters:
            for j, t in enumerate(self.tracks):
                vals[t] = (vals[t] << 1) | ((a >> (self.width - 1 - j)) & 1)
        return vals

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, tracks, value: bool) -> "TrackDfa":
        return cls(tuple(sorted(tracks)), [[0] * (1 << len(tracks))], [value])

    @classmethod
    def universal(cls, tracks) -> "TrackDfa":
        return cls.constant(tracks, True)

    @classmethod
    def empty_language(cls, tracks) -> "TrackDfa":
        return cls.constant(tracks, False)

    # -- boolean combinations ------------------------------------------------

    def negate(self) -> "TrackDfa":
        return TrackDfa(self.tracks, self.delta, ~self.accept, self.initial)

    def combine(self, other: "TrackDfa", op: str, cap: int | None = None) -> "TrackDfa":
        """Product automaton for a boolean combination, tracks aligned by name.

        Tracks missing on one side are cylindrified (that operand ignores the
        extra bits).  Only states reachable in the product are built.
        """
        if op not in _OPS:
            raise ValueError(f"unknown boolean op {op!r}")
        cap = default_state_cap() if cap is None else cap
        tracks = tuple(sorted(set(self.tracks) | set(other.tracks)))
        map_a = _restriction_map(tracks, self.tracks)
        map_b = _restriction_map(tracks, other.tracks)
        nb = other.n_states
        init = self.initial * nb + other.initial
        n_letters = 1 << len(tracks)
        if self.n_states * nb <= min(cap, 1 << 16):
            # small enough to build the full grid in one shot
            qa = np.repeat(np.arange(self.n_states, dtype=np.int64), nb)
            qb = np.tile(np.arange(nb, dtype=np.int64), self.n_states)
            delta = np.empty((self.n_states * nb, n_letters), dtype=np.int32)
            for letter in range(n_letters):
                delta[:, letter] = self.delta[qa, map_a[letter]].astype(np.int64) * nb + other.delta[qb, map_b[letter]]
            accept = _OPS[op](self.accept[qa], other.accept[qb])
            return TrackDfa(tracks, delta, accept, init).reachable()
        seen = np.array([init], dtype=np.int64)
        frontier = seen
        while frontier.size:
            qa, qb = frontier // nb, frontier % nb
            succ = np.empty((frontier.size, n_letters), dtype=np.int64)
            for letter in range(n_letters):
                succ[:, letter] = (
                    self.delta[qa, map_a[letter]].astype(np.int64) * nb
                    + other.delta[qb, map_b[letter]]
                )
            cand = np.unique(succ)
            new = cand[~np.isin(cand, seen, assume_unique=True)]
            seen = np.union1d(seen, new)
            if seen.size > cap:
                raise StateCapError(cap, f"product of {self.n_states} x {other.n_states} states")
            frontier = new
        qa, qb = seen // nb, seen % nb
        delta = np.empty((seen.size, n_letters), dtype=np.int32)
        for letter in range(n_letters):
            codes = self.delta[qa, map_a[letter]].astype(np.int64) * nb + other.delta[qb, map_b[letter]]
            delta[:, letter] = np.searchsorted(seen, codes)
        accept = _OPS[op](self.accept[qa], other.accept[qb])
        initial = int(np.searchsorted(seen, init))
        return TrackDfa(tracks, delta, accept, initial)

    def cylindrify(self, tracks) -> "TrackDfa":
        """Extend to a superset of tracks; the new bits are ignored."""
        tracks = tuple(sorted(set(tracks) | set(self.tracks)))
        if tracks == self.tracks:
            return self
        mp = _restriction_map(tracks, self.tracks)
        delta = self.delta[:, mp]
        return TrackDfa(tracks, delta, self.accept, self.initial)

    # -- quantification ------------------------------------------------------

    def project(self, track: str, cap: int | None = None) -> "TrackDfa":
        """Existentially quantify one track (erase it, then determinize).

        Initial states are saturated under all-zeros letters before the
        subset construction: a witness for the erased track may need more
        digits than the remaining tracks, and those extra steps appear as
        leading zeros on what is left.  This keeps the result padding-closed
        and correct on canonical representations.
        """
        if track not in self.tracks:
            raise ValueError(f"track {track!r} not present")
        cap = default_state_cap() if cap is None else cap
        j0 = self.tracks.index(track)
        new_tracks = tuple(t for t in self.tracks if t != track)
        w_new = len(new_tracks)
        # full letters for (reduced letter, erased bit)
        f0 = np.empty(1 << w_new, dtype=np.int64)
        f1 = np.empty(1 << w_new, dtype=np.int64)
        hi_shift = self.width - 1 - j0
        for red in range(1 << w_new):
            high = red >> hi_shift
            low = red & ((1 << hi_shift) - 1)
            full = (high << (hi_shift + 1)) | low
            f0[red] = full
            f1[red] = full | (1 << hi_shift)
        # zero-closure of the initial state (leading zeros, any erased digit)
        init = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            for nxt in (int(self.delta[q, f0[0]]), int(self.delta[q, f1[0]])):
                if nxt not in init:
                    init.add(nxt)
                    stack.append(nxt)
        start = tuple(sorted(init))
        ids: dict[tuple[int, ...], int] = {start: 0}
        order = [start]
        delta_rows: list[list[int]] = []
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            row = []
            for red in range(1 << w_new):
                succ = set()
                for q in subset:
                    succ.add(int(self.delta[q, f0[red]]))
                    succ.add(int(self.delta[q, f1[red]]))
                key = tuple(sorted(succ))
                nxt = ids.get(key)
                if nxt is None:
                    nxt = len(order)
                    if nxt >= cap:
                        raise StateCapError(cap, f"determinization while projecting {track!r}")
                    ids[key] = nxt
                    order.append(key)
                    queue.append(key)
                row.append(nxt)
            delta_rows.append(row)
        accept = np.array([any(self.accept[q] for q in subset) for subset in order], dtype=bool)
        return TrackDfa(new_tracks, np.array(delta_rows, dtype=np.int32), accept, 0)

    # -- minimization and equivalence ----------------------------------------

    def reachable(self) -> "TrackDfa":
        n = self.n_states
        reach = np.zeros(n, dtype=bool)
        reach[self.initial] = True
        frontier = np.array([self.initial])
        while frontier.size:
            succ = np.unique(self.delta[frontier].ravel())
            new = succ[~reach[succ]]
            reach[new] = True
            frontier = new
        if reach.all():
            return self
        remap = np.cumsum(reach) - 1
        return TrackDfa(
            self.tracks,
            remap[self.delta[reach]],
            self.accept[reach],
            int(remap[self.initial]),
        )

    def minimize(self) -> "TrackDfa":
        """Unique minimal DFA for the language, BFS-canonical state order."""
        a = self.reachable()
        n = a.n_states
        classes = a.accept.astype(np.int64)
        n_classes = int(classes.max(initial=0)) + 1
        while True:
            sig = classes
            for letter in range(a.n_letters):
                key = sig * (n + 1) + classes[a.delta[:, letter]]
                _, sig = np.unique(key, return_inverse=True)
            new_count = int(sig.max(initial=0)) + 1
            if new_count == n_classes:
                classes = sig
                break
            classes, n_classes = sig, new_count
        reps: dict[int, int] = {}
        for q in range(n):
            reps.setdefault(int(classes[q]), q)
        # breadth-first renumbering from the initial class, letter order
        start = int(classes[a.initial])
        number = {start: 0}
        order = [start]
        queue = deque([start])
        while queue:
            c = queue.popleft()
            rep = reps[c]
            for letter in range(a.n_letters):
                t = int(classes[a.delta[rep, letter]])
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
                    queue.append(t)
        delta = np.empty((len(order), a.n_letters), dtype=np.int32)
        accept = np.empty(len(order), dtype=bool)
        for new_q, c in enumerate(order):
            rep = reps[c]
            accept[new_q] = a.accept[rep]
            for letter in range(a.n_letters):
                delta[new_q, letter] = number[int(classes[a.delta[rep, letter]])]
        return TrackDfa(a.tracks, delta, accept, 0)

    def equivalent(self, other: "TrackDfa") -> bool:
        """Language equality (same track names required)."""
        if self.tracks != other.tracks:
            raise ValueError("automata compare over identical track names")
        a, b = self.minimize(), other.minimize()
        return (
            a.n_states == b.n_states
            and bool((a.accept == b.accept).all())
            and bool((a.delta == b.delta).all())
        )

    # -- decision and enumeration ---------------------------------------------

    def decide(self):
        """('empty', None) or ('nonempty', least witness assignment)."""
        parent: dict[int, tuple[int, int] | None] = {self.initial: None}
        queue = deque([self.initial])
        hit = None
        if self.accept[self.initial]:
            hit = self.initial
        while queue and hit is None:
            q = queue.popleft()
            for letter in range(self.n_letters):
                t = int(self.delta[q, letter])
                if t not in parent:
                    parent[t] = (q, letter)
                    if self.accept[t]:
                        hit = t
                        break
                    queue.append(t)
        if hit is None:
            return "empty", None
        letters: list[int] = []
        q = hit
        while parent[q] is not None:
            q, letter = parent[q]
            letters.append(letter)
        letters.reverse()
        return "nonempty", self.decode_word(letters)

    def enumerate_accepted(self, limit: int):
        """Accepted assignments in increasing bit-length, then lexicographic.

        Only canonical joint representations are produced: the first letter
        is never the all-zeros tuple (the all-zero assignment comes from the
        empty word).
        """
        out: list[tuple[int, ...]] = []
        if limit <= 0:
            return out
        if self.accept[self.initial]:
            out.append(tuple(0 for _ in self.tracks))
            if len(out) >= limit:
                return out
        n = self.n_states
        alive = [self.accept.copy()]

        def ensure(r: int):
            while len(alive) <= r:
                prev = alive[-1]
                nxt = np.zeros(n, dtype=bool)
                for letter in range(self.n_letters):
                    nxt |= prev[self.delta[:, letter]]
                alive.append(nxt)

        seen_fronts: dict[bytes, int] = {}
        front = np.zeros(n, dtype=bool)
        front[self.initial] = True
        length = 1
        while True:
            # frontier of states reachable by words with a nonzero first letter
            if length == 1:
                nz = np.zeros(n, dtype=bool)
                for letter in range(1, self.n_letters):
                    nz[self.delta[self.initial, letter]] = True
                front = nz
            else:
                nxt = np.zeros(n, dtype=bool)
                idx = np.nonzero(front)[0]
                for letter in range(self.n_letters):
                    nxt[self.delta[idx, letter]] = True
                front = nxt
            if not front.any():
                return out
            key = front.tobytes()
            if (front & self.accept).any():
                seen_fronts.clear()
            else:
                if key in seen_fronts:
                    return out  # cycling with no acceptance ahead at these lengths
                seen_fronts[key] = length
                length += 1
                continue
            # DFS in letter order for words of this exact length
            ensure(length)
            stack: list[tuple[int, int, list[int]]] = []
            first = range(1, self.n_letters)
            for letter in first:
                t = int(self.delta[self.initial, letter])
                if alive[length - 1][t]:
                    stack.append((t, 1, [letter]))
            # stack is LIFO; push in reverse to pop in ascending letter order
            stack.reverse()
            while stack:
                q, depth, word = stack.pop()
                if depth == length:
                    if self.accept[q]:
                        out.append(tuple(self.decode_word(word)[t] for t in self.tracks))
                        if len(out) >= limit:
                            return out
                    continue
                rem = length - depth - 1
                for letter in range(self.n_letters - 1, -1, -1):
                    t = int(self.delta[q, letter])
                    if alive[rem][t]:
                        stack.append((t, depth + 1, word + [letter]))
            length += 1

    # -- counting -------------------------------------------------------------

    def to_linear_rep(self) -> "LinearRep":
        if self.width != 1:
            raise ValueError("linear representation requires a single track")
        n = self.n_states
        mats = []
        for digit in (0, 1):
            m = [[0] * n for _ in range(n)]
            for q in range(n):
                m[q][int(self.delta[q, digit])] = 1
            mats.append(m)
        init = [1 if q == self.initial else 0 for q in range(n)]
        final = [1 if self.accept[q] else 0 for q in range(n)]
        return LinearRep((mats[0], mats[1]), init, final)

    def count_by_bitlength(self, n: int) -> int:
        """Accepted values in [2**(n-1), 2**n), by exact transfer-matrix products."""
        if self.width != 1:
            raise ValueError("count_by_bitlength requires a single track")
        if n == 0:
            return int(self.accept[self.initial])
        rep = self.to_linear_rep()
        vec = _vec_mat(rep.initial, rep.matrices[1])
        full = _mat_add(rep.matrices[0], rep.matrices[1])
        for _ in range(n - 1):
            vec = _vec_mat(vec, full)
        return sum(v * f for v, f in zip(vec, rep.final))


@dataclass(frozen=True)
class LinearRep:
    """Per-digit transition-count matrices with initial/final vectors."""

    matrices: tuple[list[list[int]], list[list[int]]]
    initial: list[int]
    final: list[int]


def _vec_mat(vec, mat):
    n = len(mat[0])
    out = [0] * n
    for i, v in enumerate(vec):
        if v:
            row = mat[i]
            for j in range(n):
                out[j] += v * row[j]
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _restriction_map(all_tracks, sub_tracks) -> np.ndarray:
    """For each letter over all_tracks, the letter restricted to sub_tracks."""
    w_all = len(all_tracks)
    idx = {t: i for i, t in enumerate(all_tracks)}
    positions = [idx[t] for t in sub_tracks]
    w_sub = len(sub_tracks)
    out = np.zeros(1 << w_all, dtype=np.int64)
    for letter in range(1 << w_all):
        v = 0
        for j, pos in enumerate(positions):
            bit = (letter >> (w_all - 1 - pos)) & 1
            v |= bit << (w_sub - 1 - j)
        out[letter] = v
    return out


def padding_violation(a: TrackDfa, max_len: int = 12, samples: int = 2000, seed: int = 0):
    """A letter word w with accept(w) != accept(0w), or None.

    Exhaustive when the word space is small, random otherwise.
    """
    import random

    rng = random.Random(seed)
    zero = 0

    def check(word) -> bool:
        return a.accepts(word) != a.accepts([zero] + list(word))

    total = sum(a.n_letters**length for length in range(max_len + 1))
    if total <= samples:
        words = []
        for length in range(max_len + 1):
            stack = [[]]
            for _ in range(length):
                stack = [w + [letter] for w in stack for letter in range(a.n_letters)]
            words.extend(stack)
    else:
        words = []
        for _ in range(samples):
            length = rng.randrange(max_len + 1)
            words.append([rng.randrange(a.n_letters) for _ in range(length)])
    for w in words:
        if check(w):
            return w
    return None


def accepted_value_set(a: TrackDfa, max_value: int) -> set[tuple[int, ...]]:
    """All accepted assignments with every track value <= max_value."""
    out: set[tuple[int, ...]] = set()
    from itertools import product as iproduct

    for vals in iproduct(range(max_value + 1), repeat=a.width):
        if a.accepts_assignment(dict(zip(a.tracks, vals))):
            out.add(vals)
    return out


# ---------------------------------------------------------------------------
# text exchange format (bit-exact; shared by TrackDfa and Dfao)


def save_automaton(a) -> str:
    lines = []
    if isinstance(a, TrackDfa):
        lines.append(("msd_2 " + " ".join(a.tracks)).rstrip())
        for q in range(a.n_states):
            lines.append(f"q{q} {int(a.accept[q])}")
            for letter in range(a.n_letters):
                bits = format(letter, f"0{a.width}b") if a.width else "-"
                lines.append(f"  {bits} -> q{a.delta[q, letter]}")
    elif isinstance(a, Dfao):
        lines.append(f"msd_{a.base}")
        for q in range(a.n_states):
            lines.append(f"q{q} {a.out[q]}")
            for digit in range(a.base):
                lines.append(f"  {digit} -> q{a.delta[q][digit]}")
    else:
        raise TypeError(f"cannot save {type(a).__name__}")
    return "\n".join(lines) + "\n"


def load_automaton(text: str):
    """Inverse of save_automaton.  Track names -> TrackDfa, else Dfao.

    Saved automata always have q0 initial.
    """
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty automaton file")
    head = lines[0].split()
    if not head[0].startswith("msd_"):
        raise ValueError("missing msd_<base> header")
    base = int(head[0][4:])
    tracks = tuple(head[1:])
    states: list[tuple[int, dict[str, int]]] = []
    cur: dict[str, int] | None = None
    value = None
    values = []
    for ln in lines[1:]:
        ln = ln.strip()
        if ln.startswith("q") and "->" not in ln:
            name, v = ln.split()
            if cur is not None:
                states.append((value, cur))
            value = int(v)
            cur = {}
        else:
            label, _, target = ln.partition("->")
            cur[label.strip()] = int(target.strip().lstrip("q"))
    if cur is not None:
        states.append((value, cur))
    labels = set(states[0][1]) if states else set()
    is_track = bool(tracks) or "-" in labels
    if is_track:
        if base != 2:
            raise ValueError("track automata are base 2")
        width = len(tracks)
        delta = []
        accept = []
        for value, row in states:
            accept.append(bool(value))
            delta.append([row[format(letter, f"0{width}b") if width else "-"] for letter in range(1 << width)])
        return TrackDfa(tracks, np.array(delta, dtype=np.int32), np.array(accept, dtype=bool), 0)
    delta = []
    out = []
    for value, row in states:
        out.append(value)
        delta.append(tuple(row[str(d)] for d in range(base)))
    return Dfao(tuple(delta), tuple(out), 0)


def to_dot(a, name: str = "automaton") -> str:
    """Graphviz rendering; accepting (or each output class) shown on the node."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=none, label=""];']
    if isinstance(a, TrackDfa):
        for q in range(a.n_states):
            shape = "doublecircle" if a.accept[q] else "circle"
            lines.append(f'  q{q} [shape={shape}, label="q{q}"];')
        lines.append(f"  __start -> q{a.initial};")
        for q in range(a.n_states):
            by_target: dict[int, list[str]] = {}
            for letter in range(a.n_letters):
                bits = format(letter, f"0{a.width}b") if a.width else "-"
                by_target.setdefault(int(a.delta[q, letter]), []).append(bits)
            for t, ls in sorted(by_target.items()):
                lines.append(f'  q{q} -> q{t} [label="{",".join(ls)}"];')
    else:
        for q in range(a.n_states):
            lines.append(f'  q{q} [shape=circle, label="q{q}/{a.out[q]}"];')
        lines.append(f"  __start -> q{a.initial};")
        for q in range(a.n_states):
            by_target = {}
            for d in range(a.base):
                by_target.setdefault(a.delta[q][d], []).append(str(d))
            for t, ls in sorted(by_target.items()):
                lines.append(f'  q{q} -> q{t} [label="{",".join(ls)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
