"""Pure-Python kernels (numpy-vectorized) for the hot enumeration loops.

Same contract as the compiled backend in ``_speedups``; the selector in
``_kernels`` picks whichever is available.  Words are bytes; enumerations
encode a length-n word over the alphabet {0..k-1} as the integer whose
base-k digits, most significant first, are the word's symbols.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_CHUNK = 1 << 20


def _digits(ids: np.ndarray, k: int, n: int) -> np.ndarray:
    """Decode word ids into a (len, n) symbol matrix, msd first."""
    out = np.empty((ids.shape[0], n), dtype=np.uint8)
    rest = ids.copy()
    for j in range(n - 1, -1, -1):
        out[:, j] = rest % k
        rest //= k
    return out


def _id_to_bytes(wid: int, k: int, n: int) -> bytes:
    syms = []
    for _ in range(n):
        syms.append(wid % k)
        wid //= k
    return bytes(reversed(syms))


def _rot(ids: np.ndarray, k: int, n: int, r: int) -> np.ndarray:
    """Cyclic shift by r: first r symbols moved to the end."""
    if r == 0:
        return ids
    hi = k ** (n - r)
    return (ids % hi) * (k**r) + ids // hi


def _unbordered(ids: np.ndarray, k: int, n: int) -> np.ndarray:
    """No border of length <= n//2 (equivalent to unbordered)."""
    unb = np.ones(ids.shape[0], dtype=bool)
    for ell in range(1, n // 2 + 1):
        unb &= (ids // k ** (n - ell)) != (ids % k**ell)
    return unb


def _chunks(total: int):
    start = 0
    while start < total:
        stop = min(start + _CHUNK, total)
        yield np.arange(start, stop, dtype=np.int64)
        start = stop


# ---------------------------------------------------------------------------
# single-word operations


def nuc_word(w: bytes) -> int:
    """Number of unbordered cyclic shifts of w."""
    n = len(w)
    if n == 0:
        raise ValueError("empty word")
    d = w + w
    count = 0
    for r in range(n):
        rot = d[r : r + n]
        for ell in range(1, n // 2 + 1):
            if rot[:ell] == rot[n - ell :]:
                break
        else:
            count += 1
    return count


def _square_candidates(d: np.ndarray, p: int, i_hi: int, run: int):
    """Start positions i < i_hi where d[i:i+run] == d[i+p:i+p+run] elementwise."""
    eq = d[:-p] == d[p:]
    if eq.shape[0] < run:
        return None
    cs = np.concatenate(([0], np.cumsum(eq, dtype=np.int32)))
    full = cs[run:] - cs[:-run] == run
    hi = min(i_hi, full.shape[0])
    if hi <= 0:
        return None
    idx = np.nonzero(full[:hi])[0]
    return idx if idx.size else None


def first_square(w: bytes, circular: bool):
    """Lexicographically least (i, p) with a square of period p at i, or None."""
    n = len(w)
    if n < 2:
        return None
    d = np.frombuffer(w + w if circular else w, dtype=np.uint8)
    best = None
    for p in range(1, n // 2 + 1):
        i_hi = n if circular else n - 2 * p + 1
        idx = _square_candidates(d, p, i_hi, p)
        if idx is not None:
            cand = (int(idx[0]), p)
            if best is None or cand < best:
                best = cand
    return best


def first_overlap(w: bytes, circular: bool):
    """Least (i, p) with w[i..i+p] == w[i+p..i+2p] (p+1 symbols), or None."""
    n = len(w)
    if n < 3:
        return None
    d = np.frombuffer(w + w if circular else w, dtype=np.uint8)
    best = None
    p_max = (n - 1) // 2
    for p in range(1, p_max + 1):
        i_hi = n if circular else n - 2 * p
        idx = _square_candidates(d, p, i_hi, p + 1)
        if idx is not None:
            cand = (int(idx[0]), p)
            if best is None or cand < best:
                best = cand
    return best


def circ_square_exists(w: bytes) -> bool:
    """Does some conjugate of w contain a square?"""
    n = len(w)
    if n < 2:
        return False
    d = np.frombuffer(w + w, dtype=np.uint8)
    for p in range(1, n // 2 + 1):
        if _square_candidates(d, p, n, p) is not None:
            return True
    return False


# ---------------------------------------------------------------------------
# exhaustive scans over all k^n words


def count_unbordered(k: int, n: int) -> int:
    """Number of unbordered length-n words over a k-letter alphabet."""
    if n == 0:
        return 0
    total = 0
    for ids in _chunks(k**n):
        total += int(np.count_nonzero(_unbordered(ids, k, n)))
    return total


def _nuc_vector(ids: np.ndarray, k: int, n: int) -> np.ndarray:
    nucs = np.zeros(ids.shape[0], dtype=np.int32)
    for r in range(n):
        nucs += _unbordered(_rot(ids, k, n, r), k, n)
    return nucs


def sum_nuc(k: int, n: int) -> int:
    """Sum of nuc(w) over every length-n word over k letters."""
    total = 0
    for ids in _chunks(k**n):
        total += int(_nuc_vector(ids, k, n).sum())
    return total


def nuc_histogram(k: int, n: int) -> list[int]:
    """hist[i] = number of length-n words with exactly i unbordered conjugates."""
    hist = np.zeros(n + 1, dtype=np.int64)
    for ids in _chunks(k**n):
        hist += np.bincount(_nuc_vector(ids, k, n), minlength=n + 1)
    return [int(x) for x in hist]


def _canonical(ids: np.ndarray, k: int, n: int) -> np.ndarray:
    canon = np.ones(ids.shape[0], dtype=bool)
    for r in range(1, n):
        canon &= ids <= _rot(ids, k, n, r)
    return canon


def mnuc_scan(k: int, n: int, witness_cap: int):
    """Exact max of nuc over all length-n words, with canonical witnesses.

    Enumerates one representative per conjugacy class (the lexicographically
    least rotation).  Returns (max_nuc, witnesses, classes_at_max) where the
    witnesses are the first `witness_cap` canonical achievers in lex order.
    """
    best = -1
    witnesses: list[bytes] = []
    at_max = 0
    for ids in _chunks(k**n):
        sel = ids[_canonical(ids, k, n)]
        if sel.size == 0:
            continue
        nucs = _nuc_vector(sel, k, n)
        m = int(nucs.max())
        if m > best:
            best = m
            witnesses = []
            at_max = 0
        if m >= best:
            hit = sel[nucs == best]
            at_max += int(hit.size)
            for wid in hit[: max(0, witness_cap - len(witnesses))]:
                witnesses.append(_id_to_bytes(int(wid), k, n))
    return best, witnesses, at_max


def _unbordered_matrix(ids: np.ndarray, n: int) -> np.ndarray:
    cols = [_unbordered(_rot(ids, 2, n, r), 2, n) for r in range(n)]
    return np.stack(cols, axis=1)


def beta_uu_scan(n: int):
    """Binary words whose border correlation has circularly adjacent u's.

    Returns (count, lexicographically least example or None).
    """
    count = 0
    example = None
    for ids in _chunks(2**n):
        unb = _unbordered_matrix(ids, n)
        viol = (unb & np.roll(unb, -1, axis=1)).any(axis=1)
        c = int(np.count_nonzero(viol))
        if c and example is None:
            example = _id_to_bytes(int(ids[viol][0]), 2, n)
        count += c
    return count, example


def _circ_has_square_vector(ids: np.ndarray, k: int, n: int) -> np.ndarray:
    has = np.zeros(ids.shape[0], dtype=bool)
    for p in range(1, n // 2 + 1):
        kp = k**p
        for q in range(n):
            v = _rot(ids, k, n, q) // k ** (n - 2 * p)
            has |= (v // kp) == (v % kp)
    return has


def prop1_counterexample(k: int, n: int):
    """First word where circular squarefreeness and all-shifts-unbordered differ."""
    for ids in _chunks(k**n):
        allunb = np.ones(ids.shape[0], dtype=bool)
        for r in range(n):
            allunb &= _unbordered(_rot(ids, k, n, r), k, n)
        sqfree = ~_circ_has_square_vector(ids, k, n)
        bad = sqfree != allunb
        if bad.any():
            return _id_to_bytes(int(ids[bad][0]), k, n)
    return None


def bordered_short_counterexample(n: int):
    """First binary word bordered but with no border of length <= n/2 (or vice versa)."""
    k = 2
    for ids in _chunks(2**n):
        any_border = np.zeros(ids.shape[0], dtype=bool)
        short_border = np.zeros(ids.shape[0], dtype=bool)
        for ell in range(1, n):
            eq = (ids // k ** (n - ell)) == (ids % k**ell)
            any_border |= eq
            if 2 * ell <= n:
                short_border |= eq
        bad = any_border != short_border
        if bad.any():
            return _id_to_bytes(int(ids[bad][0]), 2, n)
    return None


def nonprimitive_nuc_counterexample(n: int):
    """First non-primitive binary word with a nonzero nuc."""
    divisors = [d for d in range(1, n) if n % d == 0]
    for ids in _chunks(2**n):
        nonprim = np.zeros(ids.shape[0], dtype=bool)
        for d in divisors:
            nonprim |= _rot(ids, 2, n, d) == ids
        if not nonprim.any():
            continue
        nucs = _nuc_vector(ids[nonprim], 2, n)
        if (nucs > 0).any():
            return _id_to_bytes(int(ids[nonprim][nucs > 0][0]), 2, n)
    return None


# ---------------------------------------------------------------------------
# scans over windows of a fixed squarefree background sequence


def theorem2_first_witness(c: bytes, n: int, s_bound: int):
    """First (s, form) making factor+suffix circularly squarefree, or (-1, -1).

    form 0: c[s : s+n-3] + 021, form 1: c[s : s+n-4] + 2120.  Scans s
    ascending, trying form 0 before form 1 at each s.
    """
    if n <= 3:
        raise ValueError("n must exceed 3")
    if len(c) < s_bound + n:
        raise ValueError("background prefix too short for the requested scan")
    suf_a = bytes((0, 2, 1))
    suf_b = bytes((2, 1, 2, 0))
    for s in range(s_bound + 1):
        if not circ_square_exists(c[s : s + n - 3] + suf_a):
            return s, 0
        if not circ_square_exists(c[s : s + n - 4] + suf_b):
            return s, 1
    return -1, -1


def circsf_first_witness(c: bytes, n: int, s_bound: int) -> int:
    """First s <= s_bound with c[s : s+n] circularly squarefree, else -1.

    Requires every window of c to be squarefree as a plain (linear) word, so
    only circular runs of period matches need checking.
    """
    if n <= 0:
        return 0
    if len(c) < s_bound + n:
        raise ValueError("background prefix too short for the requested scan")
    arr = np.frombuffer(c, dtype=np.uint8)
    windows = np.lib.stride_tricks.sliding_window_view(arr, n)[: s_bound + 1]
    surv = np.arange(windows.shape[0])
    if n == 1:
        return 0
    for p in range(1, n // 2 + 1):
        rows = windows[surv]
        eq = rows == np.roll(rows, -p, axis=1)
        mm = np.concatenate([eq, eq[:, : p - 1]], axis=1).astype(np.int32)
        cs = np.cumsum(mm, axis=1)
        runs = cs[:, p - 1 :].copy()
        runs[:, 1:] -= cs[:, :-p]
        found = (runs[:, :n] == p).any(axis=1)
        surv = surv[~found]
        if surv.size == 0:
            return -1
    return int(surv[0])
