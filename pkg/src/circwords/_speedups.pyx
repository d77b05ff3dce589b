# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot enumeration loops (see _kernels_py for the
pure fallback with the same contract)."""

from libc.stdlib cimport free, malloc
from libc.string cimport memcmp, memcpy

BACKEND = "compiled"


cdef inline bint _has_short_border(const unsigned char *w, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t ell
    for ell in range(1, n // 2 + 1):
        if memcmp(w, w + n - ell, ell) == 0:
            return True
    return False


cdef inline int _nuc_doubled(const unsigned char *d, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t r
    cdef int count = 0
    for r in range(n):
        if not _has_short_border(d + r, n):
            count += 1
    return count


cdef inline bint _advance(unsigned char *w, Py_ssize_t n, int k) noexcept nogil:
    cdef Py_ssize_t j = n - 1
    while j >= 0:
        w[j] += 1
        if w[j] < k:
            return True
        w[j] = 0
        j -= 1
    return False


cdef inline bint _circ_square(const unsigned char *d, Py_ssize_t n) noexcept nogil:
    """Square of period p <= n//2 starting below n in the doubled word d."""
    cdef Py_ssize_t p, j, run
    for p in range(1, n // 2 + 1):
        run = 0
        for j in range(n + p - 1):
            if d[j] == d[j + p]:
                run += 1
                if run >= p and j - p + 1 < n:
                    return True
            else:
                run = 0
    return False


def nuc_word(bytes w):
    """Number of unbordered cyclic shifts of w."""
    cdef Py_ssize_t n = len(w)
    if n == 0:
        raise ValueError("empty word")
    cdef bytes d = w + w
    return _nuc_doubled(<const unsigned char *> d, n)


def first_square(bytes w, bint circular):
    """Lexicographically least (i, p) with a square of period p at i, or None."""
    cdef Py_ssize_t n = len(w)
    if n < 2:
        return None
    cdef bytes dd = w + w if circular else w
    cdef const unsigned char *d = <const unsigned char *> dd
    cdef Py_ssize_t i, p, p_hi, i_hi
    i_hi = n if circular else n - 1
    for i in range(i_hi):
        p_hi = n // 2 if circular else (n - i) // 2
        for p in range(1, p_hi + 1):
            if memcmp(d + i, d + i + p, p) == 0:
                return (i, p)
    return None


def first_overlap(bytes w, bint circular):
    """Least (i, p) with w[i..i+p] == w[i+p..i+2p] (p+1 symbols), or None."""
    cdef Py_ssize_t n = len(w)
    if n < 3:
        return None
    cdef bytes dd = w + w if circular else w
    cdef const unsigned char *d = <const unsigned char *> dd
    cdef Py_ssize_t i, p, p_hi, i_hi
    i_hi = n if circular else n - 2
    for i in range(i_hi):
        p_hi = (n - 1) // 2 if circular else (n - i - 1) // 2
        for p in range(1, p_hi + 1):
            if memcmp(d + i, d + i + p, p + 1) == 0:
                return (i, p)
    return None


def circ_square_exists(bytes w):
    """Does some conjugate of w contain a square?"""
    cdef Py_ssize_t n = len(w)
    if n < 2:
        return False
    cdef bytes d = w + w
    return bool(_circ_square(<const unsigned char *> d, n))


def count_unbordered(int k, int n):
    """Number of unbordered length-n words over a k-letter alphabet."""
    if n == 0:
        return 0
    cdef unsigned char *w = <unsigned char *> malloc(n)
    if w == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    cdef long long count = 0
    for j in range(n):
        w[j] = 0
    with nogil:
        while True:
            if not _has_short_border(w, n):
                count += 1
            if not _advance(w, n, k):
                break
    free(w)
    return count


def sum_nuc(int k, int n):
    """Sum of nuc(w) over every length-n word over k letters."""
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    cdef long long total = 0
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    with nogil:
        while True:
            total += _nuc_doubled(d, n)
            if not _advance(d, n, k):
                break
            memcpy(d + n, d, n)
    free(d)
    return total


def nuc_histogram(int k, int n):
    """hist[i] = number of length-n words with exactly i unbordered conjugates."""
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef long long *hist = <long long *> malloc((n + 1) * sizeof(long long))
    if hist == NULL:
        free(d)
        raise MemoryError()
    cdef Py_ssize_t j
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    for j in range(n + 1):
        hist[j] = 0
    with nogil:
        while True:
            hist[_nuc_doubled(d, n)] += 1
            if not _advance(d, n, k):
                break
            memcpy(d + n, d, n)
    out = [hist[j] for j in range(n + 1)]
    free(hist)
    free(d)
    return out


cdef inline bint _is_canonical(const unsigned char *d, Py_ssize_t n) noexcept nogil:
    """Word (= first half of d) is <= all of its rotations."""
    cdef Py_ssize_t r
    for r in range(1, n):
        if memcmp(d, d + r, n) > 0:
            return False
    return True


def mnuc_scan(int k, int n, int witness_cap):
    """(max nuc, lex-least canonical achievers up to cap, classes at max).

    One representative per conjugacy class: the lexicographically least
    rotation, enumerated in ascending order.
    """
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    cdef int best = -1
    cdef int cur
    cdef long long at_max = 0
    witnesses = []
    while True:
        if _is_canonical(d, n):
            cur = _nuc_doubled(d, n)
            if cur > best:
                best = cur
                at_max = 0
                witnesses = []
            if cur == best:
                at_max += 1
                if len(witnesses) < witness_cap:
                    witnesses.append((<const unsigned char *> d)[:n])
        if not _advance(d, n, k):
            break
        memcpy(d + n, d, n)
    free(d)
    return best, witnesses, at_max


def beta_uu_scan(int n):
    """Binary words whose border correlation has circularly adjacent u's.

    Returns (count, lexicographically least example or None).
    """
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    cdef unsigned char *unb = <unsigned char *> malloc(n)
    if d == NULL or unb == NULL:
        raise MemoryError()
    cdef Py_ssize_t j, r
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    cdef long long count = 0
    cdef bint viol
    example = None
    while True:
        for r in range(n):
            unb[r] = not _has_short_border(d + r, n)
        viol = False
        for r in range(n):
            if unb[r] and unb[(r + 1) % n]:
                viol = True
                break
        if viol:
            count += 1
            if example is None:
                example = (<const unsigned char *> d)[:n]
        if not _advance(d, n, 2):
            break
        memcpy(d + n, d, n)
    free(unb)
    free(d)
    return count, example


def prop1_counterexample(int k, int n):
    """First word where circular squarefreeness and all-shifts-unbordered differ."""
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t j, r
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    cdef bint allunb, sqfree
    while True:
        allunb = True
        for r in range(n):
            if _has_short_border(d + r, n):
                allunb = False
                break
        sqfree = not _circ_square(d, n)
        if sqfree != allunb:
            out = (<const unsigned char *> d)[:n]
            free(d)
            return out
        if not _advance(d, n, k):
            break
        memcpy(d + n, d, n)
    free(d)
    return None


def bordered_short_counterexample(int n):
    """First binary word where having any border and having one of length <= n/2 differ."""
    cdef unsigned char *w = <unsigned char *> malloc(n)
    if w == NULL:
        raise MemoryError()
    cdef Py_ssize_t j, ell
    for j in range(n):
        w[j] = 0
    cdef bint any_b, short_b
    while True:
        any_b = False
        short_b = False
        for ell in range(1, n):
            if memcmp(w, w + n - ell, ell) == 0:
                any_b = True
                if 2 * ell <= n:
                    short_b = True
                    break
        if any_b != short_b:
            out = (<const unsigned char *> w)[:n]
            free(w)
            return out
        if not _advance(w, n, 2):
            break
    free(w)
    return None


def nonprimitive_nuc_counterexample(int n):
    """First non-primitive binary word with a nonzero nuc."""
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t j, dv
    for j in range(n):
        d[j] = 0
        d[j + n] = 0
    cdef bint nonprim
    while True:
        nonprim = False
        for dv in range(1, n):
            if n % dv == 0 and memcmp(d, d + dv, n) == 0:
                nonprim = True
                break
        if nonprim and _nuc_doubled(d, n) > 0:
            out = (<const unsigned char *> d)[:n]
            free(d)
            return out
        if not _advance(d, n, 2):
            break
        memcpy(d + n, d, n)
    free(d)
    return None


def theorem2_first_witness(bytes c, int n, int s_bound):
    """First (s, form) making factor+suffix circularly squarefree, or (-1, -1).

    form 0: c[s : s+n-3] + 021, form 1: c[s : s+n-4] + 2120.  Scans s
    ascending, trying form 0 before form 1 at each s.
    """
    if n <= 3:
        raise ValueError("n must exceed 3")
    if len(c) < s_bound + n:
        raise ValueError("background prefix too short for the requested scan")
    cdef const unsigned char *cp = <const unsigned char *> c
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t s
    for s in range(s_bound + 1):
        memcpy(d, cp + s, n - 3)
        d[n - 3] = 0
        d[n - 2] = 2
        d[n - 1] = 1
        memcpy(d + n, d, n)
        if not _circ_square(d, n):
            free(d)
            return s, 0
        memcpy(d, cp + s, n - 4)
        d[n - 4] = 2
        d[n - 3] = 1
        d[n - 2] = 2
        d[n - 1] = 0
        memcpy(d + n, d, n)
        if not _circ_square(d, n):
            free(d)
            return s, 1
    free(d)
    return -1, -1


def circsf_first_witness(bytes c, int n, int s_bound):
    """First s <= s_bound with c[s : s+n] circularly squarefree, else -1."""
    if n <= 0:
        return 0
    if len(c) < s_bound + n:
        raise ValueError("background prefix too short for the requested scan")
    cdef const unsigned char *cp = <const unsigned char *> c
    cdef unsigned char *d = <unsigned char *> malloc(2 * n)
    if d == NULL:
        raise MemoryError()
    cdef Py_ssize_t s
    cdef bint bad
    for s in range(s_bound + 1):
        memcpy(d, cp + s, n)
        memcpy(d + n, cp + s, n)
        if not _circ_square(d, n):
            free(d)
            return s
    free(d)
    return -1
