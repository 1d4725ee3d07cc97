"""Sequential Froidure-Pin enumeration."""

import math

from .snapshot import UNDEFINED

__all__ = ["enumerate_until_member", "fill_left", "froidure_pin", "update"]


class BranchStats:
    """Counts how often each branch of the update step fired."""

    __slots__ = ("deduced", "rules", "new")

    def __init__(self):
        self.deduced = self.rules = self.new = 0

    def __repr__(self):
        return f"BranchStats(deduced={self.deduced}, rules={self.rules}, new={self.new})"


def _apply(s, i, a, stats=None):
    """Define ``right[i][a]``, multiplying only if it cannot be deduced.

    Returns the index of the new element when one was created, else -1.
    """
    right = s.right
    sf = s.suffix[i]
    if sf != UNDEFINED:
        t = right[sf][a]
        if s.prefix[t] != sf or s.last[t] != a:
            # the suffix times a is not reduced, so neither is y_i a
            p = s.prefix[t]
            f = s.first[i]
            w = f if p == UNDEFINED else s.left[p][f]
            assert w != UNDEFINED, f"left multiple of {p} by {f} missing"
            right[i][a] = right[w][s.last[t]]
            if stats is not None:
                stats.deduced += 1
            return -1

    x = s.elements[i] * s.generators[a]
    s.products += 1
    j = s.index.get(x)
    if j is not None:
        right[i][a] = j
        s.rules.append((i, a, j))
        if stats is not None:
            stats.rules += 1
        return -1
    sfx = a if sf == UNDEFINED else right[sf][a]
    j = s._append(x, s.first[i], a, i, sfx, s.length[i] + 1)
    right[i][a] = j
    if stats is not None:
        stats.new += 1
    return j


def update(s, stats=None):
    """Apply the least not-yet-applied generator to the frontier element.

    Mutates ``s`` and returns it.
    """
    if s.pos >= len(s.elements):
        raise ValueError("snapshot has no frontier element (K > |Y|)")
    if s.applied >= len(s.generators):
        raise ValueError("every generator has already been applied to the frontier")
    _apply(s, s.pos, s.applied, stats)
    s.applied += 1
    return s


def fill_left(s, lo, hi):
    """Deduce the left multiples of elements ``lo..hi-1`` (all of one length)."""
    right, left = s.right, s.left
    prefix, last = s.prefix, s.last
    r = len(s.generators)
    for i in range(lo, hi):
        p = prefix[i]
        l = last[i]
        row = left[i]
        if p == UNDEFINED:
            for a in range(r):
                row[a] = right[a][l]
        else:
            lp = left[p]
            for a in range(r):
                row[a] = right[lp[a]][l]


def _length_start(s, i):
    c = s.length[i]
    while i > 0 and s.length[i - 1] == c:
        i -= 1
    return i


def froidure_pin(s, limit=None, stats=None, until=None):
    """Enumerate until ``s`` holds at least ``min(limit, |S|)`` elements.

    ``limit=None`` runs to completion.  The snapshot is mutated and returned;
    calling again with a larger limit resumes where it stopped.  ``until`` is
    an optional predicate on a new element index; when it returns true the
    run halts straight away (possibly part way through a generator sweep).
    """
    if limit is None:
        limit = math.inf
    elif limit < 1:
        raise ValueError("limit must be positive")
    r = len(s.generators)
    elements = s.elements
    length = s.length
    right = s.right

    while s.pos < len(elements) and len(elements) < limit:
        c = length[s.pos]
        while s.pos < len(elements) and length[s.pos] == c and len(elements) < limit:
            i = s.pos
            row = right[i]
            # a sweep interrupted earlier resumes after the entries it defined
            for a in range(r):
                if row[a] != UNDEFINED:
                    continue
                j = _apply(s, i, a, stats)
                if until is not None and j >= 0 and until(j):
                    s.applied = a + 1
                    if s.applied == r:
                        s.applied = 0
                        s.pos += 1
                        _maybe_fill_left(s, c)
                    return s
            s.applied = 0
            s.pos += 1
        _maybe_fill_left(s, c)
    return s


def _maybe_fill_left(s, c):
    if s.pos >= len(s.elements) or s.length[s.pos] > c:
        lo = _length_start(s, s.pos - 1)
        fill_left(s, lo, s.pos)


def enumerate_until_member(s, x):
    """Enumerate only until ``x`` is found.  Returns ``(found, index)``."""
    j = s.position(x)
    if j is not None:
        return True, j
    froidure_pin(s, until=lambda k: s.elements[k] == x)
    j = s.index.get(x)
    return j is not None, j
