"""Extend a snapshot of <A> to one of <A, X>, reusing the known right multiples."""

from .elements import same_kind
from .fropin import _apply, _length_start, fill_left
from .snapshot import UNDEFINED, minimal_snapshot

__all__ = ["ClosureStats", "closure"]


class ClosureStats:
    """Bookkeeping from a closure run.

    ``copied`` counts right multiples copied from the old snapshot;
    ``saved`` counts those among them that a fresh enumeration would have
    had to multiply (the rest it would have deduced for free).
    """

    __slots__ = ("copied", "saved", "rebase", "extras")

    def __init__(self):
        self.copied = 0
        self.saved = 0
        self.rebase = {}
        self.extras = []

    def __repr__(self):
        return f"ClosureStats(copied={self.copied}, saved={self.saved}, rebased={len(self.rebase)})"


def _would_deduce(t, i, a):
    sf = t.suffix[i]
    if sf == UNDEFINED:
        return False
    v = t.right[sf][a]
    return t.prefix[v] != sf or t.last[v] != a


def closure(old, extra, stats=None, check=None):
    """Return a new snapshot over ``old.generators + extra``.

    Extras already among the elements of ``old`` (or repeated) are dropped.
    The result contains every old element and every right multiple
    ``y_i x`` with ``i < K-1`` and ``x`` an extra; run :func:`froidure_pin`
    on it to finish the enumeration.  ``old`` is not modified.

    ``check``, if given, is called as ``check(rebase, new_snapshot)`` after
    every change to the rebase map (used to test its invariants).
    """
    A = old.generators
    m = len(A)
    g0 = A[0]
    X = []
    for x in extra:
        if not same_kind(x, g0):
            raise ValueError("extra generator kind/size does not match the snapshot")
        if x not in old.index and x not in X:
            X.append(x)
    if stats is None:
        stats = ClosureStats()
    stats.extras = X

    t = minimal_snapshot(list(A) + X)
    r = len(t.generators)
    # old index -> new index, for old elements already present in t
    lam = {a: a for a in range(m)}
    stats.rebase = lam
    ks = old.pos  # old rows 0..ks-1 have every right multiple
    n_old = len(old.elements)
    old_index = old.index
    old_right = old.right

    while len(lam) != n_old:
        c = t.length[t.pos]
        while len(lam) != n_old and t.pos < len(t.elements) and t.length[t.pos] == c:
            k = t.pos
            i = old_index.get(t.elements[k])
            start = 0
            if i is not None and i < ks:
                row = old_right[i]
                for a in range(m):
                    stats.copied += 1
                    if not _would_deduce(t, k, a):
                        stats.saved += 1
                    v = row[a]
                    hit = lam.get(v)
                    if hit is not None:
                        t.right[k][a] = hit
                    else:
                        # z_k a is new and reduced; its value is old y_v
                        sf = t.suffix[k]
                        sfx = a if sf == UNDEFINED else t.right[sf][a]
                        j = t._append(old.elements[v], t.first[k], a, k, sfx, c + 1)
                        t.right[k][a] = j
                        lam[v] = j
                        if check is not None:
                            check(lam, t)
                start = m
            for a in range(start, r):
                j = _apply(t, k, a)
                if j >= 0:
                    v = old_index.get(t.elements[j])
                    if v is not None:
                        lam[v] = j
                        if check is not None:
                            check(lam, t)
            t.pos += 1
        if t.pos >= len(t.elements) or t.length[t.pos] > c:
            fill_left(t, _length_start(t, t.pos - 1), t.pos)
    return t
