"""Phased, lock-free concurrent Froidure-Pin.

The elements are partitioned into ``k`` fragments by a hash of their value.
Each round handles every word of the current length ``c`` in three phases,
separated by barriers:

1. ``apply_generators``: each fragment defines the right multiples of its own
   length-``c`` words, deducing where the needed table entries are already
   committed and otherwise multiplying.  Products that are not yet known
   anywhere are put on an outbound queue, tagged with their target bucket.
2. ``process_queues``: each fragment takes the queued words addressed to it,
   in short-lex order, and turns them into new length-``c+1`` elements (or
   table entries, for duplicates).
3. ``complete_left``: each fragment deduces the left multiples of its
   length-``c`` words.

Within a phase every table cell has exactly one writer and nothing a worker
reads is written by another worker in the same phase, so no locks are taken.
Cross-fragment references are packed integers ``local * k + fragment`` and
are only turned into global indices by :func:`assemble`.
"""

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .elements import digest, same_kind
from .snapshot import UNDEFINED, Snapshot

__all__ = [
    "AssemblyError",
    "BucketFn",
    "Fragment",
    "FragmentSet",
    "PhaseAudit",
    "QueueEntry",
    "apply_generators",
    "assemble",
    "complete_left",
    "concurrent_froidure_pin",
    "minimal_fragments",
    "process_queues",
    "run_round",
]


@dataclass(frozen=True)
class BucketFn:
    """Bucket of an element: its seeded digest modulo ``k`` (buckets are 0-based)."""

    k: int
    seed: int = 0

    def __call__(self, x):
        if self.k == 1:
            return 0
        return digest(x, self.seed) % self.k


class QueueEntry(NamedTuple):
    word_key: tuple
    target: int
    source: int
    letter: int
    element: Optional[object]


class AssemblyError(ValueError):
    def __init__(self, clause, message):
        super().__init__(f"fragment condition ({clause}) violated: {message}")
        self.clause = clause


class Fragment:
    """One shard of the enumeration: elements with ``bucket(x) == bucket_id``."""

    def __init__(self, bucket_id, r):
        self.bucket_id = bucket_id
        self.r = r
        self.elements = []
        self.first = []
        self.last = []
        self.prefix = []  # packed refs
        self.suffix = []
        self.length = []
        self.right = []
        self.left = []
        self.index = {}
        self.pos = 0
        self.lo = 0  # first index of the words handled in the current round
        self.products = 0

    def append(self, x, first, last, prefix, suffix, length):
        i = len(self.elements)
        self.elements.append(x)
        self.first.append(first)
        self.last.append(last)
        self.prefix.append(prefix)
        self.suffix.append(suffix)
        self.length.append(length)
        self.right.append([UNDEFINED] * self.r)
        self.left.append([UNDEFINED] * self.r)
        self.index[x] = i
        return i

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<Fragment {self.bucket_id} size={len(self)} K={self.pos + 1} products={self.products}>"


class PhaseAudit:
    """Records which worker read and wrote which cell during one phase.

    Cells are tuples such as ``("right", fragment, local, letter)`` or
    ``("index", fragment)``.  :meth:`conflicts` lists the cells that one
    worker wrote while another worker read or wrote them.
    """

    def __init__(self):
        self.reads = {}
        self.writes = {}

    def read(self, worker, cell):
        self.reads.setdefault(cell, set()).add(worker)

    def write(self, worker, cell):
        self.writes.setdefault(cell, set()).add(worker)

    def conflicts(self):
        out = []
        for cell, writers in self.writes.items():
            others = (self.reads.get(cell, set()) | writers) - writers
            if len(writers) > 1 or others:
                out.append((cell, sorted(writers), sorted(self.reads.get(cell, ()))))
        return out


class FragmentSet:
    """The k fragments of one run, plus the shared read-only context."""

    def __init__(self, gens, k, seed=0, recompute=False):
        if k < 1:
            raise ValueError("fragment count must be at least 1")
        gens = list(gens)
        if not gens:
            raise ValueError("need at least one generator")
        for g in gens[1:]:
            if not same_kind(g, gens[0]):
                raise ValueError("generators must share kind and size")
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate generators")
        self.gens = gens
        self.k = k
        self.bucket = BucketFn(k, seed)
        self.recompute = recompute
        self.fragments = [Fragment(j, len(gens)) for j in range(k)]
        self.gen_refs = []
        self.c = 1

    @property
    def size(self):
        return sum(len(f) for f in self.fragments)

    @property
    def products(self):
        return sum(f.products for f in self.fragments)

    def unpack(self, ref):
        local, j = divmod(ref, self.k)
        return self.fragments[j], local

    def word(self, ref):
        out = []
        k = self.k
        frags = self.fragments
        while ref != UNDEFINED:
            local, j = divmod(ref, k)
            f = frags[j]
            out.append(f.last[local])
            ref = f.prefix[local]
        out.reverse()
        return tuple(out)

    def active(self):
        return any(f.pos < len(f.elements) for f in self.fragments)


def minimal_fragments(gens, k, seed=0, recompute=False):
    """Scatter the generators over k fragments by bucket; nothing multiplied yet."""
    fs = FragmentSet(gens, k, seed, recompute)
    for a, g in enumerate(fs.gens):
        j = fs.bucket(g)
        local = fs.fragments[j].append(g, a, a, UNDEFINED, UNDEFINED, 1)
        fs.gen_refs.append(local * k + j)
    return fs


def apply_generators(fs, j, c, audit=None):
    """Phase one for fragment ``j``: right multiples of its length-``c`` words.

    Returns this fragment's queue, sorted short-lex on ``word_key``.
    """
    k = fs.k
    frags = fs.fragments
    gens = fs.gens
    gen_refs = fs.gen_refs
    bucket = fs.bucket
    r = len(gens)
    F = frags[j]
    queue = []
    F.lo = F.pos
    while F.pos < len(F.elements) and F.length[F.pos] == c:
        i = F.pos
        me = i * k + j
        row = F.right[i]
        x = F.elements[i]
        sref = F.suffix[i]
        fl = F.first[i]
        key = None
        for a in range(r):
            if sref != UNDEFINED:
                sl, sj = divmod(sref, k)
                yref = frags[sj].right[sl][a]
                yl, yj = divmod(yref, k)
                Yf = frags[yj]
                if audit is not None:
                    audit.read(j, ("right", sj, sl, a))
                if Yf.prefix[yl] != sref or Yf.last[yl] != a:
                    # s(y_i) a is not reduced, try y_i a = w l(y)
                    p = Yf.prefix[yl]
                    if p == UNDEFINED:
                        wref = gen_refs[fl]
                    else:
                        pl, pj = divmod(p, k)
                        wref = frags[pj].left[pl][fl]
                        if audit is not None:
                            audit.read(j, ("left", pj, pl, fl))
                    wl, wj = divmod(wref, k)
                    W = frags[wj]
                    if wj == j or W.length[wl] < c:
                        v = W.right[wl][Yf.last[yl]]
                        if audit is not None:
                            audit.read(j, ("right", wj, wl, Yf.last[yl]))
                        if v != UNDEFINED:
                            row[a] = v
                            if audit is not None:
                                audit.write(j, ("right", j, i, a))
                            continue
            z = x * gens[a]
            F.products += 1
            b = bucket(z)
            if audit is not None:
                audit.read(j, ("index", b))
            hit = frags[b].index.get(z)
            if hit is not None:
                row[a] = hit * k + b
                if audit is not None:
                    audit.write(j, ("right", j, i, a))
            else:
                if key is None:
                    key = fs.word(me)
                queue.append(QueueEntry(key + (a,), b, me, a, None if fs.recompute else z))
        F.pos += 1
    return queue


def process_queues(fs, queues, j, c, audit=None):
    """Phase two for fragment ``j``: absorb the queued words addressed to it.

    ``queues`` holds every fragment's output of :func:`apply_generators`.
    """
    k = fs.k
    frags = fs.fragments
    gens = fs.gens
    F = frags[j]
    mine = [[e for e in q if e.target == j] for q in queues]
    for e in heapq.merge(*mine, key=lambda e: e.word_key):
        sl, sj = divmod(e.source, k)
        S = frags[sj]
        a = e.letter
        if e.element is None:
            z = S.elements[sl] * gens[a]
            F.products += 1
        else:
            z = e.element
        hit = F.index.get(z)
        if hit is not None:
            S.right[sl][a] = hit * k + j
        else:
            sref = S.suffix[sl]
            if sref == UNDEFINED:
                sfx = fs.gen_refs[a]
            else:
                Sf, ssl = fs.unpack(sref)
                sfx = Sf.right[ssl][a]
                if audit is not None:
                    audit.read(j, ("right", sref % k, ssl, a))
            local = F.append(z, S.first[sl], a, e.source, sfx, c + 1)
            S.right[sl][a] = local * k + j
            if audit is not None:
                audit.write(j, ("index", j))
        if audit is not None:
            audit.write(j, ("right", sj, sl, a))
    return F


def complete_left(fs, j, c, audit=None):
    """Phase three for fragment ``j``: left multiples of its length-``c`` words."""
    k = fs.k
    frags = fs.fragments
    gen_refs = fs.gen_refs
    r = len(fs.gens)
    F = frags[j]
    for i in range(F.lo, F.pos):
        p = F.prefix[i]
        l = F.last[i]
        row = F.left[i]
        if p != UNDEFINED:
            pl, pj = divmod(p, k)
            prow = frags[pj].left[pl]
        for a in range(r):
            if p == UNDEFINED:
                wref = gen_refs[a]
            else:
                wref = prow[a]
                if audit is not None:
                    audit.read(j, ("left", pj, pl, a))
            wl, wj = divmod(wref, k)
            row[a] = frags[wj].right[wl][l]
            if audit is not None:
                audit.read(j, ("right", wj, wl, l))
                audit.write(j, ("left", j, i, a))
    return F


def run_round(fs, pool=None, audit=False):
    """One round: the three phases for every fragment, barrier after each.

    With ``pool`` (an executor with ``k`` workers) the fragments of a phase
    run concurrently; otherwise they run one after another.  Returns the
    per-phase :class:`PhaseAudit` objects when ``audit`` is true.
    """
    c = fs.c
    ks = range(fs.k)
    audits = [PhaseAudit(), PhaseAudit(), PhaseAudit()] if audit else [None] * 3

    def each(fn):
        # a completed map is the barrier between phases
        if pool is None:
            return [fn(j) for j in ks]
        return list(pool.map(fn, ks))

    queues = each(lambda j: apply_generators(fs, j, c, audits[0]))
    each(lambda j: process_queues(fs, queues, j, c, audits[1]))
    each(lambda j: complete_left(fs, j, c, audits[2]))
    fs.c = c + 1
    return audits if audit else None


def concurrent_froidure_pin(gens, k=1, limit=None, seed=0, recompute=False, threads=True, audit=None):
    """Enumerate ``<gens>`` with ``k`` fragments and assemble the result.

    The size limit is checked between rounds only.  By default each queue
    entry carries the product computed in phase one; ``recompute=True``
    evaluates it again when the entry is absorbed (and counts that product).
    ``audit``, if a list, receives the per-round phase audits.
    """
    if limit is None:
        limit = math.inf
    elif limit < 1:
        raise ValueError("limit must be positive")
    fs = minimal_fragments(gens, k, seed, recompute)
    pool = ThreadPoolExecutor(max_workers=k) if threads and k > 1 else None
    try:
        while fs.active() and fs.size < limit:
            a = run_round(fs, pool, audit is not None)
            if audit is not None:
                audit.append(a)
    finally:
        if pool is not None:
            pool.shutdown()
    return assemble(fs)


def _check_fragments(fs):
    k = fs.k
    frags = fs.fragments
    r = len(fs.gens)
    n = fs.size
    seen = {}
    for f in frags:
        for x in f.elements:
            if x in seen:
                raise AssemblyError("i", "an element occurs in two fragments")
            seen[x] = f.bucket_id
    cmax = max((f.length[f.pos - 1] for f in frags if f.pos > 0), default=0)

    def valid(ref):
        if ref < 0:
            return False
        local, j = divmod(ref, k)
        return local < len(frags[j].elements)

    for f in frags:
        for i in range(len(f)):
            p = f.prefix[i]
            if f.length[i] == 1:
                if p != UNDEFINED:
                    raise AssemblyError("ii", "one-letter word with a prefix")
            elif not valid(p):
                raise AssemblyError("ii", f"prefix of ({f.bucket_id}, {i}) is not stored")
            else:
                pf, pl = fs.unpack(p)
                if pf.length[pl] != f.length[i] - 1:
                    raise AssemblyError("ii", "prefix has the wrong length")
                if pf.right[pl][f.last[i]] != i * k + f.bucket_id:
                    raise AssemblyError("ii", "word is not the right multiple of its prefix")
        if f.pos > 0 and f.length[f.pos - 1] != max(
            (L for L in f.length if L <= cmax), default=0
        ):
            raise AssemblyError("iii", f"fragment {f.bucket_id} is not aligned to length {cmax}")
        if f.pos < len(f) and f.length[f.pos] <= cmax:
            raise AssemblyError("iii", f"fragment {f.bucket_id} has unprocessed words of length <= {cmax}")
        for i in range(len(f)):
            need = i < f.pos
            for a in range(r):
                for side in (f.right, f.left):
                    v = side[i][a]
                    if need and v == UNDEFINED:
                        raise AssemblyError("iv", f"missing table entry at ({f.bucket_id}, {i}, {a})")
                    if not need and v != UNDEFINED:
                        raise AssemblyError("iv", f"table entry outside the domain at ({f.bucket_id}, {i}, {a})")
                    if v != UNDEFINED and not valid(v):
                        raise AssemblyError("v", f"table entry at ({f.bucket_id}, {i}, {a}) points outside the fragments")
    return n


def assemble(fs):
    """Merge the fragments into one snapshot with global short-lex indices."""
    _check_fragments(fs)
    k = fs.k
    frags = fs.fragments
    gens = fs.gens
    r = len(gens)

    # group refs by word length, then order each length by (prefix rank, last letter)
    by_len = {}
    for f in frags:
        j = f.bucket_id
        for i, L in enumerate(f.length):
            by_len.setdefault(L, []).append(i * k + j)
    gidx = {}
    order = []
    for L in sorted(by_len):
        refs = by_len[L]
        if L == 1:
            refs = list(fs.gen_refs)
        else:
            def key(ref):
                f, i = fs.unpack(ref)
                return (gidx[f.prefix[i]], f.last[i])

            refs.sort(key=key)
        for ref in refs:
            gidx[ref] = len(order)
            order.append(ref)

    def g(ref):
        return UNDEFINED if ref == UNDEFINED else gidx[ref]

    s = Snapshot(gens)
    for ref in order:
        f, i = fs.unpack(ref)
        s.elements.append(f.elements[i])
        s.first.append(f.first[i])
        s.last.append(f.last[i])
        s.prefix.append(g(f.prefix[i]))
        s.suffix.append(g(f.suffix[i]))
        s.length.append(f.length[i])
        s.right.append([g(v) for v in f.right[i]])
        s.left.append([g(v) for v in f.left[i]])
    s.index = {x: i for i, x in enumerate(s.elements)}
    s.pos = sum(f.pos for f in frags)
    s.applied = 0
    s.products = fs.products

    # rules: right multiples u a that are not reduced although s(u) a is
    right, prefix, last, suffix = s.right, s.prefix, s.last, s.suffix
    for u in range(s.pos):
        su = suffix[u]
        for a in range(r):
            v = right[u][a]
            if prefix[v] == u and last[v] == a:
                continue
            if su != UNDEFINED:
                t = right[su][a]
                if prefix[t] != su or last[t] != a:
                    continue
            s.rules.append((u, a, v))
    return s
