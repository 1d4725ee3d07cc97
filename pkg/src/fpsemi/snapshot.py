"""Resumable enumeration state.

A :class:`Snapshot` holds the generators, the elements found so far (indexed
in short-lex order of their reduced words), the word links of every element,
the partial right and left Cayley tables, the frontier, the number of
generators already applied to the frontier element, the rewriting rules found
so far and a product counter.

Indices are 0-based throughout.  ``pos`` is the index of the frontier element;
the 1-based frontier of the textbook formulation is ``pos + 1`` (see
:attr:`Snapshot.frontier`).  Undefined table cells hold ``-1``.
"""

import hashlib
import io
import struct
from dataclasses import dataclass, field

import numpy as np

from .elements import BooleanMatrix, Transformation, same_kind
from .words import shortlex_key

__all__ = [
    "Snapshot",
    "SnapshotFormatError",
    "ValidationReport",
    "Violation",
    "load",
    "loads",
    "minimal_snapshot",
    "save",
    "dumps",
    "validate",
]

UNDEFINED = -1


class Snapshot:
    def __init__(self, generators):
        self.generators = list(generators)
        self.elements = []
        self.first = []
        self.last = []
        self.prefix = []
        self.suffix = []
        self.length = []
        self.right = []
        self.left = []
        self.index = {}
        self.rules = []
        self.pos = 0
        self.applied = 0
        self.products = 0

    # -- basic shape -------------------------------------------------------

    @property
    def nr_gens(self):
        return len(self.generators)

    @property
    def size(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def frontier(self):
        """1-based frontier K."""
        return self.pos + 1

    @property
    def kind(self):
        return self.generators[0].kind

    @property
    def degree(self):
        return self.generators[0].size

    def left_bound(self):
        """Number of leading elements whose left multiples are all known."""
        if self.pos == 0:
            return 0
        if self.left[self.pos - 1][0] != UNDEFINED:
            return self.pos
        c = self.length[self.pos - 1]
        i = self.pos - 1
        while i >= 0 and self.length[i] == c:
            i -= 1
        return i + 1

    def is_complete(self):
        n = len(self.elements)
        return self.pos == n and self.left_bound() == n

    # -- mutation helpers used by the engines ------------------------------

    def _append(self, x, first, last, prefix, suffix, length):
        i = len(self.elements)
        self.elements.append(x)
        self.first.append(first)
        self.last.append(last)
        self.prefix.append(prefix)
        self.suffix.append(suffix)
        self.length.append(length)
        r = len(self.generators)
        self.right.append([UNDEFINED] * r)
        self.left.append([UNDEFINED] * r)
        self.index[x] = i
        return i

    # -- queries -----------------------------------------------------------

    def position(self, x):
        """Index of ``x`` if already enumerated, else ``None``.  Never enumerates."""
        if not same_kind(x, self.generators[0]):
            raise ValueError("element kind/size does not match the generators")
        return self.index.get(x)

    def word_of(self, i):
        if not 0 <= i < len(self.elements):
            raise IndexError(f"element index {i} out of range")
        out = []
        while i != UNDEFINED:
            out.append(self.last[i])
            i = self.prefix[i]
        out.reverse()
        return tuple(out)

    def cayley_lookup(self, side, i, a):
        if not 0 <= i < len(self.elements):
            raise IndexError(f"element index {i} out of range")
        if not 0 <= a < len(self.generators):
            raise IndexError(f"letter {a} out of range")
        if side == "right":
            v = self.right[i][a]
        elif side == "left":
            v = self.left[i][a]
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        return None if v == UNDEFINED else v

    def rules_of(self):
        """Rules as (left word, right word) pairs, left side short-lex greater."""
        return [(self.word_of(u) + (a,), self.word_of(v)) for u, a, v in self.rules]

    def evaluate(self, word):
        """Value of a non-empty word by plain multiplication (not counted)."""
        if not word:
            raise ValueError("empty word")
        x = self.generators[word[0]]
        for a in word[1:]:
            x = x * self.generators[a]
        return x

    def __eq__(self, other):
        if not isinstance(other, Snapshot):
            return NotImplemented
        return _state(self) == _state(other)

    def __repr__(self):
        return (
            f"<Snapshot {self.kind}({self.degree}) gens={self.nr_gens} "
            f"size={self.size} K={self.frontier} applied={self.applied} "
            f"rules={len(self.rules)} products={self.products}>"
        )


def _state(s):
    return (
        s.generators,
        s.elements,
        s.first,
        s.last,
        s.prefix,
        s.suffix,
        s.length,
        s.right,
        s.left,
        s.rules,
        s.pos,
        s.applied,
        s.products,
    )


def minimal_snapshot(gens):
    """The starting snapshot: elements are the generators, nothing is multiplied."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens[1:]:
        if not same_kind(g, gens[0]):
            raise ValueError("generators must share kind and size")
    s = Snapshot(gens)
    for a, g in enumerate(gens):
        if g in s.index:
            raise ValueError(f"duplicate generator at index {a}")
        s._append(g, a, a, UNDEFINED, UNDEFINED, 1)
    return s


# ---------------------------------------------------------------------------
# validation


@dataclass
class Violation:
    rule: str
    context: tuple
    message: str


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, rule, context, message):
        self.violations.append(Violation(rule, context, message))

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(f"[{v.rule}] {v.context}: {v.message}" for v in self.violations)


def validate(s, deep=False, max_violations=50):
    """Check the snapshot invariants; ``deep`` also re-multiplies every known product.

    Violations are tagged with the clause they break: ``a`` generators,
    ``b`` elements/words, ``c`` frontier, ``d`` applied generators,
    ``e`` Cayley tables, ``rules`` rewriting rules.
    """
    rep = ValidationReport()

    def bad(rule, ctx, msg):
        if len(rep.violations) < max_violations:
            rep.add(rule, ctx, msg)

    r = len(s.generators)
    n = len(s.elements)
    if r == 0:
        bad("a", (), "no generators")
        return rep
    for a, g in enumerate(s.generators):
        if not same_kind(g, s.generators[0]):
            bad("a", (a,), "generator kind/size mismatch")
    if len(set(s.generators)) != r:
        bad("a", (), "generators are not distinct")
    for name in ("first", "last", "prefix", "suffix", "length", "right", "left"):
        if len(getattr(s, name)) != n:
            bad("b", (name,), f"{name} has {len(getattr(s, name))} entries, expected {n}")
            return rep
    if n < r:
        bad("b", (), "fewer elements than generators")
        return rep

    # (a)/(b): the generators come first, as length-one words in letter order
    for a in range(r):
        if s.elements[a] != s.generators[a] or s.length[a] != 1 or s.last[a] != a:
            bad("a", (a,), "generator not stored as element with the one-letter word")

    # (b): words strictly increasing, prefix-closed, links coherent
    words = [None] * n
    for i in range(n):
        p = s.prefix[i]
        l = s.last[i]
        if not 0 <= l < r:
            bad("b", (i,), f"last letter {l} out of range")
            return rep
        if p == UNDEFINED:
            words[i] = (l,)
        elif 0 <= p < i:
            words[i] = words[p] + (l,)
        else:
            bad("b", (i,), f"prefix link {p} does not point at an earlier element")
            return rep
        w = words[i]
        if s.length[i] != len(w):
            bad("b", (i,), "stored length disagrees with prefix chain")
        if s.first[i] != w[0]:
            bad("b", (i,), "stored first letter disagrees with prefix chain")
        sf = s.suffix[i]
        if len(w) == 1:
            if sf != UNDEFINED:
                bad("b", (i,), "single letter with a suffix link")
        elif not 0 <= sf < i:
            bad("b", (i,), f"suffix link {sf} does not point at an earlier element")
        elif words[sf] != w[1:]:
            bad("b", (i,), "suffix link does not point at the suffix word")
        if i and shortlex_key(words[i - 1]) >= shortlex_key(w):
            bad("b", (i,), "words not strictly increasing in short-lex order")

    if len(s.index) != n or len(set(s.elements)) != n:
        bad("b", (), "elements are not pairwise distinct")
    else:
        for x, i in s.index.items():
            if not 0 <= i < n or s.elements[i] != x:
                bad("b", (i,), "index map disagrees with element list")
                break

    # (c), (d)
    if not 0 <= s.pos <= n:
        bad("c", (s.frontier,), f"frontier K={s.frontier} outside 1..{n + 1}")
        return rep
    if not 0 <= s.applied <= r:
        bad("d", (s.applied,), "applied count out of range")
    if s.applied and s.pos == n:
        bad("d", (s.applied,), "generators applied but there is no frontier element")

    # (e): domains of the right and left tables
    for i in range(n):
        row = s.right[i]
        if i < s.pos:
            need = r
        elif i == s.pos:
            need = s.applied
        else:
            need = 0
        for a in range(r):
            v = row[a]
            if a < need:
                if not 0 <= v < n:
                    bad("e", (i, a), "right multiple missing or out of range")
                elif shortlex_key(words[v]) > shortlex_key(words[i] + (a,)):
                    bad("e", (i, a), "right multiple is not reduced")
            elif v != UNDEFINED:
                bad("e", (i, a), "right multiple defined outside the domain")

    lb = s.left_bound()
    for i in range(n):
        row = s.left[i]
        for a in range(r):
            v = row[a]
            if i < lb:
                if not 0 <= v < n:
                    bad("e", (i, a), "left multiple missing or out of range")
                elif shortlex_key(words[v]) > shortlex_key((a,) + words[i]):
                    bad("e", (i, a), "left multiple is not reduced")
            elif v != UNDEFINED:
                bad("e", (i, a), "left multiple defined outside the domain")

    for t, (u, a, v) in enumerate(s.rules):
        if not (0 <= u < n and 0 <= a < r and 0 <= v < n):
            bad("rules", (t,), "rule refers outside the snapshot")
        elif s.right[u][a] != v:
            bad("rules", (t,), "rule disagrees with the right table")
        elif shortlex_key(words[v]) >= shortlex_key(words[u] + (a,)):
            bad("rules", (t,), "rule does not decrease in short-lex order")

    if deep and rep.ok:
        gens = s.generators
        el = s.elements
        for i in range(n):
            p = s.prefix[i]
            if p != UNDEFINED and el[p] * gens[s.last[i]] != el[i]:
                bad("b", (i,), "prefix times last letter is not the element")
            for a in range(r):
                v = s.right[i][a]
                if v != UNDEFINED and el[i] * gens[a] != el[v]:
                    bad("e", (i, a), "right table entry re-multiplies incorrectly")
                v = s.left[i][a]
                if v != UNDEFINED and gens[a] * el[i] != el[v]:
                    bad("e", (i, a), "left table entry re-multiplies incorrectly")
    return rep


# ---------------------------------------------------------------------------
# persistence

MAGIC = b"SGPSNAP1"
VERSION = 1
_KIND_CODES = {"transformation": 0, "bmat": 1}
_HEAD = struct.Struct("<IBIIqqqq")  # version, kind, size, r, n, pos, applied, nrules


class SnapshotFormatError(ValueError):
    """Raised when a snapshot file is truncated, corrupt or of another version."""


def _pack_elements(xs, kind, size):
    if kind == "transformation":
        a = np.array([x.images for x in xs], dtype="<i4").reshape(len(xs), size)
    else:
        a = np.array([x.rows for x in xs], dtype="<u8").reshape(len(xs), size)
    return a.tobytes()


def _unpack_elements(buf, kind, size, count):
    if kind == "transformation":
        a = np.frombuffer(buf, dtype="<i4").reshape(count, size)
        return [Transformation._raw(tuple(int(v) for v in row)) for row in a]
    a = np.frombuffer(buf, dtype="<u8").reshape(count, size)
    return [BooleanMatrix._raw(size, tuple(int(v) for v in row)) for row in a]


def _ints(values):
    return np.array(values, dtype="<i8").tobytes()


def dumps(s):
    kind = s.kind
    size = s.degree
    r = s.nr_gens
    n = s.size
    sections = [
        (b"HEAD", _HEAD.pack(VERSION, _KIND_CODES[kind], size, r, n, s.pos, s.applied, len(s.rules))),
        (b"GENS", _pack_elements(s.generators, kind, size)),
        (b"ELEM", _pack_elements(s.elements, kind, size)),
        (b"META", b"".join(_ints(getattr(s, f)) for f in ("first", "last", "prefix", "suffix", "length"))),
        (b"RGHT", _ints(s.right) if n else b""),
        (b"LEFT", _ints(s.left) if n else b""),
        (b"RULE", _ints(s.rules) if s.rules else b""),
        (b"CNTR", struct.pack("<q", s.products)),
    ]
    out = io.BytesIO()
    out.write(MAGIC)
    for tag, payload in sections:
        out.write(tag)
        out.write(struct.pack("<Q", len(payload)))
        out.write(payload)
    body = out.getvalue()
    return body + hashlib.blake2b(body, digest_size=8).digest()


def save(s, sink):
    """Write ``s`` to ``sink`` (a path or a binary file object)."""
    data = dumps(s)
    if hasattr(sink, "write"):
        sink.write(data)
    else:
        with open(sink, "wb") as fh:
            fh.write(data)


def load(source):
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    return loads(data)


def loads(data):
    if len(data) < len(MAGIC) + 8:
        raise SnapshotFormatError("truncated snapshot")
    if data[: len(MAGIC)] != MAGIC:
        if data[:7] == MAGIC[:7]:
            raise SnapshotFormatError(f"unsupported snapshot version {data[7:8]!r}")
        raise SnapshotFormatError("not a snapshot file (bad magic)")
    body, check = data[:-8], data[-8:]
    if hashlib.blake2b(body, digest_size=8).digest() != check:
        raise SnapshotFormatError("checksum mismatch (truncated or corrupt)")

    sections = {}
    off = len(MAGIC)
    while off < len(body):
        if off + 12 > len(body):
            raise SnapshotFormatError("truncated section header")
        tag = body[off : off + 4]
        (ln,) = struct.unpack_from("<Q", body, off + 4)
        off += 12
        if off + ln > len(body):
            raise SnapshotFormatError(f"truncated section {tag!r}")
        sections[tag] = body[off : off + ln]
        off += ln
    for tag in (b"HEAD", b"GENS", b"ELEM", b"META", b"RGHT", b"LEFT", b"RULE", b"CNTR"):
        if tag not in sections:
            raise SnapshotFormatError(f"missing section {tag!r}")

    version, kcode, size, r, n, pos, applied, nrules = _HEAD.unpack(sections[b"HEAD"])
    if version != VERSION:
        raise SnapshotFormatError(f"unsupported snapshot version {version}")
    kind = {v: k for k, v in _KIND_CODES.items()}.get(kcode)
    if kind is None:
        raise SnapshotFormatError(f"unknown element kind code {kcode}")

    try:
        gens = _unpack_elements(sections[b"GENS"], kind, size, r)
        s = Snapshot(gens)
        s.elements = _unpack_elements(sections[b"ELEM"], kind, size, n)
        meta = np.frombuffer(sections[b"META"], dtype="<i8").reshape(5, n)
        s.first, s.last, s.prefix, s.suffix, s.length = (row.tolist() for row in meta)
        if n:
            s.right = np.frombuffer(sections[b"RGHT"], dtype="<i8").reshape(n, r).tolist()
            s.left = np.frombuffer(sections[b"LEFT"], dtype="<i8").reshape(n, r).tolist()
        if nrules:
            s.rules = [tuple(t) for t in np.frombuffer(sections[b"RULE"], dtype="<i8").reshape(nrules, 3).tolist()]
        (s.products,) = struct.unpack("<q", sections[b"CNTR"])
    except ValueError as e:
        raise SnapshotFormatError(f"inconsistent section sizes: {e}") from None
    s.pos = pos
    s.applied = applied
    s.index = {x: i for i, x in enumerate(s.elements)}
    return s
