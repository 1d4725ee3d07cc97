"""Element kinds of the universe: transformations and Boolean matrices.

Both kinds are immutable, hashable and multiply with ``*``.  The product
``x * y`` of transformations is the right action: apply ``x`` first, then
``y``, so ``(x * y)[p] == y[x[p]]``.
"""

import hashlib
import json
import struct

__all__ = [
    "BooleanMatrix",
    "GeneratorFormatError",
    "Transformation",
    "digest",
    "dump_generators",
    "full_transformation_generators",
    "identity",
    "load_generators",
    "multiply",
    "parse_generators",
    "random_element",
    "same_kind",
]


class GeneratorFormatError(ValueError):
    """Raised for malformed generator documents."""


class Transformation:
    __slots__ = ("images", "_hash")
    kind = "transformation"

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n == 0:
            raise ValueError("a transformation needs degree >= 1")
        for v in images:
            if not 0 <= v < n:
                raise ValueError(f"image {v} out of range for degree {n}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _raw(cls, images):
        # trusted constructor used in the multiplication kernel
        obj = object.__new__(cls)
        obj.images = images
        obj._hash = hash(images)
        return obj

    @property
    def degree(self):
        return len(self.images)

    size = degree

    def __mul__(self, other):
        y = other.images
        return Transformation._raw(tuple([y[i] for i in self.images]))

    def __eq__(self, other):
        return type(other) is Transformation and self.images == other.images

    def __hash__(self):
        return self._hash

    def __getitem__(self, i):
        return self.images[i]

    def __len__(self):
        return len(self.images)

    def __repr__(self):
        return f"Transformation({list(self.images)})"

    def encode(self):
        return list(self.images)

    def to_bytes(self):
        n = len(self.images)
        return struct.pack(f"<BI{n}I", 0, n, *self.images)


class BooleanMatrix:
    """Square Boolean matrix stored as packed rows; bit ``j`` of ``rows[i]`` is entry (i, j)."""

    __slots__ = ("rows", "dim", "_hash")
    kind = "bmat"

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0:
            raise ValueError("a Boolean matrix needs dim >= 1")
        packed = []
        for r in rows:
            if len(r) != n:
                raise ValueError("Boolean matrix must be square")
            word = 0
            for j, b in enumerate(r):
                if b not in (0, 1, True, False):
                    raise ValueError(f"entry {b!r} is not 0/1")
                if b:
                    word |= 1 << j
            packed.append(word)
        self.dim = n
        self.rows = tuple(packed)
        self._hash = hash((n, self.rows))

    @classmethod
    def _raw(cls, dim, rows):
        obj = object.__new__(cls)
        obj.dim = dim
        obj.rows = rows
        obj._hash = hash((dim, rows))
        return obj

    @property
    def size(self):
        return self.dim

    def __mul__(self, other):
        yrows = other.rows
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc |= yrows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return BooleanMatrix._raw(self.dim, tuple(out))

    def __eq__(self, other):
        return (
            type(other) is BooleanMatrix
            and self.dim == other.dim
            and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def entry(self, i, j):
        return (self.rows[i] >> j) & 1

    def to_lists(self):
        return [[(r >> j) & 1 for j in range(self.dim)] for r in self.rows]

    encode = to_lists

    def __repr__(self):
        return f"BooleanMatrix({self.to_lists()})"

    def to_bytes(self):
        n = self.dim
        return struct.pack(f"<BI{n}Q", 1, n, *self.rows)


_KINDS = {"transformation": Transformation, "bmat": BooleanMatrix}


def same_kind(x, y):
    return type(x) is type(y) and x.size == y.size


def multiply(x, y):
    """Return ``x * y``; both factors must share kind and size."""
    if not same_kind(x, y):
        raise ValueError(
            f"cannot multiply {type(x).__name__}({x.size}) by {type(y).__name__}({y.size})"
        )
    return x * y


def digest(x, seed=0):
    """Stable 64-bit digest of an element's value.

    Unlike ``hash`` this does not depend on the interpreter, so bucket
    assignments derived from it are reproducible across processes.
    """
    key = int(seed).to_bytes(8, "little", signed=False)
    h = hashlib.blake2b(x.to_bytes(), digest_size=8, key=key)
    return int.from_bytes(h.digest(), "little")


def identity(kind, n):
    if kind == "transformation":
        return Transformation(range(n))
    if kind == "bmat":
        return BooleanMatrix([[int(i == j) for j in range(n)] for i in range(n)])
    raise ValueError(f"unknown element kind {kind!r}")


def random_element(kind, n, rng):
    """Uniformly random element of the given kind, drawn from ``rng`` (a ``random.Random``)."""
    if kind == "transformation":
        return Transformation([rng.randrange(n) for _ in range(n)])
    if kind == "bmat":
        return BooleanMatrix._raw(n, tuple(rng.getrandbits(n) for _ in range(n)))
    raise ValueError(f"unknown element kind {kind!r}")


def full_transformation_generators(n):
    """The standard 3-element generating set of the full transformation monoid (n >= 3)."""
    if n < 3:
        raise ValueError("need n >= 3 for three distinct generators")
    cycle = [(i + 1) % n for i in range(n)]
    swap = [1, 0] + list(range(2, n))
    collapse = list(range(n - 1)) + [0]
    return [Transformation(cycle), Transformation(swap), Transformation(collapse)]


def parse_generators(document):
    """Parse a generator document (JSON text or an already-decoded dict).

    Returns the generators in file order; that order is the letter order.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise GeneratorFormatError(f"invalid JSON: {e}") from None
    if not isinstance(document, dict):
        raise GeneratorFormatError("generator document must be a JSON object")
    kind = document.get("type")
    if kind not in _KINDS:
        raise GeneratorFormatError(f"unknown type {kind!r}")
    size_key = "degree" if kind == "transformation" else "dim"
    n = document.get(size_key)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise GeneratorFormatError(f"{size_key} must be a positive integer")
    raw = document.get("gens")
    if not isinstance(raw, list) or not raw:
        raise GeneratorFormatError("gens must be a non-empty list")

    gens = []
    seen = {}
    for i, enc in enumerate(raw):
        try:
            x = _KINDS[kind](enc)
        except (TypeError, ValueError) as e:
            raise GeneratorFormatError(f"generator {i}: {e}") from None
        if x.size != n:
            raise GeneratorFormatError(f"generator {i} has size {x.size}, expected {n}")
        if x in seen:
            raise GeneratorFormatError(
                f"duplicate generator at index {i} (same as index {seen[x]})"
            )
        seen[x] = i
        gens.append(x)
    return gens


def load_generators(path):
    with open(path) as fh:
        return parse_generators(fh.read())


def dump_generators(gens):
    """Inverse of :func:`parse_generators` (returns a dict ready for ``json.dump``)."""
    if not gens:
        raise ValueError("no generators")
    x = gens[0]
    size_key = "degree" if x.kind == "transformation" else "dim"
    return {"type": x.kind, size_key: x.size, "gens": [g.encode() for g in gens]}
