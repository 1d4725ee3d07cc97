"""Words over the generator alphabet and the short-lex order.

A word is a tuple of letter indices.  Letter ``i`` is the ``i``-th generator
in file order, which is also the letter order.
"""

__all__ = ["decompose", "parse_word", "render_word", "shortlex_cmp", "shortlex_key"]


def shortlex_key(w):
    return (len(w), tuple(w))


def shortlex_cmp(u, v):
    """-1, 0 or 1 as ``u`` is less than, equal to or greater than ``v``."""
    ku, kv = shortlex_key(u), shortlex_key(v)
    return (ku > kv) - (ku < kv)


def decompose(w):
    """Split ``w`` into (first letter, suffix, prefix, last letter).

    ``w == (f,) + s == p + (l,)``.  For a single letter both ``s`` and ``p``
    are empty.
    """
    w = tuple(w)
    if not w:
        raise ValueError("cannot decompose the empty word")
    return w[0], w[1:], w[:-1], w[-1]


def render_word(w):
    return ".".join(f"a{a}" for a in w)


def parse_word(text):
    text = text.strip()
    if not text:
        return ()
    out = []
    for part in text.split("."):
        if not part.startswith("a") or not part[1:].isdigit():
            raise ValueError(f"bad letter {part!r}")
        out.append(int(part[1:]))
    return tuple(out)
