"""Cayley graphs of a complete snapshot, their strongly connected components,
and Green's class counts.
"""

from dataclasses import dataclass

from .words import render_word

__all__ = ["IndexedDigraph", "cayley_graph", "export_dot", "export_edges", "green_counts", "scc"]


@dataclass
class IndexedDigraph:
    """Vertices ``0..n-1``; ``adj[v]`` lists out-neighbours, ``adj[v][a]`` being the edge labelled ``a``."""

    n: int
    adj: list

    def edges(self):
        for v, row in enumerate(self.adj):
            for a, w in enumerate(row):
                yield v, a, w


def _require_complete(s):
    if not s.is_complete():
        raise ValueError("snapshot is incomplete; enumerate it fully first")


def cayley_graph(s, side="right"):
    _require_complete(s)
    if side == "right":
        table = s.right
    elif side == "left":
        table = s.left
    else:
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")
    return IndexedDigraph(len(table), [list(row) for row in table])


def scc(g):
    """Tarjan's algorithm, iterative.

    Returns ``(comp, count)`` where ``comp[v]`` is the component of ``v``.
    Components are numbered in the order Tarjan closes them, which is a
    reverse topological order of the condensation (sinks first).
    """
    n = g.n
    adj = g.adj
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    count = 0
    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]
        while work:
            v, e = work[-1]
            nbrs = adj[v]
            if e < len(nbrs):
                work[-1] = (v, e + 1)
                w = nbrs[e]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = count
                    if w == v:
                        break
                count += 1
    return comp, count


def green_counts(s):
    """Numbers of R-, L-, H- and D-classes of a completely enumerated semigroup."""
    right = cayley_graph(s, "right")
    left = cayley_graph(s, "left")
    rc, nr = scc(right)
    lc, nl = scc(left)
    nh = len(set(zip(rc, lc)))
    union = IndexedDigraph(right.n, [right.adj[v] + left.adj[v] for v in range(right.n)])
    _, nd = scc(union)
    return {"R": nr, "L": nl, "H": nh, "D": nd}


def export_dot(g, labels=None, name="cayley"):
    """DOT text for ``g``; ``labels`` optionally gives a word per vertex."""
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        if labels is not None:
            lines.append(f'  {v} [label="{render_word(labels[v])}"];')
        else:
            lines.append(f"  {v};")
    for v, a, w in g.edges():
        lines.append(f'  {v} -> {w} [label="a{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_edges(g):
    """One ``i a j`` triple per line."""
    return "".join(f"{v} {a} {w}\n" for v, a, w in g.edges())
