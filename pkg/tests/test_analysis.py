import random

import networkx as nx
import pydot
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, generator_sets, random_gens
from fpsemi.analysis import IndexedDigraph, cayley_graph, export_dot, export_edges, green_counts, scc
from fpsemi.elements import Transformation, full_transformation_generators
from fpsemi.fropin import froidure_pin
from fpsemi.snapshot import minimal_snapshot

T3 = full_transformation_generators(3)
S3 = [Transformation([1, 2, 0]), Transformation([1, 0, 2])]
TOY = [Transformation([1, 0]), Transformation([0, 0])]


def green_oracle(elements):
    """Green's classes from principal ideals over S with an identity adjoined."""
    S = list(elements)
    idx = {x: i for i, x in enumerate(S)}
    right = [frozenset([i] + [idx[x * y] for y in S]) for i, x in enumerate(S)]
    left = [frozenset([i] + [idx[y * x] for y in S]) for i, x in enumerate(S)]
    two = [frozenset([i] + [idx[y * x] for y in S] + [idx[x * y] for y in S] + [idx[y * x * z] for y in S for z in S]) for i, x in enumerate(S)]
    r = [right[i] for i in range(len(S))]
    l = [left[i] for i in range(len(S))]
    nr, nl = len(set(r)), len(set(l))
    nh = len(set(zip(r, l)))
    nd = len(set(two))  # D = J in a finite semigroup
    return {"R": nr, "L": nl, "H": nh, "D": nd}, r


class TestScc:
    def test_edgeless(self):
        comp, n = scc(IndexedDigraph(5, [[] for _ in range(5)]))
        assert n == 5 and sorted(comp) == list(range(5))

    def test_cycle(self):
        assert scc(IndexedDigraph(4, [[1], [2], [3], [0]]))[1] == 1

    def test_group_graph(self):
        s = complete(S3)
        assert s.size == 6
        assert scc(cayley_graph(s))[1] == 1

    def test_deep_path_does_not_recurse(self):
        n = 50_000
        g = IndexedDigraph(n, [[i + 1] if i + 1 < n else [] for i in range(n)])
        assert scc(g)[1] == n

    @settings(max_examples=80)
    @given(st.integers(1, 12).flatmap(lambda n: st.lists(st.lists(st.integers(0, n - 1), max_size=3), min_size=n, max_size=n)))
    def test_against_networkx(self, adj):
        n = len(adj)
        comp, count = scc(IndexedDigraph(n, adj))
        g = nx.DiGraph()
        g.add_nodes_from(range(n))
        g.add_edges_from((v, w) for v in range(n) for w in adj[v])
        ref = list(nx.strongly_connected_components(g))
        assert count == len(ref)
        for c in ref:
            assert len({comp[v] for v in c}) == 1


class TestGreen:
    def test_t3(self):
        s = complete(T3)
        counts = green_counts(s)
        assert counts == {"R": 5, "L": 7, "H": 13, "D": 3}
        assert green_oracle(s.elements)[0] == counts

    def test_group(self):
        assert green_counts(complete(S3)) == {"R": 1, "L": 1, "H": 1, "D": 1}

    def test_toy(self):
        s = complete(TOY)
        assert green_counts(s) == green_oracle(s.elements)[0]

    def test_random_corpus(self):
        rng = random.Random(4)
        checked = 0
        while checked < 25:
            kind = rng.choice(["transformation", "bmat"])
            gens = random_gens(rng, kind, rng.randint(2, 4 if kind == "transformation" else 3), rng.randint(1, 3))
            s = complete(gens)
            if s.size > 200:
                continue
            counts = green_counts(s)
            oracle, rclasses = green_oracle(s.elements)
            assert counts == oracle
            assert counts["H"] >= max(counts["R"], counts["L"])
            assert counts["D"] <= min(counts["R"], counts["L"])
            comp, _ = scc(cayley_graph(s))
            for i in range(s.size):
                for j in range(s.size):
                    assert (comp[i] == comp[j]) == (rclasses[i] == rclasses[j])
            checked += 1

    def test_requires_complete(self):
        with pytest.raises(ValueError):
            green_counts(froidure_pin(minimal_snapshot(T3), limit=5))


class TestExport:
    def test_one_element(self):
        s = complete([Transformation([0])])
        g = cayley_graph(s)
        assert list(g.edges()) == [(0, 0, 0)]
        assert export_dot(IndexedDigraph(1, [[]])) == "digraph cayley {\n  0;\n}\n"

    def test_t3_edges(self):
        s = complete(T3)
        g = cayley_graph(s)
        edges = list(g.edges())
        assert len(edges) == 81
        for i, a, j in edges:
            assert s.elements[j] == s.elements[i] * T3[a]
        for i, a, j in cayley_graph(s, "left").edges():
            assert s.elements[j] == T3[a] * s.elements[i]
        lines = export_edges(g).splitlines()
        assert lines[0] == "0 0 %d" % s.right[0][0] and len(lines) == 81

    def test_dot_parses(self):
        s = complete(T3)
        g = cayley_graph(s)
        text = export_dot(g, [s.word_of(i) for i in range(s.size)])
        assert text == export_dot(g, [s.word_of(i) for i in range(s.size)])
        (parsed,) = pydot.graph_from_dot_data(text)
        assert len(parsed.get_nodes()) == 27
        assert len(parsed.get_edges()) == 81
        got = {(int(e.get_source()), int(e.get_destination())) for e in parsed.get_edges()}
        assert got == {(i, j) for i, _, j in g.edges()}
