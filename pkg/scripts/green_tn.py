"""Green's class counts of T_n, plus a DOT file of the right Cayley graph of T_3."""

import argparse

from fpsemi.analysis import cayley_graph, export_dot, green_counts
from fpsemi.elements import full_transformation_generators
from fpsemi.fropin import froidure_pin
from fpsemi.snapshot import minimal_snapshot


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--dot", default=None, help="where to write the T_3 DOT file")
    a = p.parse_args(argv)
    for n in range(3, a.max_n + 1):
        s = froidure_pin(minimal_snapshot(full_transformation_generators(n)))
        c = green_counts(s)
        print(f"T_{n}: size={s.size} R={c['R']} L={c['L']} H={c['H']} D={c['D']}")
        if n == 3 and a.dot:
            labels = [s.word_of(i) for i in range(s.size)]
            with open(a.dot, "w") as fh:
                fh.write(export_dot(cayley_graph(s), labels))


if __name__ == "__main__":
    main()
