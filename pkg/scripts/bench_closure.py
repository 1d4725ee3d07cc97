"""Closure versus fresh enumeration on random generating sets (the t1/t2/t3 protocol).

Writes one CSV per element kind into ``--outdir``.  Defaults are sized for a
laptop; raise ``--samples`` and ``--min-t1-ms`` for longer runs.
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from fpsemi import bench


@dataclass
class Suite:
    name: str
    kind: str
    degree: int
    a_range: tuple
    x_range: tuple


SUITES = [
    Suite("bmat4", "bmat", 4, (2, 4), (1, 2)),
    Suite("trans6", "transformation", 6, (2, 3), (1, 1)),
]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="results")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-t1-ms", type=float, default=1.0)
    a = p.parse_args(argv)
    out = Path(a.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for suite in SUITES:
        path = out / f"closure_{suite.name}.csv"
        rows = bench.closure_rows(
            a.samples, kind=suite.kind, degree=suite.degree, a_range=suite.a_range,
            x_range=suite.x_range, trials=a.trials, seed=a.seed, min_t1_ms=a.min_t1_ms,
        )
        with path.open("w", newline="") as fh:
            bench.write_csv(rows, bench.CLOSURE_HEADER, fh)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
