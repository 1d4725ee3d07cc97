"""Product counts for the full transformation monoids T_n, sequential and by fragment count.

    python3 scripts/table1.py --max-n 6 --ks 1,2,4,8 [--csv out.csv]
"""

import argparse
import csv
import sys
import time
from dataclasses import dataclass, field

from fpsemi.concurrent import concurrent_froidure_pin
from fpsemi.elements import full_transformation_generators
from fpsemi.fropin import froidure_pin
from fpsemi.snapshot import minimal_snapshot

# published totals, for side-by-side comparison
REFERENCE = {
    "sequential": {3: 40, 4: 340, 5: 3877, 6: 54592, 7: 926136},
    1: {3: 45, 4: 405, 5: 4535, 6: 66293},
}


@dataclass
class Config:
    min_n: int = 3
    max_n: int = 6
    ks: list = field(default_factory=lambda: [1, 2, 4, 8])
    seed: int = 0
    recompute: bool = False


def rows(cfg):
    for n in range(cfg.min_n, cfg.max_n + 1):
        gens = full_transformation_generators(n)
        t0 = time.perf_counter()
        s = froidure_pin(minimal_snapshot(gens))
        ms = (time.perf_counter() - t0) * 1000
        yield {"n": n, "engine": "sequential", "k": "", "size": s.size, "products": s.products,
               "reference": REFERENCE["sequential"].get(n, ""), "ms": f"{ms:.1f}"}
        for k in cfg.ks:
            t0 = time.perf_counter()
            c = concurrent_froidure_pin(gens, k, seed=cfg.seed, recompute=cfg.recompute)
            ms = (time.perf_counter() - t0) * 1000
            yield {"n": n, "engine": "concurrent", "k": k, "size": c.size, "products": c.products,
                   "reference": REFERENCE.get(k, {}).get(n, ""), "ms": f"{ms:.1f}"}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--ks", default="1,2,4,8")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--recompute", action="store_true")
    p.add_argument("--csv", help="write CSV here instead of stdout")
    a = p.parse_args(argv)
    cfg = Config(a.min_n, a.max_n, [int(k) for k in a.ks.split(",")], a.seed, a.recompute)
    header = ["n", "engine", "k", "size", "products", "reference", "ms"]
    fh = open(a.csv, "w", newline="") if a.csv else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
        w.writeheader()
        for row in rows(cfg):
            w.writerow(row)
            fh.flush()
    finally:
        if a.csv:
            fh.close()


if __name__ == "__main__":
    main()
