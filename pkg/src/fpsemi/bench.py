"""Benchmark harness: Closure versus fresh enumeration, and a fragment sweep.

Both suites write CSV with a fixed header.  Times are wall-clock
milliseconds averaged over ``trials`` runs.
"""

import csv
import random
import time

from .closure import closure
from .concurrent import concurrent_froidure_pin
from .elements import random_element
from .fropin import froidure_pin
from .snapshot import minimal_snapshot

CLOSURE_HEADER = ["sample", "A", "X", "S", "M", "t1_ms", "t2_ms", "t3_ms", "t2_over_t3", "t1_plus_t2_over_t3"]
FRAGMENT_HEADER = ["engine", "k", "size", "products", "ms"]


def _ms(t0):
    return (time.perf_counter() - t0) * 1000.0


def _fmt(x):
    return f"{x:.3f}"


def sample_closure_inputs(rng, kind, degree, a_range, x_range, x_from_s=False):
    """Draw one (A, X) pair; elements are uniform over the whole universe.

    With ``x_from_s`` the extras are drawn from <A> instead.
    """
    na = rng.randint(*a_range)
    A = list(dict.fromkeys(random_element(kind, degree, rng) for _ in range(na)))
    nx = rng.randint(*x_range)
    if x_from_s:
        s = froidure_pin(minimal_snapshot(A))
        X = [s.elements[rng.randrange(s.size)] for _ in range(nx)]
    else:
        X = [random_element(kind, degree, rng) for _ in range(nx)]
    return A, X


def closure_rows(samples, kind="transformation", degree=5, a_range=(2, 4), x_range=(1, 1),
                 trials=3, seed=0, min_t1_ms=0.0, x_from_s=False, max_attempts=None):
    """Yield one dict per accepted sample, keyed by :data:`CLOSURE_HEADER`."""
    if samples < 1 or trials < 1 or degree < 1:
        raise ValueError("samples, trials and degree must be positive")
    if not (1 <= a_range[0] <= a_range[1]) or not (1 <= x_range[0] <= x_range[1]):
        raise ValueError("bad size range")
    rng = random.Random(seed)
    if max_attempts is None:
        max_attempts = 100 * samples
    accepted = 0
    attempts = 0
    while accepted < samples:
        attempts += 1
        if attempts > max_attempts:
            raise RuntimeError(f"only {accepted} samples passed the t1 floor after {max_attempts} draws")
        A, X = sample_closure_inputs(rng, kind, degree, a_range, x_range, x_from_s)
        t1 = t2 = t3 = 0.0
        for _ in range(trials):
            t0 = time.perf_counter()
            s = froidure_pin(minimal_snapshot(A))
            t1 += _ms(t0)
            t0 = time.perf_counter()
            t = closure(s, X)
            t2 += _ms(t0)
            m = t.size
            t0 = time.perf_counter()
            froidure_pin(minimal_snapshot(A + [x for x in dict.fromkeys(X) if x not in s.index]), limit=m)
            t3 += _ms(t0)
        t1, t2, t3 = t1 / trials, t2 / trials, t3 / trials
        if t1 < min_t1_ms:
            continue
        yield {
            "sample": accepted,
            "A": len(A),
            "X": len(X),
            "S": s.size,
            "M": m,
            "t1_ms": _fmt(t1),
            "t2_ms": _fmt(t2),
            "t3_ms": _fmt(t3),
            "t2_over_t3": _fmt(t2 / t3) if t3 > 0 else "nan",
            "t1_plus_t2_over_t3": _fmt((t1 + t2) / t3) if t3 > 0 else "nan",
        }
        accepted += 1


def fragment_rows(gens, ks=(1, 2, 4, 8), trials=3, seed=0, threads=True):
    """Sequential baseline row, then one row per fragment count."""
    if trials < 1 or not ks or min(ks) < 1:
        raise ValueError("trials and every k must be positive")
    ms = 0.0
    for _ in range(trials):
        t0 = time.perf_counter()
        s = froidure_pin(minimal_snapshot(gens))
        ms += _ms(t0)
    yield {"engine": "sequential", "k": 1, "size": s.size, "products": s.products, "ms": _fmt(ms / trials)}
    for k in ks:
        ms = 0.0
        for _ in range(trials):
            t0 = time.perf_counter()
            s = concurrent_froidure_pin(gens, k, seed=seed, threads=threads)
            ms += _ms(t0)
        yield {"engine": "concurrent", "k": k, "size": s.size, "products": s.products, "ms": _fmt(ms / trials)}


def write_csv(rows, header, fh):
    w = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
        fh.flush()
