"""Random sweep of triple Massey products for x1^(p^f) [x2,x3] ... [x_{d-1},x_d].

Counts how many random character triples give empty, essential, and
zero-containing products.

    python scripts/massey_sweep.py --p 3 --f 1 --d 3 --trials 500
"""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from kummerian.massey import triple_massey
from kummerian.words import Presentation, RandomSource


@dataclass
class SweepConfig:
    p: int = 3
    f: int = 1
    d: int = 3
    trials: int = 500
    seed: int = 0


def relator_text(p: int, f: int, d: int) -> str:
    if d % 2 == 0:
        raise ValueError("d must be odd")
    tail = " ".join(f"[x{i},x{i + 1}]" for i in range(2, d, 2))
    return f"x1^{p**f} {tail}".strip()


def sweep(cfg: SweepConfig) -> Counter:
    names = [f"x{i + 1}" for i in range(cfg.d)]
    P = Presentation.from_strings(cfg.p, names, [relator_text(cfg.p, cfg.f, cfg.d)])
    rng = RandomSource(cfg.seed)
    counts = Counter()
    for _ in range(cfg.trials):
        phis = [tuple(rng.randrange(cfg.p) for _ in range(cfg.d)) for _ in range(3)]
        v = triple_massey(P, *phis)
        counts["essential" if v.essential else "contains 0" if v.contains_zero else "empty"] += 1
    return counts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args()))
    start = time.perf_counter()
    counts = sweep(cfg)
    print(f"relator {relator_text(cfg.p, cfg.f, cfg.d)}, p={cfg.p}, {cfg.trials} triples, seed {cfg.seed}")
    for k in ("empty", "contains 0", "essential"):
        print(f"  {k:<11} {counts[k]}")
    print(f"  {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
