"""Orientation search across the bundled fixtures for a range of precisions.

    python scripts/orientation_table.py --max-precision 5
"""
import argparse
from dataclasses import dataclass

from kummerian.cli import fixtures_dir
from kummerian.kummer import search_orientations, start_level
from kummerian.words import parse_presentation


@dataclass
class TableConfig:
    max_precision: int = 4
    max_solutions: int = 1000
    max_branches: int = 100_000


def run(cfg: TableConfig) -> list[tuple]:
    rows = []
    for path in sorted(fixtures_dir().glob("*.pres")):
        P = parse_presentation(path.read_text()).presentation
        for n in range(start_level(P.p), cfg.max_precision + 1):
            r = search_orientations(P, n, cfg.max_solutions, cfg.max_branches)
            rows.append((path.stem, P.p, n, r.status, r.level, len(r.solutions), r.explored_branches))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-precision", type=int, default=TableConfig.max_precision)
    ap.add_argument("--max-solutions", type=int, default=TableConfig.max_solutions)
    ap.add_argument("--max-branches", type=int, default=TableConfig.max_branches)
    args = ap.parse_args()
    cfg = TableConfig(args.max_precision, args.max_solutions, args.max_branches)
    print(f"{'fixture':<18} {'p':>2} {'N':>2} {'status':<13} {'level':>5} {'sols':>5} {'branches':>8}")
    for name, p, n, status, level, nsol, br in run(cfg):
        print(f"{name:<18} {p:>2} {n:>2} {status:<13} {str(level or ''):>5} {nsol:>5} {br:>8}")


if __name__ == "__main__":
    main()
