"""Labute's inequality (f - 1 + w(v)/w(u)) / f < p for the relators x1^(p^f) [x2,x3]..."""
import argparse

from kummerian.magnus import labute_mildness
from kummerian.words import Presentation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="2,3,5")
    ap.add_argument("--max-f", type=int, default=3)
    ap.add_argument("--d", type=int, default=5)
    args = ap.parse_args()
    names = [f"x{i + 1}" for i in range(args.d)]
    tail = " ".join(f"[x{i},x{i + 1}]" for i in range(2, args.d, 2))
    for p in (int(s) for s in args.primes.split(",")):
        for f in range(1, args.max_f + 1):
            P = Presentation.from_strings(p, names, [f"x1^{p**f} {tail}"])
            m = labute_mildness(P)[0]
            print(f"p={p} f={f}: {m.status:<5} value {m.value}")


if __name__ == "__main__":
    main()
