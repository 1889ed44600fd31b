#!/usr/bin/env python3
"""Sweep the archimedean comparison identities over a grid of dimensions,
Levis and highest weights, printing per-case timing and any counterexample."""

import argparse
import time

from endolab.archcmp import ArchCase, verify_identity


def weights(m, max_coord):
    yield (0,) * m
    yield (1,) + (0,) * (m - 1)
    yield tuple(([max_coord, 1, 1] + [0] * m)[:m])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-coord", type=int, default=3)
    args = ap.parse_args()

    bad = 0
    for d in (7, 8, 9, 10):
        levis = ["M1", "M2", "M12"] if d % 2 else ["M1", "M12"]
        for levi in levis:
            for lam in weights(d // 2, args.max_coord):
                t0 = time.time()
                case = ArchCase(levi, d, lam)
                rep = verify_identity(case, samples=args.samples, seed=args.seed, vanishing_controls=3)
                tag = "ok" if rep.ok else "COUNTEREXAMPLE"
                print(f"d={d} {levi:<3} lambda={lam}  {tag}  ({time.time()-t0:.1f}s)")
                if not rep.ok:
                    bad += 1
                    print("   ", rep.failures[0])
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
