#!/usr/bin/env python3
"""Print the elliptic endoscopic data tables (with out-groups and iota) and the
refined tables for each standard Levi, for a range of dimensions."""

import argparse

from endolab import endoscopy


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d-min", type=int, default=7)
    ap.add_argument("--d-max", type=int, default=12)
    args = ap.parse_args()

    ctx = endoscopy.RealCtx()
    for d in range(args.d_min, args.d_max + 1):
        delta = 1 if (d % 2 == 1 or (d // 2) % 2 == 0) else -1
        print(f"\n== d = {d}, delta = {delta} ==")
        for h in endoscopy.enumerate_elliptic(d, delta, ctx):
            print(
                f"  H = SO({h.d_plus},{h.delta_plus.rep}) x SO({h.d_minus},{h.delta_minus.rep})"
                f"   |Out| = {endoscopy.out_group_size(h)}"
                f"   iota = {endoscopy.iota(d, h)}"
                f"   cuspidal = {endoscopy.endo_is_cuspidal_R(h)}"
            )
        for levi in ("M1", "M2", "M12"):
            rows = endoscopy.enumerate_G_endoscopy(levi, d, delta, ctx)
            ok = all(endoscopy.tau_k_identity_check(levi, g, d) for g in rows)
            print(f"  {levi}: {len(rows)} refined data, tau-k identity: {ok}")


if __name__ == "__main__":
    main()
