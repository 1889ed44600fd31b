#!/usr/bin/env python3
"""Run every verification suite through the CLI and summarize pass/fail.

Equivalent to the pytest acceptance module but usable without pytest;
honors ENDOLAB_WORKERS for the archimedean sweep.
"""

import json
import subprocess
import sys
import time

SUITE_ARGS = {
    "hilbert": ["--pairs", "500", "--seed", "404"],
    "vanishing": ["--trials", "20", "--seed", "101"],
    "satake": [],
    "signs": [],
    "waldspurger": ["--configs", "200", "--seed", "505"],
    "invariants": [],
    "kostant": ["--max-rank", "4", "--max-coord", "2"],
    "arch": ["--samples", "50", "--seed", "7"],
}


def main() -> int:
    failures = 0
    for suite, extra in SUITE_ARGS.items():
        t0 = time.time()
        proc = subprocess.run(
            [sys.executable, "-m", "endolab.cli", "verify", suite, *extra],
            capture_output=True,
            text=True,
        )
        elapsed = time.time() - t0
        try:
            status = json.loads(proc.stdout)["status"]
        except (json.JSONDecodeError, KeyError):
            status = f"error (exit {proc.returncode})"
        tag = "PASS" if proc.returncode == 0 else "FAIL"
        print(f"[{tag}] verify {suite:<12} {elapsed:7.1f}s  status={status}")
        if proc.returncode != 0:
            failures += 1
            print(proc.stdout)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
