#!/usr/bin/env python3
"""Randomized engine-vs-oracle agreement run (defaults to 100 cases).

Usage: python scripts/run_agreement_suite.py [N_CASES] [SEED]
Exits nonzero on the first disagreement.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from aggraded.randomized import DEFAULT_SEED, run_agreement_suite  # noqa: E402


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else DEFAULT_SEED
    t0 = time.monotonic()
    stats = run_agreement_suite(n, seed=seed, progress=max(1, n // 10))
    dt = time.monotonic() - t0
    print(
        f"agreement suite: {stats.checked} cases, zero discrepancies "
        f"({stats.skipped_window} window skips, {stats.skipped_trivial} trivial skips, {dt:.1f}s)"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
