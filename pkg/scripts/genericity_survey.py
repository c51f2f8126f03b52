#!/usr/bin/env python3
"""Survey seeded random constructions over F_p and tally the reasons for non-genericity."""

from __future__ import annotations

import argparse
from collections import Counter

from dpk.pipeline import genericity_trial


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--scan", action="store_true", help="also scan every fiber over F_p")
    args = ap.parse_args()
    reasons: Counter = Counter()
    generic = 0
    for seed in range(args.start, args.start + args.seeds):
        trial = genericity_trial(args.prime, seed, scan=args.scan)
        c = trial.check()
        print(f"seed {seed:3d}: {c.status:7s} {c.details}", flush=True)
        if trial.generic:
            generic += 1
        else:
            reasons[c.details.split(":")[1].strip() if ":" in c.details else c.details] += 1
    print(f"\n{generic}/{args.seeds} generic")
    for why, n in reasons.most_common():
        print(f"{n:4d}  {why}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
