#!/usr/bin/env python3
"""Run every check of the embedded F_5 example and print a table of results."""

from __future__ import annotations

import argparse

from dpk.pipeline import VERIFY_STEPS, verify_example


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--skip", action="append", default=[], choices=VERIFY_STEPS)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    res = verify_example(skip=args.skip, threads=args.threads)
    for c in res.checks:
        print(f"{c.status:8s} {c.name:32s} {c.details}")
    for step, sec in res.timings.items():
        print(f"{step:12s} {sec:8.1f} s")
    return 0 if res.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
