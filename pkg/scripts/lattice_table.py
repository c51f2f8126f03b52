#!/usr/bin/env python3
"""Print admissible discriminants with their normalized witnesses and the witness group."""

from __future__ import annotations

import argparse

from dpk import lattice as lat


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=200)
    args = ap.parse_args()
    res = lat.admissible_discriminants(args.max)
    print(" delta   a    b   even")
    for d, a, b in res.witnesses:
        print(f"{d:6d} {a:3d} {b:4d}   {lat.evenness_check(a, b)}")
    print(f"# {res.warning}")
    w = lat.labelling_witness()
    print(f"witness {w.vector}: complement rank {w.complement_rank}, det {w.complement_det}, group {w.group}")
    print(f"euler number from (6, 6, 9): {lat.euler_p2(6, 6, 9)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
