"""Acceptance oracles, one test (and one printed PASS/FAIL line) per criterion.

Run with pytest for the full suite, or directly (`python tests/test_acceptance.py`)
to get only the six criterion lines.  The optional full-elimination strategy
runs when DPK_ACCEPT_ELIMINATION=1.
"""

from __future__ import annotations

import itertools
import os
import random
import sys
import time
from math import prod

from dpk import lattice as lat
from dpk.geometry import PlaneCurve
from dpk.groebner import Ideal, buchberger, saturate
from dpk.hilbert import _coeff_rows, degree_piece_span, hilbert
from dpk.linalg import rank
from dpk.pipeline import NonGenericError, example_dataset, genericity_trial, verify_example
from dpk.ring import MonomialOrder, MultiPoly, make_ring

RESULTS: dict[int, tuple[bool, str]] = {}
RUNTIME_BUDGET = 15 * 60
GENERICITY_TRIALS = 20
GENERICITY_PRIME = 7


def record(n: int, ok: bool, details: str) -> None:
    RESULTS[n] = (ok, details)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({details})", flush=True)


_VERIFY = {}


def example_run():
    """The explicit example, run once and shared by criteria 1 to 3."""
    if not _VERIFY:
        skip = set() if os.environ.get("DPK_ACCEPT_ELIMINATION") == "1" else {"elimination"}
        t0 = time.perf_counter()
        res = verify_example(skip=skip, threads=None)
        _VERIFY["res"] = res
        _VERIFY["seconds"] = time.perf_counter() - t0 - res.timings.get("elimination", 0.0)
    return _VERIFY["res"], _VERIFY["seconds"]


CRITERION_1 = (
    "T-dim-degree", "T-generators", "T-h0", "T-cubics-span", "net-decomposition",
    "E1-smooth-cubic", "E2-smooth-cubic", "E1-side-determinant", "E2-side-determinant",
    "X-smooth", "X-no-planes", "deformation-dim", "E3-smooth-cubic", "dual-E3-census",
    "dual-E3-equals-B_II", "printed-B_I-smooth-sextic", "printed-B_II-nine-cusps",
    "printed-B_I-B_II-transverse", "lines-B_I-equals-printed",
)


def test_criterion_1_example_regression():
    res, seconds = example_run()
    status = {c.name: c.status for c in res.checks}
    missing = [n for n in CRITERION_1 if n not in status]
    failed = [n for n in CRITERION_1 if status.get(n) != "pass"]
    in_time = seconds < RUNTIME_BUDGET
    elim = status.get("elimination-B_I", "absent")
    ok = not missing and not failed and in_time and elim != "fail"
    record(1, ok, f"{len(CRITERION_1) - len(failed)}/{len(CRITERION_1)} checks pass, "
                  f"{seconds:.0f} s without elimination, elimination {elim}"
                  + (f", failed {failed}" if failed else "") + (f", missing {missing}" if missing else ""))
    assert ok


def test_criterion_2_fiber_scan():
    res, _ = example_run()
    D, B = example_dataset()
    status = {c.name: c for c in res.checks}
    scan_ok = status["scan-consistency"].status == "pass"
    tri = status["trisection"]
    curves = (PlaneCurve(B["B_I"]), PlaneCurve(B["B_II"]))
    scan = res.artifacts["scan"]
    table = {"smooth": (0, 0), "I": (1, 1), "II": (1, 1), "III": (2, 2), "IV": (2, 1)}
    bad = []
    for r in scan.reports:
        singular = r.census.as_tuple() != (0, 0)
        on_curve = curves[0].contains(r.point) or curves[1].contains(r.point)
        if singular != on_curve or table.get(r.type) != r.census.as_tuple():
            bad.append(r.point)
    ok = scan_ok and tri.status == "pass" and len(scan.reports) == 31 and not bad
    record(2, ok, f"{len(scan.reports)} points, types {scan.counts}, mismatches {bad}; {tri.details}")
    assert ok


def test_criterion_3_euler():
    res, _ = example_run()
    e = lat.euler_p2(6, 6, 9)
    bad = []
    for dI, dII in itertools.product(range(1, 9), repeat=2):
        for bIV in range((dII - 1) * (dII - 2) // 2 + 1):
            if lat.euler_general(3, lat.derived_strata(dI, dII, bIV)) != lat.euler_p2(dI, dII, bIV):
                bad.append((dI, dII, bIV))
    example = next(c for c in res.checks if c.name == "euler")
    ok = e == 27 and not bad and example.status == "pass"
    record(3, ok, f"euler_p2(6,6,9) = {e}, {len(bad)} disagreements for d <= 8; {example.details}")
    assert ok


def test_criterion_4_lattice():
    problems = []
    for a, b in itertools.product(range(-20, 21), repeat=2):
        if lat.gram_K(a, b).det != lat.delta(a, b):
            problems.append(("det", a, b))
        a2, b2 = lat.normalize_sigma(a, b)
        if lat.delta(a2, b2) != lat.delta(a, b) or lat.evenness_check(a2, b2) != lat.evenness_check(a, b):
            problems.append(("normalize", a, b))
    enum = lat.admissible_discriminants(200)
    if enum.values != tuple(range(9, 201, 12)):
        problems.append(("enum", enum.values))
    rng = random.Random(4)
    snf_fail = 0
    for _ in range(1000):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        snf_fail += not lat.smith_normal_form(M).verify()
    w = lat.labelling_witness()
    if snf_fail:
        problems.append(("snf", snf_fail))
    if str(w.group) != "Z/3 + Z/6":
        problems.append(("group", str(w.group)))
    ok = not problems
    record(4, ok, f"{len(enum.values)} discriminants 9..{enum.values[-1]}, 1000 SNF certificates, "
                  f"witness group {w.group}" + (f", problems {problems[:5]}" if problems else ""))
    assert ok


def _random_form(R, d, rng, terms):
    monos = R.monomials_of_degree(d)
    picks = rng.sample(monos, min(terms, len(monos)))
    return MultiPoly(R, {m: rng.randrange(1, R.field.p) for m in picks})


def _random_ideal(rng, R):
    return [_random_form(R, rng.randint(1, 3), rng, rng.randint(1, 4)) for _ in range(rng.randint(2, 4))]


def test_criterion_5_engine():
    rng = random.Random(5)
    R = make_ring(7, ["x0", "x1", "x2", "x3"])
    lex = MonomialOrder.lex(4)
    fails: dict[str, int] = {}

    def fail(name):
        fails[name] = fails.get(name, 0) + 1

    for _ in range(100):
        gens = _random_ideal(rng, R)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        if [g.terms for g in buchberger(gens)] != [g.terms for g in buchberger(shuffled)]:
            fail("gb-permutation")
    for _ in range(20):
        I = Ideal(_random_ideal(rng, R), R)
        x = R.var(rng.randrange(4))
        S = saturate(I, x)
        if saturate(S, x) != S or not S.contains_ideal(I):
            fail("saturation")
    for _ in range(40):
        gens = _random_ideal(rng, R)
        I = Ideal(gens, R)
        f = sum((g * _random_form(R, 1, rng, 2) for g in gens), R.zero())
        g = f + _random_form(R, 2, rng, 3)
        for h in (f, g):
            if I.contains(h) != I.contains(h, order=lex):
                fail("membership")
        if not I.contains(f):
            fail("membership")
    R101 = make_ring(101, ["x0", "x1", "x2", "x3"])
    ci = 0
    for _ in range(20):
        degs = [rng.randint(1, 3) for _ in range(rng.randint(1, 3))]
        gens = [_random_form(R101, d, rng, 50) for d in degs]
        h = hilbert(Ideal(gens, R101))
        if h.dim == 3 - len(degs):
            ci += 1
            if h.degree != prod(degs):
                fail("ci-degree")
    if ci < 15:
        fail("ci-degree-sample")
    for _ in range(40):
        gens = _random_ideal(rng, R)
        h = hilbert(Ideal(gens, R))
        for d in range(6):
            basis = {m: i for i, m in enumerate(R.monomials_of_degree(d))}
            span = degree_piece_span(gens, R, d)
            r = rank(R.field, _coeff_rows(span, basis)) if span else 0
            if h.hilbert_function(d) != len(basis) - r:
                fail("hilbert-oracle")
                break
    ok = not fails
    record(5, ok, "100 permutation GBs, 20 saturations, 40 two-order memberships, "
                  f"{ci} complete intersections, 40 Hilbert oracles" + (f"; failures {fails}" if fails else ""))
    assert ok


def test_criterion_6_genericity():
    generic = consistent = 0
    engine_errors, notes = [], []
    for seed in range(GENERICITY_TRIALS):
        try:
            trial = genericity_trial(GENERICITY_PRIME, seed, scan=True, threads=None)
        except NonGenericError as exc:        # never expected here: trials catch their own
            notes.append(f"{seed}: {exc}")
            continue
        except Exception as exc:               # an engine error is a failure of the criterion
            engine_errors.append(f"{seed}: {type(exc).__name__}: {exc}")
            continue
        c = trial.check()
        print(f"  seed {seed}: {c.status} {c.details}", flush=True)
        if trial.generic:
            generic += 1
            consistent += trial.consistent is True
    rate = generic / GENERICITY_TRIALS
    ok = rate >= 0.5 and consistent == generic and not engine_errors
    record(6, ok, f"{generic}/{GENERICITY_TRIALS} generic over F_{GENERICITY_PRIME}, "
                  f"{consistent}/{generic} scan-consistent, {len(engine_errors)} engine errors"
                  + (f" {engine_errors}" if engine_errors else ""))
    assert ok


def main() -> int:
    tests = [test_criterion_1_example_regression, test_criterion_2_fiber_scan, test_criterion_3_euler,
             test_criterion_4_lattice, test_criterion_5_engine, test_criterion_6_genericity]
    for n, t in enumerate(tests, 1):
        try:
            t()
        except AssertionError:
            pass
        except Exception as exc:
            record(n, False, f"error {type(exc).__name__}: {exc}")
    print()
    for n in sorted(RESULTS):
        ok, details = RESULTS[n]
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}")
    return 0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == 6 else 1


if __name__ == "__main__":
    sys.exit(main())
