"""Shared hypothesis strategies and settings."""

from __future__ import annotations

import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dpk.field import prime_field
from dpk.ring import MultiPoly, make_ring

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True,
)
settings.register_profile("ci", parent=settings.get_profile("default"), max_examples=200)
settings.load_profile(os.environ.get("DPK_HYPOTHESIS_PROFILE", "default"))

F5 = prime_field(5)
F7 = prime_field(7)
F101 = prime_field(101)


@st.composite
def homogeneous_forms(draw, ring, degree, max_terms=4):
    """A nonzero homogeneous form of the given degree with few terms."""
    monos = ring.monomials_of_degree(degree)
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.field.p - 1), min_size=len(picks), max_size=len(picks)))
    return MultiPoly(ring, dict(zip(picks, coeffs)))


@st.composite
def homogeneous_ideals(draw, p=7, nvars=3, max_gens=3, max_degree=3):
    """Generators of a small homogeneous ideal over F_p."""
    R = make_ring(p, [f"x{i}" for i in range(nvars)])
    k = draw(st.integers(1, max_gens))
    return [draw(homogeneous_forms(R, draw(st.integers(1, max_degree)))) for _ in range(k)]


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts, one line per criterion, at the end of the run."""
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, details = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({details})")
