"""Acceptance gate: the ten criteria, each exact (zero tolerance).

Every criterion prints one ``PASS``/``FAIL`` line; run with ``pytest -s`` or
directly with ``python -m tests.test_acceptance`` to see them inline.  The
lines are also repeated in pytest's terminal summary.
"""

from __future__ import annotations

import itertools
import random
import re
import subprocess
import sys
import time

from qpbw.cocycles import (
    verify_coboundary_on_B,
    verify_cocycle_on_A,
    verify_F_squares,
    verify_identifications,
    verify_zeta_properties,
)
from qpbw.cohomology import verify_dual_basis, verify_eta_square, verify_hilbert, verify_relations
from qpbw.fileformat import data_path, parse_presentation_file
from qpbw.presentations import (
    AlgebraElement,
    AlgebraMode,
    Presentation,
    check_confluence,
    format_element,
    multiply,
    normal_form,
)
from qpbw.qscalar import LaurentScalar
from qpbw.report import Report
from qpbw.resolution import verify_complex, verify_exactness_at_zero, verify_homotopy

RESULTS: dict[int, str] = {}


def record(num: int, title: str, reports: list[Report], extra: list[str] = ()) -> None:
    checks = sum(len(r.checks) for r in reports)
    bad = [r for r in reports if not r.ok]
    ok = not bad and not extra
    detail = f"{checks} checks"
    if bad:
        detail += f"; first failure in '{bad[0].title}': {bad[0].first_failure.line()}"
    if extra:
        detail += "; " + "; ".join(extra)
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({detail})"
    RESULTS[num] = line
    print(line)
    assert ok, line


def load(name: str) -> Presentation:
    return parse_presentation_file(data_path(name))


def grid(max_n: int, values=(2, 3, 4)):
    for n in range(1, max_n + 1):
        for t in range(n + 1):
            for N in itertools.product(values, repeat=t):
                yield Presentation(n, t=t, N=N)


# fixtures for the homotopy / exactness sweeps (degree 5, exponent bound 4)
HOMOTOPY_CASES = [
    Presentation(1),
    Presentation(1, t=1, N=(2,)),
    Presentation(1, t=1, N=(4,)),
    Presentation(2),
    Presentation(2, t=1, N=(3,)),
    Presentation(2, t=2, N=(2, 4)),
    Presentation(3),
    Presentation(3, t=1, N=(4,)),
    Presentation(3, t=2, N=(2, 3)),
    Presentation(3, t=3, N=(2, 3, 4)),
    Presentation(4, t=2, N=(2, 3)),
    Presentation(4, t=4, N=(2, 3, 4, 2)),
]

COHOMOLOGY_CASES = [
    Presentation(1, t=1, N=(2,)),
    Presentation(1, t=1, N=(3,)),
    Presentation(2),
    Presentation(2, t=1, N=(2,)),
    Presentation(2, t=2, N=(2, 3)),
    Presentation(3),
    Presentation(3, t=2, N=(2, 3)),
    Presentation(3, t=3, N=(2, 2, 4)),
    Presentation(4, t=3, N=(3, 2, 4)),
]


def test_criterion_1_complex():
    reports, slow = [], []
    for pres in grid(4):
        start = time.perf_counter()
        reports.append(verify_complex(pres, 6))
        elapsed = time.perf_counter() - start
        if elapsed >= 60:
            slow.append(f"n={pres.n} t={pres.t} N={pres.N} took {elapsed:.1f} s")
    record(1, f"d^2 = 0 and d_i d_j + d_j d_i = 0 through degree 6 on {len(reports)} presentations", reports, slow)


def test_criterion_2_homotopy():
    reports = [verify_homotopy(p, 5, 4) for p in HOMOTOPY_CASES]
    record(2, "sd + ds = id through degree 5, exponent bound 4", reports)


def test_criterion_3_exactness():
    reports = [verify_exactness_at_zero(p, 4) for p in HOMOTOPY_CASES]
    record(3, "every bounded monomial of S is a unit multiple of a d-image", reports)


def test_criterion_4_relations():
    reports = [verify_relations(p, 6) for p in COHOMOLOGY_CASES]
    record(4, "xi/eta relations as chain-map identities through degree 6", reports)


def test_criterion_5_dual_basis():
    reports = []
    for p in COHOMOLOGY_CASES:
        reports.append(verify_dual_basis(p, 6))
        reports.append(verify_hilbert(p, 6))
    record(5, "diagonal unit pairing and Hilbert coefficients through degree 6", reports)


def test_criterion_6_eta_square():
    reports = [verify_eta_square(p) for p in grid(3)]
    record(6, "eta_i^2 is a unit multiple of xi_i iff N_i = 2, else 0", reports)


def test_criterion_7_cocycles():
    cases = [
        load("truncated_line.alg"),
        load("qsym_n3_t2.alg"),
        load("quantum_heisenberg.alg"),
        Presentation(2, t=1, N=(4,)),
        Presentation(2, t=2, N=(2, 2)),
    ]
    reports = []
    for p in cases:
        bound = 2 * max(p.N) + 2
        for i in range(1, p.t + 1):
            reports.append(verify_zeta_properties(i, p, bound))
            reports.append(verify_cocycle_on_A(i, p, bound))
            reports.append(verify_coboundary_on_B(i, p, bound))
    record(7, "zeta associativity, vanishing on the ideal, zeta~ = -delta*h", reports)


def test_criterion_8_comparison():
    cases = list(grid(3)) + [load("quantum_heisenberg.alg"), load("uqsl3.alg"), load("quantum_plane.alg")]
    reports = []
    for p in cases:
        reports.append(verify_F_squares(p))
        reports.append(verify_identifications(p))
    record(8, "comparison squares and pullback identifications", reports)


def _random_element(rng: random.Random, n: int) -> AlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        m = tuple(rng.randint(0, 2) for _ in range(n))
        terms[m] = LaurentScalar.constant(rng.randint(-3, 3) or 1) * LaurentScalar.param(1, 2, rng.randint(-1, 1))
    return AlgebraElement(terms)


def test_criterion_9_pbw_engine():
    plane, uq = load("quantum_plane.alg"), load("uqsl3.alg")
    reports = [check_confluence(plane, AlgebraMode.B, 4), check_confluence(uq, AlgebraMode.B, 4)]
    nf = Report("normal form of x3*x1 in U_q(sl3)+")
    got = format_element(normal_form([3, 1], uq), uq)
    nf.add("x3*x1 = q1_2*x1*x3 - q1_2*x2", got == "q1_2*x1*x3 - q1_2*x2", got)
    reports.append(nf)
    rng = random.Random(20240517)
    for pres in (plane, uq):
        rep = Report(f"associativity on 1000 random triples (n={pres.n})")
        for k in range(1000):
            f, g, h = (_random_element(rng, pres.n) for _ in range(3))
            left = multiply(multiply(f, g, pres), h, pres)
            right = multiply(f, multiply(g, h, pres), pres)
            rep.add(f"triple {k}", left == right, left - right)
        reports.append(rep)
    record(9, "confluence, U_q(sl3)+ normal form, associativity", reports)


NEGATIVE = [
    ("resolution-check", "qsym_n3_t2.alg", "d-exponent"),
    ("chainmap-check", "qsym_n3_t2.alg", "xi-exponent"),
    ("cocycle-table", "truncated_line.alg", "zeta-high"),
    ("chainmap-check", "truncated_line.alg", "zeta-low"),
]


def test_criterion_10_negative_controls():
    rep = Report("negative controls")
    for command, fixture, fault in NEGATIVE:
        proc = subprocess.run(
            [sys.executable, "-m", "qpbw.cli", command, str(data_path(fixture)), "--fault", fault, "--failures-only", "--max-degree", "4"],
            capture_output=True,
            text=True,
        )
        witness = re.search(r"^FAIL .* residue=\S.*$", proc.stdout, re.M)
        ok = proc.returncode == 1 and witness is not None
        rep.add(f"{command} --fault {fault}", ok, f"exit {proc.returncode}, witness: {witness.group(0) if witness else None}")
        # the uncorrupted run of the same command must be clean
        clean = subprocess.run(
            [sys.executable, "-m", "qpbw.cli", command, str(data_path(fixture)), "--failures-only", "--max-degree", "4"],
            capture_output=True,
            text=True,
        )
        rep.add(f"{command} without fault", clean.returncode == 0, f"exit {clean.returncode}")
    record(10, "each corrupted build exits 1 with a witness", [rep])


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
