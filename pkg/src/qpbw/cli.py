"""qpbw command-line front end.

Exit status: 0 when every check passes, 1 when a verification fails (the
report carries witnesses), 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import faults
from .cocycles import (
    NotBraidedCentral,
    cocycle_table,
    default_bound,
    filtration_degree,
    verify_basis_of_A,
    verify_coboundary_on_B,
    verify_cocycle_on_A,
    verify_F_squares,
    verify_identifications,
    verify_zeta_properties,
)
from .cohomology import (
    cohomology_basis,
    eta,
    hilbert_coefficients,
    verify_chain_map,
    verify_dual_basis,
    verify_eta_square,
    verify_hilbert,
    verify_products,
    verify_relations,
    xi,
)
from .fileformat import PresentationSyntaxError, parse_presentation_file
from .presentations import (
    AlgebraMode,
    ConfluenceFailure,
    NonTerminating,
    Presentation,
    associated_graded,
    check_braided_central,
    check_confluence,
    format_monomial,
    format_presentation,
    validate_presentation,
)
from .qscalar import ScalarError
from .report import Report
from .resolution import format_generator, verify_complex, verify_exactness_at_zero, verify_homotopy

COMMANDS = (
    "validate",
    "gr",
    "resolution-check",
    "cohomology",
    "cocycle-table",
    "chainmap-check",
    "full-verify",
)


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    fingerprint: str
    reports: list[Report] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    aborted: str | None = None
    wall_time: float = 0.0

    @property
    def checks(self) -> int:
        return sum(len(r.checks) for r in self.reports)

    @property
    def failed(self) -> int:
        return sum(r.failed for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed or self.aborted else 0

    def render(self, fmt: str = "text", failures_only: bool = False) -> str:
        lines = [f"# command: {self.command}", f"# presentation: sha256:{self.fingerprint}"]
        if faults.current():
            lines.append(f"# faults: {', '.join(sorted(faults.current()))}")
        lines += self.output
        for r in self.reports:
            if fmt == "tsv":
                lines += [
                    f"{'OK' if c.ok else 'FAIL'}\t{r.title}\t{c.obj}\t{'' if c.ok else c.residue}"
                    for c in r.checks
                    if not (failures_only and c.ok)
                ]
            else:
                lines += r.lines(failures_only)
        if self.aborted:
            lines.append(f"ABORTED {self.aborted}")
        lines.append(f"# total: {self.checks} checks, {self.checks - self.failed} passed, {self.failed} failed")
        lines.append(f"# wall time: {self.wall_time:.3f} s")
        return "\n".join(lines) + "\n"


def fingerprint(pres: Presentation) -> str:
    return hashlib.sha256(format_presentation(pres).encode("utf-8")).hexdigest()


def parse_assignment(items: list[str]) -> dict[tuple[int, int], Fraction]:
    out = {}
    for item in items:
        name, _, value = item.partition("=")
        name = name.strip()
        if not (name.startswith("q") and "_" in name and value):
            raise UsageError(f"--assign expects q<i>_<j>=<rational>, got {item!r}")
        try:
            i, j = (int(x) for x in name[1:].split("_"))
            v = Fraction(value.strip())
        except ValueError:
            raise UsageError(f"--assign expects q<i>_<j>=<rational>, got {item!r}") from None
        if i >= j:
            raise UsageError(f"{name}: parameters require i<j")
        if v == 0:
            raise UsageError(f"{name}: q-parameters must be nonzero")
        out[(i, j)] = v
    return out


# -- command bodies --------------------------------------------------------------


def _validate(pres: Presentation, run: RunReport, opts) -> bool:
    rep = validate_presentation(pres)
    run.reports.append(rep)
    if not rep.ok:
        return False
    bound = opts.exp_bound or 4
    modes = [AlgebraMode.B] + ([AlgebraMode.A] if pres.t else [])
    for mode in modes:
        rep = check_confluence(pres, mode, bound)
        run.reports.append(rep)
        if not rep.ok:
            return False
    return True


def _gr(pres, run, opts):
    gr = associated_graded(pres)
    run.output += format_presentation(gr).rstrip("\n").split("\n")
    run.reports.append(validate_presentation(gr))


def _resolution(pres, run, opts):
    s = associated_graded(pres)
    run.reports.append(verify_complex(s, opts.max_degree))
    run.reports.append(verify_homotopy(s, opts.max_degree, opts.exp_bound))
    run.reports.append(verify_exactness_at_zero(s, opts.exp_bound))


def _cohomology(pres, run, opts, *, listing=True):
    s = associated_graded(pres)
    if listing:
        hil = hilbert_coefficients(s, opts.max_degree)
        for m in range(opts.max_degree + 1):
            basis = cohomology_basis(m, s)
            if opts.format == "tsv":
                run.output += [f"{m}\t{b}\t{format_generator(b.dual_generator())}" for b in basis]
            else:
                run.output.append(f"H^{m} (dim {len(basis)}): " + (", ".join(map(str, basis)) or "0"))
        sep = "\t" if opts.format == "tsv" else " "
        run.output.append("hilbert" + ("\t" if opts.format == "tsv" else ": ") + sep.join(map(str, hil)))
    run.reports.append(verify_hilbert(s, opts.max_degree))
    run.reports.append(verify_dual_basis(s, opts.max_degree))
    run.reports.append(verify_relations(s, opts.max_degree))
    run.reports.append(verify_eta_square(s))
    run.reports.append(verify_products(s, min(opts.max_degree, 4)))


def _indices(pres, opts):
    if opts.gen is not None:
        if not 1 <= opts.gen <= pres.t:
            raise UsageError(f"--gen {opts.gen} is outside 1..t = {pres.t}")
        return [opts.gen]
    return list(range(1, pres.t + 1))


def _braided(pres, run, bound) -> bool:
    ok = True
    for j in range(1, pres.t + 1):
        rep = check_braided_central(j, pres, bound)
        run.reports.append(rep)
        ok = ok and rep.ok
    return ok


def _cocycles(pres, run, opts, *, table=True):
    idx = _indices(pres, opts)
    bound = opts.exp_bound or default_bound(pres)
    if not _braided(pres, run, bound):
        run.aborted = "cocycle sweeps need every x_i^N_i to be braided-central"
        return
    for i in idx:
        p, bideg = filtration_degree(i, pres)
        run.output.append(f"# zeta{i}: filtration degree p = {p}, bidegree {bideg}")
        if table:
            for r, s, v in cocycle_table(i, pres, bound):
                row = [format_monomial(r), format_monomial(s), str(v)]
                run.output.append(("\t" if opts.format == "tsv" else "  ").join([f"zeta{i}"] + row))
        run.reports.append(verify_zeta_properties(i, pres, bound))
        run.reports.append(verify_cocycle_on_A(i, pres, bound))
        run.reports.append(verify_coboundary_on_B(i, pres, bound))
    run.reports.append(verify_basis_of_A(pres, bound))


def _chainmaps(pres, run, opts):
    s = associated_graded(pres)
    for i in range(1, s.t + 1):
        run.reports.append(verify_chain_map(xi(i), s, opts.max_degree))
    for i in range(1, s.n + 1):
        run.reports.append(verify_chain_map(eta(i), s, opts.max_degree))
    run.reports.append(verify_F_squares(s))
    run.reports.append(verify_identifications(s))


def _full(pres, run, opts):
    if not _validate(pres, run, opts):
        run.aborted = "presentation failed validation or confluence"
        return
    _resolution(pres, run, opts)
    _cohomology(pres, run, opts, listing=False)
    if pres.t:
        _cocycles(pres, run, opts, table=False)
    _chainmaps(pres, run, opts)


def execute(command: str, pres: Presentation, opts, echo: str) -> RunReport:
    run = RunReport(echo, fingerprint(pres))
    start = time.perf_counter()
    try:
        if command == "validate":
            _validate(pres, run, opts)
        elif command == "gr":
            _gr(pres, run, opts)
        elif command == "resolution-check":
            _resolution(pres, run, opts)
        elif command == "cohomology":
            _cohomology(pres, run, opts)
        elif command == "cocycle-table":
            if not pres.t:
                raise UsageError("cocycle-table needs t >= 1")
            _cocycles(pres, run, opts)
        elif command == "chainmap-check":
            _chainmaps(pres, run, opts)
        elif command == "full-verify":
            _full(pres, run, opts)
    except (ConfluenceFailure, NonTerminating, NotBraidedCentral) as exc:
        run.aborted = f"{type(exc).__name__}: {exc}"
    run.wall_time = time.perf_counter() - start
    return run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpbw", description="Verify PBW presentations, resolutions, cohomology and cocycles.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("presentation", help="presentation file (.alg)")
    ap.add_argument("--max-degree", type=int, default=5, help="top homological degree (default 5)")
    ap.add_argument("--exp-bound", type=int, default=None, help="exponent / omega-degree bound for sweeps")
    ap.add_argument("--gen", type=int, default=None, help="restrict cocycle commands to zeta_<gen>")
    ap.add_argument("--assign", action="append", default=[], metavar="q1_2=2/3", help="numeric value for a q-parameter")
    ap.add_argument("--format", choices=("text", "tsv"), default="text")
    ap.add_argument("--fault", action="append", default=[], choices=faults.KNOWN, help="inject a deliberate bug")
    ap.add_argument("--failures-only", action="store_true", help="print only failing checks")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        opts = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if opts.max_degree < 0 or (opts.exp_bound is not None and opts.exp_bound < 1):
            raise UsageError("--max-degree must be >= 0 and --exp-bound >= 1")
        pres = parse_presentation_file(opts.presentation, validate=opts.command not in ("validate", "full-verify"))
        if opts.assign:
            pres = pres.substitute(parse_assignment(opts.assign))
    except (OSError, PresentationSyntaxError, UsageError, ScalarError, ValueError) as exc:
        print(f"qpbw: error: {exc}", file=sys.stderr)
        return 2
    echo = "qpbw " + " ".join(argv)
    with faults.injected(*opts.fault):
        try:
            run = execute(opts.command, pres, opts, echo)
        except UsageError as exc:
            print(f"qpbw: error: {exc}", file=sys.stderr)
            return 2
        sys.stdout.write(run.render(opts.format, opts.failures_only))
    return run.exit_code


if __name__ == "__main__":
    sys.exit(main())
