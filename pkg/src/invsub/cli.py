"""Command line entry point.

Exit status: 0 on success (unsolved families only produce a warning),
2 for bad command line usage, 3 for input that cannot be parsed or
validated, 4 when some matrix has non-rational eigenvalues, 5 when the
input file cannot be read.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import DomainError
from .exact_arith import as_fraction, determinant
from .invariant_search import MatrixSet, UnsupportedSpectrum, choose_shift, full_lattice_scan
from .pluecker import K_MAX
from .problem import ProblemFile, ProblemParseError, parse_problem
from .report import Report, build_report, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SPECTRUM = 4
EXIT_IO = 5

log = logging.getLogger("invsub")


class InvalidOptions(ValueError):
    """Options that do not fit the problem (bad dimension or shift)."""


@dataclass(frozen=True)
class Options:
    dims: tuple | None = None  # None: every dimension 0..n
    shift: Fraction | None = None
    max_params: int = K_MAX
    timings: bool = False


def run(problem: ProblemFile, options: Options = Options()) -> Report:
    n = problem.n
    shift = options.shift if options.shift is not None else problem.shift
    if shift is None:
        shift = choose_shift(problem.matrices)
    elif any(determinant(m.shift(shift)) == 0 for m in problem.matrices):
        raise InvalidOptions(f"shift {shift} leaves a singular matrix")
    ms = MatrixSet(problem.matrices, shift)
    dims = tuple(range(n + 1)) if options.dims is None else tuple(options.dims)
    for d in dims:
        if not 0 <= d <= n:
            raise InvalidOptions(f"dimension {d} outside 0..{n}")
    lattice = {}
    timings = {}
    for d in dims:
        t0 = time.perf_counter()
        lattice.update(full_lattice_scan(ms, options.max_params, [d]))
        timings[d] = time.perf_counter() - t0
    return build_report(ms, lattice, timings if options.timings else None)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="invsub",
        description="List the common invariant subspaces of a set of rational matrices.")
    p.add_argument("input", help="problem file ('-' for standard input)")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--dim", type=int, action="append", metavar="D",
                       help="only this dimension (repeatable)")
    which.add_argument("--all", action="store_true", help="every dimension 0..n (default)")
    p.add_argument("--shift", help="use A + sI with this s instead of the smallest valid integer")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--max-params", type=int, default=K_MAX, metavar="K",
                   help=f"parameter budget for case splits (default {K_MAX})")
    p.add_argument("--timings", action="store_true", help="include per-dimension timings")
    p.add_argument("-o", "--output", help="write the report here instead of standard output")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"invsub: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    try:
        problem = parse_problem(text)
        shift = as_fraction(args.shift) if args.shift is not None else None
        options = Options(tuple(args.dim) if args.dim else None, shift, args.max_params, args.timings)
        if args.max_params < 0:
            raise InvalidOptions("--max-params must be non-negative")
        report = run(problem, options)
    except (ProblemParseError, InvalidOptions, DomainError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, UnsupportedSpectrum):
            print(f"invsub: {exc}", file=sys.stderr)
            return EXIT_SPECTRUM
        print(f"invsub: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    for row in report.unsolved:
        log.warning("dimension %d, eigenvalues %s, chart %d left unsolved (%s)",
                    row.dimension, tuple(str(x) for x in row.eigen), row.chart, row.note)
    data = render(report, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
