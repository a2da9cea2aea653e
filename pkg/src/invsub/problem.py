"""Problem files: the matrices to analyse plus an optional shift.

Two layouts are accepted.

Line-oriented: one matrix row per line, entries separated by spaces or
commas, matrices separated by one or more blank lines.  ``#`` starts a
comment.  An optional ``shift <s>`` line may precede the first matrix::

    # three nilpotent 4x4 matrices
    shift 1
    0 0 0 1
    0 0 0 0
    0 0 0 0
    0 0 0 0

    0 0 0 0
    ...

Structured (JSON, recognised by a leading ``{``)::

    {"matrices": [[[0, 0, 0, 1], ...], ...], "shift": "1"}

Entries are integers or "p/q" strings in either layout.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import RatMatrix, as_fraction

_ENTRY = re.compile(r"^[+-]?\d+(?:/[+-]?\d+)?$")


class ProblemParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ProblemFile:
    matrices: tuple
    shift: Fraction | None = None

    @property
    def n(self) -> int:
        return self.matrices[0].rows

    def __len__(self):
        return len(self.matrices)


def _entry(token: str, line: int, col: int) -> Fraction:
    if not _ENTRY.match(token):
        raise ProblemParseError(f"malformed entry {token!r}", line, col)
    try:
        return as_fraction(token)
    except ZeroDivisionError:
        raise ProblemParseError(f"zero denominator in {token!r}", line, col) from None


def _validate(blocks: list, where: list) -> tuple:
    """Check squareness and a common size; ``where[i]`` locates block i."""
    if not blocks:
        raise ProblemParseError("no matrices given")
    n = len(blocks[0])
    mats = []
    for b, (line, col) in zip(blocks, where):
        if len(b) != n:
            raise ProblemParseError(f"matrix has {len(b)} rows, expected {n}", line, col)
        for r, row in enumerate(b):
            if len(row) != n:
                raise ProblemParseError(f"row has {len(row)} entries, expected {n}",
                                         None if line is None else line + r, col)
        mats.append(RatMatrix(b))
    return tuple(mats)


def _parse_lines(text: str) -> ProblemFile:
    blocks: list[list] = []
    where: list[tuple[int, int]] = []
    current: list | None = None
    shift = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            current = None
            continue
        stripped = line.strip()
        if stripped.split()[0].lower() == "shift":
            if blocks:
                raise ProblemParseError("shift must come before the matrices", lineno, 1)
            parts = stripped.split()
            if len(parts) != 2:
                raise ProblemParseError("expected 'shift <value>'", lineno, 1)
            shift = _entry(parts[1], lineno, line.index(parts[1]) + 1)
            continue
        row = []
        for m in re.finditer(r"[^\s,]+", line):
            row.append(_entry(m.group(), lineno, m.start() + 1))
        if current is None:
            current = []
            blocks.append(current)
            where.append((lineno, 1))
        elif len(row) != len(current[0]):
            col = len(line) - len(line.lstrip()) + 1
            raise ProblemParseError(f"ragged row: {len(row)} entries, expected {len(current[0])}", lineno, col)
        current.append(row)
    return ProblemFile(_validate(blocks, where), shift)


def _parse_json(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict) or "matrices" not in data:
        raise ProblemParseError("expected an object with a 'matrices' list")
    mats = data["matrices"]
    if not isinstance(mats, list):
        raise ProblemParseError("'matrices' must be a list")
    blocks = []
    for i, m in enumerate(mats):
        if not isinstance(m, list) or not all(isinstance(r, list) for r in m) or not m:
            raise ProblemParseError(f"matrix {i + 1} must be a nonempty list of rows")
        rows = []
        for r, row in enumerate(m):
            vals = []
            for c, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, (int, str)):
                    raise ProblemParseError(f"matrix {i + 1}, row {r + 1}, entry {c + 1}: "
                                            f"expected an integer or 'p/q' string")
                try:
                    vals.append(_entry(str(x).strip(), None, None))
                except ProblemParseError as exc:
                    raise ProblemParseError(f"matrix {i + 1}, row {r + 1}, entry {c + 1}: {exc}") from None
            rows.append(vals)
        blocks.append(rows)
    shift = data.get("shift")
    if shift is not None:
        if isinstance(shift, bool) or not isinstance(shift, (int, str)):
            raise ProblemParseError("shift must be an integer or 'p/q' string")
        shift = _entry(str(shift).strip(), None, None)
    try:
        mats = _validate(blocks, [(None, None)] * len(blocks))
    except ProblemParseError as exc:
        raise ProblemParseError(str(exc)) from None
    return ProblemFile(mats, shift)


def parse_problem(text: str) -> ProblemFile:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_lines(text)


def format_problem(problem: ProblemFile) -> str:
    """Line-oriented text for ``problem`` (parses back to an equal value)."""
    from .exact_arith import format_fraction

    out = []
    if problem.shift is not None:
        out.append(f"shift {format_fraction(problem.shift)}")
    for i, m in enumerate(problem.matrices):
        if i:
            out.append("")
        out.extend(" ".join(format_fraction(x) for x in row) for row in m)
    return "\n".join(out) + "\n"
