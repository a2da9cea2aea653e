"""Reports: per-dimension listings of invariant families, rendered as text
tables or as versioned JSON.

The JSON layout (version 1)::

    {
      "schema": "invsub.report",
      "version": 1,
      "n": 4,
      "shift": "1",
      "matrices": [[["0", "0", "0", "1"], ...], ...],
      "complete": true,
      "sections": [
        {"dimension": 1,
         "families": [
           {"eigenvalues": ["1", "1", "1"], "chart": 1, "parameters": [],
            "generators": [["1", "0", "0", "0"]], "residual": [],
            "status": "solved", "verified": true, "note": ""}]}],
      "timings": {"1": 0.01}
    }

Numbers are exact strings ("p/q" or integers).  Generator entries and
residual constraints are polynomials in the names listed under
"parameters" (``t1``, ``t2``, ...), written like ``2*t1^2 - t2 + 1/3``.
Unsolved families have ``"generators": null`` and list the constraints
(in the chart parameters) that still have to vanish.  ``timings`` is only
present when requested.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_arith import as_fraction, format_fraction
from .params import ParamPoly, param_name

SCHEMA = "invsub.report"
VERSION = 1

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_ORDINAL = ["Zero", "One", "Two", "Three", "Four", "Five", "Six", "Seven", "Eight", "Nine", "Ten"]


class ReportFormatError(ValueError):
    """Machine-format input that does not follow the documented schema."""


# --------------------------------------------------------------------------
# Formatting helpers
# --------------------------------------------------------------------------


def basis_name(i: int) -> str:
    """``e₁`` for 0-based index 0."""
    return "e" + str(i + 1).translate(_SUB)


def _coefficient(c: Fraction) -> str:
    """Prefix for ``c * x``: empty for 1, "-" for -1."""
    if c == 1:
        return ""
    if c == -1:
        return "-"
    s = format_fraction(c)
    return f"({s})" if "/" in s else s


def _linear(coeffs: dict[int, Fraction]) -> str:
    out = ""
    for i in sorted(coeffs):
        c = coeffs[i]
        term = _coefficient(c) + basis_name(i)
        if out and not term.startswith("-"):
            out += "+"
        out += term
    return out


def _monomial(e: tuple, names: Sequence[str]) -> str:
    return "".join(names[i] + (str(x).translate(_SUP) if x > 1 else "") for i, x in enumerate(e) if x)


def format_vector(vec: Sequence, names: Sequence[str] | None = None) -> str:
    """A vector as a combination of basis vectors, grouped by parameter
    monomial: ``e₉+α(e₁+e₅)``."""
    groups: dict[tuple, dict[int, Fraction]] = {}
    k = 0
    for i, x in enumerate(vec):
        if isinstance(x, ParamPoly):
            k = x.k
            for e, c in x.terms.items():
                groups.setdefault(e, {})[i] = c
        elif x:
            groups.setdefault(None, {})[i] = as_fraction(x)
    if names is None:
        names = [param_name(i) for i in range(k)]
    const = groups.pop(None, {})
    zero = (0,) * k
    for i, c in groups.pop(zero, {}).items():
        const[i] = const.get(i, 0) + c
    parts = []
    if const:
        parts.append(_linear(const))
    for e in sorted(groups, key=lambda e: (sum(e), tuple(-x for x in e))):
        coeffs = groups[e]
        mono = _monomial(e, names)
        if len(coeffs) == 1:
            (i, c), = coeffs.items()
            parts.append(_coefficient(c) + mono + basis_name(i))
        else:
            first = coeffs[min(coeffs)]
            if first < 0:
                parts.append("-" + mono + "(" + _linear({i: -c for i, c in coeffs.items()}) + ")")
            else:
                parts.append(mono + "(" + _linear(coeffs) + ")")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def format_subspace(generators: Sequence[Sequence], names: Sequence[str] | None = None) -> str:
    if not generators:
        return "{0}"
    return "⟨" + ", ".join(format_vector(g, names) for g in generators) + "⟩"


def format_multivector(v) -> str:
    """``e₁∧e₂ + α·e₁∧e₃`` style rendering of a multivector."""
    parts = []
    for index_set, c in v.items():
        basis = "∧".join(basis_name(i - 1) for i in index_set) if index_set else "1"
        if isinstance(c, ParamPoly) and not c.is_constant():
            parts.append(f"({c})·{basis}")
        else:
            c = c.as_constant() if isinstance(c, ParamPoly) else c
            parts.append(basis if c == 1 else f"{format_fraction(c)}·{basis}")
    return " + ".join(parts) if parts else "0"


def format_tuple(values: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_fraction(x) for x in values) + ")"


# polynomial strings in the machine format

_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)(?:\*|$))?(.*)$")


def poly_to_string(p: ParamPoly) -> str:
    return p.format([f"t{i + 1}" for i in range(p.k)])


def poly_from_string(s: str, k: int) -> ParamPoly:
    s = s.strip()
    if not s:
        raise ReportFormatError("empty polynomial")
    tokens = re.split(r" ([+-]) ", s)
    signs = ["+"] + tokens[1::2]
    terms: dict[tuple, Fraction] = {}
    for sign, body in zip(signs, tokens[0::2]):
        if body.startswith("-"):
            sign = "-" if sign == "+" else "+"
            body = body[1:]
        m = _TERM.match(body)
        coeff = as_fraction(m.group(1)) if m.group(1) else Fraction(1)
        e = [0] * k
        if m.group(2):
            for factor in m.group(2).split("*"):
                name, _, power = factor.partition("^")
                if not re.fullmatch(r"t\d+", name) or not 1 <= int(name[1:]) <= k:
                    raise ReportFormatError(f"unknown parameter {name!r} in {s!r}")
                e[int(name[1:]) - 1] += int(power) if power else 1
        elif not m.group(1):
            raise ReportFormatError(f"malformed term {body!r} in {s!r}")
        key = tuple(e)
        terms[key] = terms.get(key, 0) + (-coeff if sign == "-" else coeff)
    return ParamPoly(k, terms)


# --------------------------------------------------------------------------
# Report structure
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    """One family.  ``generators`` entries are polynomials in ``params``
    parameters; ``residual`` is in the chart's ``chart - 1`` parameters."""

    dimension: int
    eigen: tuple
    chart: int
    params: int
    generators: tuple | None
    residual: tuple = ()
    verified: bool = True
    note: str = ""

    @property
    def solved(self) -> bool:
        return self.generators is not None and not self.residual


@dataclass(frozen=True)
class Report:
    n: int
    shift: Fraction
    matrices: tuple
    sections: tuple  # of (dimension, tuple of ReportRow)
    timings: tuple = field(default=(), compare=False)

    @property
    def complete(self) -> bool:
        return all(r.solved for _, rows in self.sections for r in rows)

    @property
    def unsolved(self) -> list[ReportRow]:
        return [r for _, rows in self.sections for r in rows if not r.solved]

    def rows(self, d: int) -> tuple:
        for dim, rows in self.sections:
            if dim == d:
                return rows
        raise KeyError(d)


def _compress(x, free: Sequence[int]) -> ParamPoly:
    """Rewrite ``x`` in the free parameters only, renumbered from 0."""
    k = len(free)
    if not isinstance(x, ParamPoly):
        return ParamPoly.const(x, k)
    terms = {}
    for e, c in x.terms.items():
        if any(e[i] for i in range(len(e)) if i not in free):
            raise ValueError("generator uses a parameter that is not free")
        terms[tuple(e[i] for i in free)] = c
    return ParamPoly(k, terms)


def row_from_family(fam) -> ReportRow:
    if fam.generators is None:
        k = fam.chart - 1
        residual = tuple(ParamPoly.lift(p, k) for p in fam.residual)
        return ReportRow(fam.dimension, tuple(fam.eigen), fam.chart, k, None, residual, False,
                         fam.note or "unsolved")
    free = tuple(fam.free)
    gens = tuple(tuple(_compress(x, free) for x in g) for g in fam.generators)
    return ReportRow(fam.dimension, tuple(fam.eigen), fam.chart, len(free), gens, (), fam.verified, fam.note)


def build_report(ms, lattice: dict, timings: dict | None = None) -> Report:
    """Collect ``{d: [InvariantFamily]}`` into a :class:`Report`."""
    sections = []
    for d in sorted(lattice):
        if d == 0:
            rows = (ReportRow(0, (), 1, 0, ()),)
        else:
            rows = tuple(row_from_family(f) for f in lattice[d])
        sections.append((d, rows))
    mats = tuple(tuple(tuple(r) for r in m) for m in ms.matrices)
    tim = tuple(sorted(timings.items())) if timings else ()
    return Report(ms.n, ms.shift, mats, tuple(sections), tim)


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------


def _title(d: int) -> str:
    word = _ORDINAL[d] if d < len(_ORDINAL) else str(d)
    return f"{word}-dimensional common invariant subspaces"


def render_text(report: Report) -> str:
    lines = [f"n = {report.n}, {len(report.matrices)} matrices, shift s = {format_fraction(report.shift)}"]
    timings = dict(report.timings)
    for d, rows in report.sections:
        lines.append("")
        head = _title(d)
        if d in timings:
            head += f"  [{timings[d]:.3f} s]"
        lines.append(head)
        if d == 0:
            lines.append("  {0}")
            continue
        if not rows:
            lines.append("  none")
            continue
        groups: list[tuple[tuple, list]] = []
        for r in rows:
            if groups and groups[-1][0] == r.eigen:
                groups[-1][1].append(r)
            else:
                groups.append((r.eigen, [r]))
        width = max(len(format_tuple(e)) for e, _ in groups)
        for eigen, members in groups:
            solved = [format_subspace(r.generators) for r in members if r.generators is not None]
            label = format_tuple(eigen).ljust(width)
            lines.append(f"  {label}   {', '.join(solved) if solved else '-'}")
            for r in members:
                if r.generators is None:
                    names = [param_name(i) for i in range(r.chart - 1)]
                    cons = "; ".join(f"{p.format(names)} = 0" for p in r.residual)
                    lines.append(f"  {' ' * width}   UNSOLVED chart {r.chart} ({r.note}): {cons}")
                elif not r.verified:
                    lines.append(f"  {' ' * width}   NOT VERIFIED: {format_subspace(r.generators)}")
    if not report.complete:
        lines.append("")
        lines.append(f"warning: {len(report.unsolved)} families left unsolved; the listing is incomplete")
    return "\n".join(lines) + "\n"


def report_to_dict(report: Report) -> dict:
    sections = []
    for d, rows in report.sections:
        fams = []
        for r in rows:
            fams.append({
                "eigenvalues": [format_fraction(x) for x in r.eigen],
                "chart": r.chart,
                "parameters": [f"t{i + 1}" for i in range(r.params)],
                "generators": None if r.generators is None
                else [[poly_to_string(x) for x in g] for g in r.generators],
                "residual": [poly_to_string(p) for p in r.residual],
                "status": "solved" if r.solved else "unsolved",
                "verified": r.verified,
                "note": r.note,
            })
        sections.append({"dimension": d, "families": fams})
    out = {
        "schema": SCHEMA,
        "version": VERSION,
        "n": report.n,
        "shift": format_fraction(report.shift),
        "matrices": [[[format_fraction(x) for x in row] for row in m] for m in report.matrices],
        "complete": report.complete,
        "sections": sections,
    }
    if report.timings:
        out["timings"] = {str(d): t for d, t in report.timings}
    return out


def render_machine(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def parse_machine(text: str) -> Report:
    """Inverse of :func:`render_machine`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportFormatError(str(exc)) from exc
    if data.get("schema") != SCHEMA or data.get("version") != VERSION:
        raise ReportFormatError(f"expected {SCHEMA} version {VERSION}")
    try:
        sections = []
        for sec in data["sections"]:
            d = int(sec["dimension"])
            rows = []
            for f in sec["families"]:
                k = len(f["parameters"])
                chart = int(f["chart"])
                gens = f["generators"]
                if gens is not None:
                    gens = tuple(tuple(poly_from_string(x, k) for x in g) for g in gens)
                residual = tuple(poly_from_string(p, chart - 1) for p in f["residual"])
                rows.append(ReportRow(d, tuple(as_fraction(x) for x in f["eigenvalues"]), chart, k, gens,
                                      residual, bool(f["verified"]), f["note"]))
            sections.append((d, tuple(rows)))
        mats = tuple(tuple(tuple(as_fraction(x) for x in row) for row in m) for m in data["matrices"])
        timings = tuple(sorted((int(d), float(t)) for d, t in data.get("timings", {}).items()))
        return Report(int(data["n"]), as_fraction(data["shift"]), mats, tuple(sections), timings)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ReportFormatError):
            raise
        raise ReportFormatError(f"malformed report: {exc}") from exc


def render(report: Report, fmt: str = "text") -> bytes:
    if fmt == "text":
        return render_text(report).encode("utf-8")
    if fmt == "machine":
        return render_machine(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
