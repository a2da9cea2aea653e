"""Recover the subspace of a decomposable multivector from u ^ Λ = 0."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import DomainError, rank, sign_insert, subsets
from .exact_arith import RatMatrix, null_space, rank_of_vectors, row_space_basis
from .exterior import Multivector, wedge_all
from .params import ParamPoly
from .pluecker import K_MAX, Case, ConstraintSet, solve_constraints


class ContractViolation(ValueError):
    """The input does not satisfy the operation's precondition."""


@dataclass(frozen=True)
class DivisorBasis:
    """Vectors u_1..u_d with u_1 ^ ... ^ u_d = scale * Λ.

    Entries are Fractions, or ParamPolys for a parametrized family.
    """

    vectors: tuple
    scale: Fraction = Fraction(1)
    echelon: bool = True
    k: int = 0

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def evaluate(self, params: Sequence) -> tuple:
        if not self.k:
            return self.vectors
        return tuple(tuple(x.evaluate(params) if isinstance(x, ParamPoly) else x for x in v)
                     for v in self.vectors)


@dataclass(frozen=True)
class UnsolvedDivisors:
    """Parameter-aware elimination got stuck on a non-constant pivot."""

    partial_rows: tuple
    free_columns: tuple
    note: str = ""


def wedge_matrix_rows(v: Multivector) -> list[dict[int, object]]:
    """Rows of the linear map u -> u ^ v, one per (d+1)-subset K.

    Column s of row K holds sgn(s, K-s) * x_{K-s}; only nonzero entries are
    stored.
    """
    n, d = v.n, v.d
    rows = []
    for K in subsets(n, d + 1):
        row = {}
        for s in K:
            rest = tuple(x for x in K if x != s)
            x = v.coords[rank(rest, n)]
            if x != 0:
                row[s - 1] = x if sign_insert(s, rest) > 0 else -x
        if row:
            rows.append(row)
    return rows


def wedge_matrix(v: Multivector) -> RatMatrix:
    if v.k:
        raise DomainError("wedge_matrix needs constant coordinates")
    dense = []
    for K in subsets(v.n, v.d + 1):
        row = [Fraction(0)] * v.n
        for s in K:
            rest = tuple(x for x in K if x != s)
            x = v.coords[rank(rest, v.n)]
            row[s - 1] = x if sign_insert(s, rest) > 0 else -x
        dense.append(row)
    return RatMatrix(dense)


def divisor_kernel(v: Multivector) -> list[tuple[Fraction, ...]]:
    """All u with u ^ v = 0 (constant v), as a null-space basis."""
    if v.d == v.n:
        return [tuple(Fraction(int(i == j)) for j in range(v.n)) for i in range(v.n)]
    return null_space(wedge_matrix(v))


def divisor_space(v: Multivector) -> DivisorBasis:
    if v.k:
        raise DomainError("parametrized multivector; use divisor_space_family")
    if v.is_zero():
        raise ContractViolation("zero multivector has no divisor basis")
    kernel = divisor_kernel(v)
    if len(kernel) != v.d:
        raise ContractViolation(
            f"kernel of u -> u^Λ has dimension {len(kernel)}, expected {v.d}: not totally decomposable")
    vectors = tuple(row_space_basis(kernel))
    w = wedge_all(vectors)
    c = w.ratio_to(v)
    return DivisorBasis(vectors, c, True, 0)


def _anchor(v: Multivector):
    """Lexicographically last coordinate that is a nonzero constant."""
    for r in reversed(v.support):
        c = v.coords[r]
        if not isinstance(c, ParamPoly) or c.is_constant():
            return subsets(v.n, v.d)[r]
    return None


def family_divisors(v: Multivector) -> DivisorBasis | UnsolvedDivisors:
    """Divisors of a multivector whose coordinates are polynomials in
    parameters and which is decomposable identically in them.

    Elimination only pivots on constant entries, so the resulting basis is
    valid for every parameter value.  Columns outside the anchor index set
    (a constant nonzero coordinate) are eliminated first; the basis then has
    the identity on the anchor columns.
    """
    k = v.k
    if not k:
        return divisor_space(v)
    if v.is_zero():
        raise ContractViolation("zero multivector has no divisor basis")
    n, d = v.n, v.d
    anchor = _anchor(v)
    anchor_cols = [a - 1 for a in anchor] if anchor else []
    order = [j for j in range(n) if j not in anchor_cols] + anchor_cols
    rows = [{j: ParamPoly.lift(x, k) for j, x in r.items()} for r in wedge_matrix_rows(v)] if d < n else []
    pivots: list[tuple[int, dict]] = []
    for c in order:
        cands = [i for i, r in enumerate(rows) if c in r and r[c].is_constant()]
        if not cands:
            continue
        i = min(cands, key=lambda i: (sum(len(x.terms) for x in rows[i].values()), i))
        prow = rows.pop(i)
        pv = prow[c].as_constant()
        prow = {j: x / pv for j, x in prow.items()}

        def reduce_row(r):
            f = r.get(c)
            if f is None:
                return r
            out = dict(r)
            for j, x in prow.items():
                y = out.get(j, 0) - f * x
                if y == 0:
                    out.pop(j, None)
                else:
                    out[j] = y
            return out

        rows = [rr for rr in (reduce_row(r) for r in rows) if rr]
        pivots = [(pc, reduce_row(pr)) for pc, pr in pivots]
        pivots.append((c, prow))
    pivot_cols = {pc for pc, _ in pivots}
    free = [j for j in range(n) if j not in pivot_cols]
    if rows:
        return UnsolvedDivisors(tuple(tuple(sorted(r.items())) for r in rows), tuple(free),
                                "non-constant pivot required")
    if len(free) != d:
        raise ContractViolation(f"kernel of u -> u^Λ has dimension {len(free)}, expected {d}")
    vectors = []
    for f in free:
        u = [ParamPoly.const(0, k) for _ in range(n)]
        u[f] = ParamPoly.const(1, k)
        for pc, r in pivots:
            x = r.get(f)
            if x is not None:
                u[pc] = -x
        vectors.append(tuple(u))
    w = wedge_all(vectors)
    scale = None
    for r in v.support:
        if v.coords[r] == 0:
            continue
        x = ParamPoly.lift(v.coords[r], k)
        if x.is_constant():
            scale = ParamPoly.lift(w.coords[r], k).as_constant() / x.as_constant()
            break
    return DivisorBasis(tuple(vectors), scale, False, k)


@dataclass(frozen=True)
class FamilyCase:
    case: Case
    multivector: Multivector
    divisors: DivisorBasis | UnsolvedDivisors | None


def divisor_space_family(v: Multivector, constraints: ConstraintSet | None = None,
                         max_params: int = K_MAX) -> list[FamilyCase]:
    """Solve the decomposability constraints of ``v`` and extract divisors in
    every case.  Unsolved cases carry no divisors."""
    k = v.k
    if not k:
        return [FamilyCase(Case(0, (), ()), v, divisor_space(v))]
    if constraints is None:
        from .pluecker import constrain_family
        constraints = constrain_family(v)
    out = []
    for case in solve_constraints(constraints, max_params):
        sub = v.subs(dict(enumerate(case.subs)))
        if not case.solved or sub.is_zero():
            out.append(FamilyCase(case, sub, None))
            continue
        out.append(FamilyCase(case, sub, family_divisors(sub) if sub.k and not _all_constant(sub)
                              else divisor_space(_constant(sub))))
    return out


def _all_constant(v: Multivector) -> bool:
    return all(not isinstance(c, ParamPoly) or c.is_constant() for c in v.coords)


def _constant(v: Multivector) -> Multivector:
    return Multivector(v.n, v.d, [c.as_constant() if isinstance(c, ParamPoly) else c for c in v.coords])


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """Whether two lists of constant vectors span the same subspace."""
    ra, rb = rank_of_vectors(list(a)), rank_of_vectors(list(b))
    if ra != rb:
        return False
    return rank_of_vectors(list(a) + list(b)) == ra


def canonical_basis(vectors: Sequence[Sequence]) -> tuple:
    """Hashable canonical representative of the span of constant vectors."""
    return tuple(row_space_basis(list(vectors)))
