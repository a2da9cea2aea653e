"""Plücker relations, decomposability, and the parameter-constraint solver.

For a degree-d multivector with coordinates x_I the relations are indexed by
pairs (K, L) of increasing sequences with |K| = d+1 and |L| = n-d+1::

    E_KL = sum over s in K∩L of
           sgn(s, K-s) * sgn(s, L-s) * sgn((L-s)', L-s) * x_{K-s} * x_{(L-s)'}

where (L-s)' is the increasing complement of L-s.  A nonzero multivector is
totally decomposable exactly when every E_KL vanishes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinatorics import DomainError, complement, rank, sign_insert, sign_shuffle, subsets
from .exterior import Multivector
from .params import ParamPoly

log = logging.getLogger(__name__)

K_MAX = 2
MAX_CASES = 256


class CapabilityError(RuntimeError):
    """The constraint system needs case splitting over more free parameters
    than the configured budget allows."""

    def __init__(self, message: str, constraints: ConstraintSet):
        super().__init__(message)
        self.constraints = constraints


@lru_cache(maxsize=None)
def relation_table(n: int, d: int) -> tuple:
    """Symbolic form of every nonempty E_KL.

    Returns a tuple of ``((K, L), terms)`` sorted by (rank K, rank L), where
    ``terms`` is a tuple of ``(sign, rank(K-s), rank((L-s)'))``.
    """
    out = []
    if d < 1 or d >= n:
        return ()
    for K in subsets(n, d + 1):
        kset = set(K)
        for L in subsets(n, n - d + 1):
            terms = []
            for s in L:
                if s not in kset:
                    continue
                k_rest = tuple(x for x in K if x != s)
                l_rest = tuple(x for x in L if x != s)
                l_comp = complement(l_rest, n)
                sign = sign_insert(s, k_rest) * sign_insert(s, l_rest) * sign_shuffle(l_comp, l_rest)
                terms.append((sign, rank(k_rest, n), rank(l_comp, n)))
            if terms:
                out.append(((K, L), tuple(terms)))
    return tuple(out)


def _evaluate(terms, coords, support):
    acc = None
    for sign, a, b in terms:
        if a in support and b in support:
            t = coords[a] * coords[b]
            if sign < 0:
                t = -t
            acc = t if acc is None else acc + t
    return 0 if acc is None else acc


def relation_values(v: Multivector):
    """Yield ``((K, L), E_KL)`` for every pair with K∩L nonempty."""
    support = set(v.support)
    for key, terms in relation_table(v.n, v.d):
        yield key, _evaluate(terms, v.coords, support)


@dataclass(frozen=True)
class ConstraintSet:
    """Polynomial equations (each meaning ``poly == 0``) in ``k`` parameters."""

    polys: tuple
    k: int

    def __post_init__(self):
        if any(p.k != self.k for p in self.polys):
            raise ValueError("constraints with mixed parameter counts")

    @property
    def trivial(self) -> bool:
        return all(p.is_zero() for p in self.polys)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def _dedupe(polys: Sequence[ParamPoly]) -> tuple[ParamPoly, ...]:
    seen = set()
    out = []
    for p in polys:
        if p.is_zero():
            continue
        key = p.monic()
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    return tuple(out)


def pluecker_relations(v: Multivector, reduce: bool = True) -> ConstraintSet:
    """The E_KL of ``v`` as polynomials in its parameters.

    With ``reduce`` (the default) identically-zero values are dropped and the
    rest deduplicated up to a constant factor, which leaves the common zero set
    unchanged.
    """
    if not 1 <= v.d <= v.n:
        raise DomainError(f"degree {v.d} outside 1..{v.n}")
    k = v.k
    vals = [ParamPoly.lift(val, k) for _, val in relation_values(v)]
    if reduce:
        vals = _dedupe(vals)
    return ConstraintSet(tuple(vals), k)


def is_totally_decomposable(v: Multivector) -> bool:
    if v.k:
        raise DomainError("multivector has parameters; use constrain_family")
    if v.is_zero():
        raise DomainError("decomposability of the zero multivector is undefined")
    support = set(v.support)
    for _, terms in relation_table(v.n, v.d):
        if _evaluate(terms, v.coords, support) != 0:
            return False
    return True


def constrain_family(v: Multivector) -> ConstraintSet:
    """Quadratic constraints on the parameters of ``v`` that keep it
    decomposable.  An empty set means every member is decomposable."""
    return pluecker_relations(v, reduce=True)


# --------------------------------------------------------------------------
# Constraint solving
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Case:
    """One branch of the parameter case analysis.

    ``subs[i]`` expresses parameter i in terms of the parameters listed in
    ``free``.  A nonempty ``residual`` means the branch is unsolved: the
    family is valid only where those polynomials vanish.
    """

    k: int
    subs: tuple
    free: tuple
    residual: tuple = ()
    note: str = ""

    @property
    def solved(self) -> bool:
        return not self.residual

    def point(self, free_values: Sequence) -> tuple[Fraction, ...]:
        """Full parameter vector for given values of the free parameters."""
        vals = [Fraction(0)] * self.k
        for i, x in zip(self.free, free_values):
            vals[i] = Fraction(x)
        return tuple(s.evaluate(vals) for s in self.subs)

    def admits(self, params: Sequence) -> bool:
        """Whether the full parameter vector ``params`` lies in this case."""
        params = [Fraction(x) for x in params]
        if any(s.evaluate(params) != p for s, p in zip(self.subs, params)):
            return False
        return all(r.evaluate(params) == 0 for r in self.residual)


def _identity_subs(k: int) -> tuple:
    return tuple(ParamPoly.var(i, k) for i in range(k))


def _normalize(polys, k) -> tuple[ParamPoly, ...] | None:
    """Drop zeros, dedupe; ``None`` if a nonzero constant makes it infeasible."""
    out = _dedupe(polys)
    if any(p.is_constant() for p in out):
        return None
    return tuple(sorted(out, key=lambda p: (p.degree, len(p.terms), repr(p))))


def _find_pivot(polys):
    """A (poly, var) where poly = c*var + rest with c a nonzero constant."""
    for p in polys:
        for i in sorted(p.variables()):
            if p.degree_in(i) != 1:
                continue
            a, _ = p.linear_split(i)
            if a.is_constant():
                return p, i
    return None


def _factor(p: ParamPoly) -> list[ParamPoly]:
    """Distinct irreducible factors of ``p`` over Q (multiplicities dropped)."""
    import sympy

    k = p.k
    syms = sympy.symbols(f"t0:{k}")
    expr = sympy.Poly.from_dict({e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()},
                                *syms, domain="QQ")
    _, factors = expr.factor_list()
    out = []
    for f, _ in factors:
        terms = {}
        for e, c in f.as_dict().items():
            c = sympy.Rational(c)
            terms[tuple(e)] = Fraction(int(c.p), int(c.q))
        fp = ParamPoly(k, terms)
        if not fp.is_constant():
            out.append(fp)
    return out


def _has_real_root(p: ParamPoly, i: int) -> bool:
    coeffs = [Fraction(0)] * (p.degree_in(i) + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] += c
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x)
    return poly.count_roots() > 0


def _pure_square_sum(p: ParamPoly):
    """If p is a same-signed sum of even powers of single variables (plus a
    constant), return the set of those variables; else ``None``."""
    signs = {c > 0 for c in p.terms.values()}
    if len(signs) != 1:
        return None
    vars_ = set()
    for e in p.terms:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) > 1 or any(x % 2 for x in e):
            return None
        vars_.update(nz)
    return vars_


class _Budget:
    def __init__(self, max_params: int, max_cases: int):
        self.max_params = max_params
        self.max_cases = max_cases
        self.splits = 0


def _substitute(polys, subs, values):
    return ([p.subs(values) for p in polys], tuple(s.subs(values) for s in subs))


def _solve(polys, subs, k, budget: _Budget, raw: ConstraintSet) -> list[Case]:
    polys = _normalize(polys, k)
    if polys is None:
        return []
    if not polys:
        used = set()
        for s in subs:
            used |= s.variables()
        return [Case(k, subs, tuple(sorted(used)))]

    pivot = _find_pivot(polys)
    if pivot is not None:
        p, i = pivot
        a, b = p.linear_split(i)
        value = -b / a.as_constant()
        polys2, subs2 = _substitute(polys, subs, {i: value})
        return _solve(polys2, subs2, k, budget, raw)

    def unsolved(note, residual=polys):
        used = set()
        for s in subs:
            used |= s.variables()
        return [Case(k, subs, tuple(sorted(used)), tuple(residual), note)]

    def check_budget(q):
        # the budget bounds the parameters of the polynomial being split
        live = q.variables()
        if len(live) > budget.max_params:
            raise CapabilityError(
                f"case split over {len(live)} parameters exceeds the budget of {budget.max_params}", raw)

    factored = [(q, _factor(q)) for q in polys]
    # non-branching simplifications first, on any constraint
    for idx, (q, fs) in enumerate(factored):
        others = [x for j, x in enumerate(polys) if j != idx]
        if len(fs) != 1:
            continue
        if fs[0].monic() != q.monic():
            # repeated factor: same zero set
            return _solve([fs[0]] + others, subs, k, budget, raw)
        sq = _pure_square_sum(q)
        if sq is not None:
            if q.constant_value():
                return []
            polys2, subs2 = _substitute(others, subs, {i: 0 for i in sq})
            return _solve(polys2, subs2, k, budget, raw)
        qv = q.variables()
        if len(qv) == 1 and not _has_real_root(q, next(iter(qv))):
            return []

    reducible = [(q, fs) for q, fs in factored if len(fs) > 1]
    if reducible:
        q, fs = min(reducible, key=lambda x: (len(x[1]), len(x[0].variables())))
        others = [x for x in polys if x is not q]
        check_budget(q)
        budget.splits += len(fs)
        if budget.splits > budget.max_cases:
            return unsolved("case budget exhausted")
        out = []
        for f in fs:
            out.extend(_solve([f] + others, subs, k, budget, raw))
        return out

    p = polys[0]
    rest = list(polys[1:])
    pv = p.variables()
    if len(pv) == 1:
        # irreducible of degree >= 2 with real roots: none rational
        return unsolved("irrational parameter values")

    for i in sorted(pv):
        if p.degree_in(i) == 1:
            a, b = p.linear_split(i)
            check_budget(p)
            budget.splits += 1
            if budget.splits > budget.max_cases:
                return unsolved("case budget exhausted")
            # the a == 0 branch is exact; the generic branch would need a
            # rational parametrization
            out = _solve([a, b] + rest, subs, k, budget, raw)
            out.extend(unsolved("rational parametrization needed"))
            return out
    return unsolved("nonlinear irreducible constraint")


def solve_constraints(c: ConstraintSet, max_params: int = K_MAX) -> list[Case]:
    """Case decomposition of the common zero set of ``c``.

    Variables that some constraint determines linearly (with a constant
    coefficient) are eliminated by substitution without branching.  Whatever
    remains is split by factoring over Q.  Branching over more than
    ``max_params`` live parameters raises :class:`CapabilityError`.
    """
    k = c.k
    if k == 0:
        if c.trivial:
            return [Case(0, (), ())]
        return []
    budget = _Budget(max_params, MAX_CASES)
    cases = _solve(list(c.polys), _identity_subs(k), k, budget, c)
    seen = set()
    unique = []
    for case in cases:
        key = (case.subs, case.residual)
        if key not in seen:
            seen.add(key)
            unique.append(case)
    return [c for i, c in enumerate(unique)
            if not any(j != i and _subsumes(o, c) and not (_subsumes(c, o) and j > i)
                       for j, o in enumerate(unique))]


def _subsumes(a: Case, b: Case) -> bool:
    """Whether every parameter vector of solved case ``b`` lies in ``a``."""
    if not a.solved or not b.solved:
        return False
    values = dict(enumerate(b.subs))
    return all(s.subs(values) == t for s, t in zip(a.subs, b.subs))
