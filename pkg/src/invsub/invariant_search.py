"""Common invariant subspaces of a finite set of rational matrices.

A d-dimensional subspace W is invariant under every A_i exactly when its
Plücker vector w_1 ^ ... ^ w_d is a common eigenvector of the compounds of
the shifted (non-singular) matrices.  Common eigenspaces are found by
stacked null spaces, each eigenspace is covered by affine charts, and the
Plücker relations cut every chart down to its decomposable members.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Sequence

from .combinatorics import DomainError
from .divisors import DivisorBasis, UnsolvedDivisors, divisor_space, family_divisors
from .exact_arith import (DimensionError, RatMatrix, UniPoly, as_fraction, determinant, kernel_form,
                          null_space, rank_of_vectors, spectrum)
from .exterior import Multivector, exterior_power, wedge, wedge_all
from .params import ParamPoly
from .pluecker import K_MAX, Case, CapabilityError, constrain_family, is_totally_decomposable, solve_constraints

log = logging.getLogger(__name__)


class UnsupportedSpectrum(ValueError):
    """A matrix has eigenvalues that are not rational."""

    def __init__(self, index: int, residual: UniPoly):
        super().__init__(f"matrix {index + 1} has non-rational eigenvalues: "
                         f"characteristic polynomial keeps the factor {residual}")
        self.index = index
        self.residual = residual


@dataclass(frozen=True)
class MatrixSet:
    matrices: tuple
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        mats = tuple(self.matrices)
        if not mats:
            raise DimensionError("empty matrix set")
        n = mats[0].rows
        for m in mats:
            if m.shape != (n, n):
                raise DimensionError(f"expected {n}x{n} matrices, got {m.shape}")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "shift", as_fraction(self.shift))

    @classmethod
    def with_auto_shift(cls, matrices: Sequence[RatMatrix]) -> MatrixSet:
        return cls(tuple(matrices), choose_shift(matrices))

    @property
    def n(self) -> int:
        return self.matrices[0].rows

    @property
    def shifted(self) -> tuple:
        return tuple(m.shift(self.shift) for m in self.matrices)


def choose_shift(ms: Sequence[RatMatrix]) -> Fraction:
    """Smallest s = 0, 1, 2, ... making every A_i + sI non-singular."""
    s = 0
    while True:
        if all(determinant(m.shift(s)) != 0 for m in ms):
            return Fraction(s)
        s += 1


def base_spectra(ms: Sequence[RatMatrix]) -> list[dict]:
    """Rational eigenvalues with multiplicities; raises on anything else."""
    out = []
    for i, m in enumerate(ms):
        sp = spectrum(m)
        if not sp.is_rational:
            raise UnsupportedSpectrum(i, sp.residual)
        out.append(sp.multiplicities)
    return out


def compound_spectrum(multiplicities: dict, d: int) -> list[Fraction]:
    """Distinct eigenvalues of the d-th compound: products of d eigenvalues
    taken from the multiset."""
    values = [x for x, k in multiplicities.items() for _ in range(k)]
    return sorted({prod(c, start=Fraction(1)) for c in combinations(values, d)})


def _restricted_kernel(m: RatMatrix, lam: Fraction, basis):
    shifted = m.shift(-lam)
    if basis is None:
        return null_space(shifted)
    images = [shifted.apply(q) for q in basis]
    coeffs = null_space(RatMatrix.from_columns(images))
    out = []
    for c in coeffs:
        v = [Fraction(0)] * m.rows
        for cj, q in zip(c, basis):
            if cj:
                for r, x in enumerate(q):
                    if x:
                        v[r] += cj * x
        out.append(tuple(v))
    return out


def algorithm_a(mats: MatrixSet | Sequence[RatMatrix], spectra: Sequence[Sequence] | None = None) -> list:
    """Common eigenvectors: ``[(eigen_tuple, basis), ...]`` sorted by tuple.

    ``basis`` spans the null space of the stacked matrix [A_1 - λ_1 I; ...],
    in :func:`~invsub.exact_arith.null_space` normal form.  Tuples with a
    trivial null space are dropped.  A :class:`MatrixSet` contributes its
    shifted matrices.  ``spectra`` may supply each matrix's eigenvalues;
    otherwise they are computed and must be rational.
    """
    mats = list(mats.shifted if isinstance(mats, MatrixSet) else mats)
    if spectra is None:
        spectra = [sorted(m) for m in base_spectra(mats)]
    states = [((), None)]
    for m, values in zip(mats, spectra):
        nxt = []
        for tup, basis in states:
            for lam in sorted(values):
                kb = _restricted_kernel(m, lam, basis)
                if kb:
                    nxt.append((tup + (lam,), kb))
        states = nxt
        if not states:
            break
    return [(tup, kernel_form(basis)) for tup, basis in sorted(states, key=lambda s: s[0])]


@dataclass(frozen=True)
class InvariantFamily:
    """A chart family of d-dimensional common invariant subspaces.

    The Plücker vector of every member is ``w_chart + sum_{j<chart} t_j w_j``
    in the eigenspace basis ``eigenspace`` of the tuple ``eigen``, restricted
    by ``case``.  ``generators`` span the member subspace; their entries are
    polynomials in the parameters listed in ``free``.
    """

    dimension: int
    n: int
    eigen: tuple
    eigenspace: tuple
    chart: int
    case: Case
    multivector: Multivector | None
    generators: tuple | None
    residual: tuple = ()
    verified: bool = False
    note: str = ""

    @property
    def free(self) -> tuple:
        return self.case.free

    @property
    def solved(self) -> bool:
        return self.generators is not None and not self.residual

    @property
    def nparams(self) -> int:
        return self.chart - 1

    def sample(self, values: Sequence = ()) -> tuple:
        """Constant generators at the given values of the free parameters."""
        if self.generators is None:
            raise ValueError("unsolved family has no generators")
        if not self.free:
            point = [Fraction(0)] * self.nparams
        else:
            point = self.case.point(values)
        return tuple(tuple(x.evaluate(point) if isinstance(x, ParamPoly) else x for x in g)
                     for g in self.generators)

    def chart_coordinates(self, basis: Sequence[Sequence]):
        """``(chart, params)`` locating the subspace spanned by ``basis``
        inside the eigenspace, or ``None`` if its Plücker vector is not there."""
        if len(basis) != self.dimension:
            return None
        if self.dimension == 0:
            return (1, ())
        p = wedge_all([tuple(as_fraction(x) for x in v) for v in basis])
        if p.is_zero():
            return None
        coeffs = []
        for w in self.eigenspace:
            f = _free_position(self.eigenspace, w)
            coeffs.append(p.coords[f] / w[f])
        recon = [Fraction(0)] * len(p.coords)
        for c, w in zip(coeffs, self.eigenspace):
            if c:
                for r, x in enumerate(w):
                    if x:
                        recon[r] += c * x
        if tuple(recon) != p.coords:
            return None
        nz = [j for j, c in enumerate(coeffs) if c]
        i = nz[-1]
        return (i + 1, tuple(coeffs[j] / coeffs[i] for j in range(i)))

    def contains(self, basis: Sequence[Sequence]) -> bool:
        loc = self.chart_coordinates(basis)
        if loc is None or loc[0] != self.chart:
            return False
        return self.case.admits(loc[1])


def _free_position(eigenspace, w) -> int:
    for i, x in enumerate(w):
        if x and all(v is w or not v[i] for v in eigenspace):
            return i
    raise ValueError("eigenspace basis not in kernel normal form")


def chart_vector(eigenspace: Sequence[Sequence], i: int, n: int, d: int) -> Multivector:
    """w_i + t_1 w_1 + ... + t_{i-1} w_{i-1} (i is 1-based)."""
    k = i - 1
    if k == 0:
        return Multivector(n, d, eigenspace[0])
    coords = [ParamPoly.const(x, k) for x in eigenspace[i - 1]]
    for j in range(k):
        t = ParamPoly.var(j, k)
        for r, x in enumerate(eigenspace[j]):
            if x:
                coords[r] = coords[r] + t * x
    return Multivector(n, d, coords)


def verify_invariant(basis, ms: MatrixSet | Sequence[RatMatrix]) -> bool:
    """Whether span(basis) is mapped into itself by every (unshifted) matrix.

    Parametrized bases must pass identically in the parameters: for each
    image A w the multivector (A w) ^ w_1 ^ ... ^ w_d has to vanish.
    """
    mats = ms.matrices if isinstance(ms, MatrixSet) else tuple(ms)
    vectors = basis.vectors if isinstance(basis, DivisorBasis) else tuple(basis)
    if not vectors:
        return True
    parametric = any(isinstance(x, ParamPoly) and not x.is_constant() for v in vectors for x in v)
    if not parametric:
        vecs = [tuple(x.as_constant() if isinstance(x, ParamPoly) else as_fraction(x) for x in v)
                for v in vectors]
        r = rank_of_vectors(vecs)
        if r != len(vecs):
            return False
        for a in mats:
            for v in vecs:
                if rank_of_vectors(vecs + [a.apply(v)]) != r:
                    return False
        return True
    lam = wedge_all(vectors)
    if lam.is_zero():
        return False
    for a in mats:
        for v in vectors:
            if not wedge(Multivector.vector(a.apply(v)), lam).is_zero():
                return False
    return True


def _family_from_case(d, n, tup, eig, chart, case, v, ms) -> InvariantFamily:
    if not case.solved:
        return InvariantFamily(d, n, tup, eig, chart, case, v, None, case.residual, False, case.note)
    sub = v.subs(dict(enumerate(case.subs))) if v.k else v
    if not sub.k or all(not isinstance(c, ParamPoly) or c.is_constant() for c in sub.coords):
        const = Multivector(n, d, [c.as_constant() if isinstance(c, ParamPoly) else c for c in sub.coords])
        db = divisor_space(const)
    else:
        db = family_divisors(sub)
    if isinstance(db, UnsolvedDivisors):
        return InvariantFamily(d, n, tup, eig, chart, case, sub, None, (), False, db.note)
    ok = verify_invariant(db, ms)
    if not ok:
        log.error("family %s chart %d at degree %d failed the invariance check", tup, chart, d)
    return InvariantFamily(d, n, tup, eig, chart, case, sub, db.vectors, (), ok)


def families_for_degree(ms: MatrixSet, d: int, max_params: int = K_MAX) -> list[InvariantFamily]:
    n = ms.n
    if not 1 <= d <= n:
        raise DomainError(f"dimension {d} outside 1..{n}")
    shifted = ms.shifted
    spectra = base_spectra(shifted)
    comps = [exterior_power(a, d) for a in shifted]
    eigen = algorithm_a(comps, [compound_spectrum(sp, d) for sp in spectra])
    skip_pluecker = d in (1, n - 1, n)
    out = []
    for tup, eig in eigen:
        eig = tuple(eig)
        for chart in range(1, len(eig) + 1):
            v = chart_vector(eig, chart, n, d)
            k = chart - 1
            if k == 0:
                if skip_pluecker or is_totally_decomposable(v):
                    out.append(_family_from_case(d, n, tup, eig, chart, Case(0, (), ()), v, ms))
                continue
            if skip_pluecker:
                cases = [Case(k, tuple(ParamPoly.var(i, k) for i in range(k)), tuple(range(k)))]
            else:
                constraints = constrain_family(v)
                try:
                    cases = solve_constraints(constraints, max_params)
                except CapabilityError as exc:
                    cases = [Case(k, tuple(ParamPoly.var(i, k) for i in range(k)), tuple(range(k)),
                                  exc.constraints.polys, str(exc))]
            for case in cases:
                out.append(_family_from_case(d, n, tup, eig, chart, case, v, ms))
    return out


def algorithm_b(ms: MatrixSet, d: int, max_params: int = K_MAX) -> list[InvariantFamily]:
    """Invariant families of dimension d (1 < d < n; the end cases are
    accepted too and need no Plücker filtering)."""
    return families_for_degree(ms, d, max_params)


def zero_family(n: int) -> InvariantFamily:
    return InvariantFamily(0, n, (), (), 1, Case(0, (), ()), None, (), (), True)


def full_lattice_scan(ms: MatrixSet, max_params: int = K_MAX, dims: Sequence[int] | None = None) -> dict:
    """``{d: [families]}`` for d = 0..n (or the requested ``dims``)."""
    n = ms.n
    dims = range(0, n + 1) if dims is None else dims
    out = {}
    for d in dims:
        out[d] = [zero_family(n)] if d == 0 else families_for_degree(ms, d, max_params)
    return out
