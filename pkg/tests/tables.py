"""Matrices and reference tables shared by the tests, plus helpers that
compare a tool listing with a reference listing as sets of subspaces."""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from invsub.exact_arith import RatMatrix, rank_of_vectors, solve_linear, null_space


def sparse(n, entries):
    a = [[0] * n for _ in range(n)]
    for (i, j), v in entries.items():
        a[i - 1][j - 1] = v
    return RatMatrix(a)


NILPOTENT4 = [
    sparse(4, {(1, 4): 1}),
    sparse(4, {(2, 4): 1}),
    sparse(4, {(1, 2): 1, (2, 3): 1}),
]

DIAG7 = sparse(7, {(1, 1): 3, (2, 2): 2, (3, 3): 2, (4, 4): 1, (5, 5): 1, (6, 6): 1, (7, 7): 3})
SEVEN_A = [DIAG7, sparse(7, {(3, 2): 1, (6, 4): 1, (7, 1): 1})]
SEVEN_B = [DIAG7, sparse(7, {(2, 4): 1, (3, 2): 1, (5, 5): 1, (6, 5): 1, (7, 1): 1})]
NINE = [
    sparse(9, {(2, 2): 2, (3, 3): 1, (4, 4): -2, (6, 6): -1, (7, 7): -1, (8, 8): 1}),
    sparse(9, {(1, 4): 1, (2, 1): -1, (2, 5): 1, (3, 6): 1, (5, 4): -1, (8, 7): -1}),
    sparse(9, {(1, 2): -1, (4, 1): 1, (4, 5): -1, (5, 2): 1, (6, 3): 1, (7, 8): -1}),
]

# Reference listings: {d: [(eigen tuple, [generator, ...]), ...]}.  A generator
# is an expression in e1..en whose coefficients are affine in a and b.

NILPOTENT4_TABLE = {
    1: [((1, 1, 1), ["e1"])],
    2: [((1, 1, 1), ["e1", "e2"])],
    # a projective family: a, b not both zero
    3: [((1, 1, 1), ["e1", "e2", "a*e3+b*e4"])],
    4: [((1, 1, 1), ["e1", "e2", "e3", "e4"])],
}

SEVEN_A_TABLE = {
    1: [((2, 1), ["e5"]), ((2, 1), ["e6+a*e5"]), ((3, 1), ["e3"]), ((4, 1), ["e7"])],
    2: [((4, 1), ["e4", "e6"]), ((4, 1), ["e5+a*e4", "e6"]),
        ((6, 1), ["e3", "e5"]), ((6, 1), ["e3", "e6+a*e5"]),
        ((8, 1), ["e5", "e7"]), ((8, 1), ["e6+a*e5", "e7"]),
        ((9, 1), ["e2", "e3"]), ((12, 1), ["e3", "e7"]), ((16, 1), ["e1", "e7"])],
    3: [((8, 1), ["e4", "e5", "e6"]),
        ((12, 1), ["e3", "e4", "e6"]), ((12, 1), ["e3", "e5+a*e4", "e6"]),
        ((16, 1), ["e4", "e6", "e7"]), ((16, 1), ["e5+a*e4", "e6", "e7"]),
        ((18, 1), ["e2", "e3", "e5"]), ((18, 1), ["e2", "e3", "e6+a*e5"]),
        ((24, 1), ["e3", "e5", "e7"]), ((24, 1), ["e3", "e6+a*e5", "e7"]),
        ((32, 1), ["e1", "e5", "e7"]), ((32, 1), ["e1", "e6+a*e5", "e7"]),
        ((36, 1), ["e2", "e3", "e7"]), ((48, 1), ["e1", "e3", "e7"])],
    4: [((24, 1), ["e3", "e4", "e5", "e6"]), ((32, 1), ["e4", "e5", "e6", "e7"]),
        ((36, 1), ["e2", "e3", "e4", "e6"]), ((36, 1), ["e2", "e3", "e5+a*e4", "e6"]),
        ((48, 1), ["e3", "e4", "e6", "e7"]), ((48, 1), ["e3", "e5+a*e4", "e6", "e7"]),
        ((64, 1), ["e1", "e4", "e6", "e7"]), ((64, 1), ["e1", "e5+a*e4", "e6", "e7"]),
        ((72, 1), ["e2", "e3", "e5", "e7"]), ((72, 1), ["e2", "e3", "e6+a*e5", "e7"]),
        ((96, 1), ["e1", "e3", "e5", "e7"]), ((96, 1), ["e1", "e3", "e6+a*e5", "e7"]),
        ((144, 1), ["e1", "e2", "e3", "e7"])],
    5: [((72, 1), ["e2", "e3", "e4", "e5", "e6"]), ((96, 1), ["e3", "e4", "e5", "e6", "e7"]),
        ((128, 1), ["e1", "e4", "e5", "e6", "e7"]),
        ((144, 1), ["e2", "e3", "e4", "e6", "e7"]), ((144, 1), ["e2", "e3", "e5+a*e4", "e6", "e7"]),
        ((192, 1), ["e1", "e3", "e4", "e6", "e7"]), ((192, 1), ["e1", "e3", "e5+a*e4", "e6", "e7"]),
        ((288, 1), ["e1", "e2", "e3", "e5", "e7"]), ((288, 1), ["e1", "e2", "e3", "e6+a*e5", "e7"])],
    6: [((288, 1), ["e2", "e3", "e4", "e5", "e6", "e7"]), ((384, 1), ["e1", "e3", "e4", "e5", "e6", "e7"]),
        ((576, 1), ["e1", "e2", "e3", "e4", "e6", "e7"]),
        ((576, 1), ["e1", "e2", "e3", "e5+a*e4", "e6", "e7"])],
    7: [((1152, 1), ["e1", "e2", "e3", "e4", "e5", "e6", "e7"])],
}

SEVEN_B_TABLE = {
    1: [((2, 1), ["e6"]), ((2, 2), ["e5+e6"]), ((3, 1), ["e3"]), ((4, 1), ["e7"])],
    2: [((4, 2), ["e5", "e6"]), ((6, 1), ["e3", "e6"]), ((6, 2), ["e3", "e5+e6"]),
        ((8, 1), ["e6", "e7"]), ((8, 2), ["e5+e6", "e7"]), ((9, 1), ["e2", "e3"]),
        ((12, 1), ["e3", "e7"]), ((16, 1), ["e1", "e7"])],
    3: [((12, 2), ["e3", "e5", "e6"]), ((16, 2), ["e5", "e6", "e7"]),
        ((18, 1), ["e2", "e3", "e4"]), ((18, 1), ["e2", "e3", "e6+a*e4"]),
        ((18, 2), ["e2", "e3", "e5+e6"]), ((24, 1), ["e3", "e6", "e7"]), ((24, 2), ["e3", "e5+e6", "e7"]),
        ((32, 1), ["e1", "e6", "e7"]), ((32, 2), ["e1", "e5+e6", "e7"]),
        ((36, 1), ["e2", "e3", "e7"]), ((48, 1), ["e1", "e3", "e7"])],
    4: [((36, 1), ["e2", "e3", "e4", "e6"]),
        ((36, 2), ["e2", "e3", "e4", "e5+e6"]), ((36, 2), ["e2", "e3", "e5+a*e4", "e6-a*e4"]),
        ((48, 2), ["e3", "e5", "e6", "e7"]), ((64, 2), ["e1", "e5", "e6", "e7"]),
        ((72, 1), ["e2", "e3", "e4", "e7"]), ((72, 1), ["e2", "e3", "e6+a*e4", "e7"]),
        ((72, 2), ["e2", "e3", "e5+e6", "e7"]), ((96, 1), ["e1", "e3", "e6", "e7"]),
        ((96, 2), ["e1", "e3", "e5+e6", "e7"]), ((144, 1), ["e1", "e2", "e3", "e7"])],
    5: [((72, 2), ["e2", "e3", "e4", "e5", "e6"]), ((144, 1), ["e2", "e3", "e4", "e6", "e7"]),
        ((144, 2), ["e2", "e3", "e4", "e5+e6", "e7"]),
        ((144, 2), ["e2", "e3", "e5+a*e4", "e6-a*e4", "e7"]),
        ((192, 2), ["e1", "e3", "e5", "e6", "e7"]),
        ((288, 1), ["e1", "e2", "e3", "e4", "e7"]), ((288, 1), ["e1", "e2", "e3", "e6+a*e4", "e7"]),
        ((288, 2), ["e1", "e2", "e3", "e5+e6", "e7"])],
    6: [((288, 2), ["e2", "e3", "e4", "e5", "e6", "e7"]), ((576, 1), ["e1", "e2", "e3", "e4", "e6", "e7"]),
        ((576, 2), ["e1", "e2", "e3", "e4", "e5+e6", "e7"]),
        ((576, 2), ["e1", "e2", "e3", "e5+a*e4", "e6-a*e4", "e7"])],
    7: [((1152, 2), ["e1", "e2", "e3", "e4", "e5", "e6", "e7"])],
}

# The printed six-dimensional row with e5+e1 is not invariant (A3 e2 = e5-e1);
# it is listed here with e5-e1.  The last three-dimensional row carries two
# independent parameters.
NINE_TABLE = {
    1: [((3, 3, 3), ["e1+e5"]), ((3, 3, 3), ["e9+a*(e1+e5)"])],
    2: [((8, 9, 9), ["e3", "e6"]), ((8, 9, 9), ["e7+a*e6", "e8-a*e3"]), ((9, 9, 9), ["e1+e5", "e9"])],
    3: [((24, 27, 27), ["e3", "e6", "e9+a*(e1+e5)"]), ((24, 27, 27), ["e3", "e1+e5", "e6"]),
        ((24, 27, 27), ["e7", "e8", "e9+a*(e1+e5)"]), ((24, 27, 27), ["e1+e5", "e7+a*e6", "e8-a*e3"]),
        ((24, 27, 27), ["e7+a*e6", "e8-a*e3", "e9"]),
        ((24, 27, 27), ["e7+a*e6", "e8-a*e3", "e9+b*(e1+e5)"]),
        ((15, 27, 27), ["e2", "e4", "e5-e1"])],
    4: [((64, 81, 81), ["e3", "e6", "e7", "e8"]),
        ((72, 81, 81), ["e3", "e1+e5", "e6", "e9"]), ((72, 81, 81), ["e1+e5", "e7+a*e6", "e8-a*e3", "e9"]),
        ((45, 81, 81), ["e1", "e2", "e4", "e5"]), ((45, 81, 81), ["e2", "e4", "e5-e1", "e9+a*e1"])],
    5: [((192, 243, 243), ["e3", "e1+e5", "e6", "e7", "e8"]),
        ((192, 243, 243), ["e3", "e6", "e7", "e8", "e9+a*(e1+e5)"]),
        ((120, 243, 243), ["e2", "e3", "e4", "e5-e1", "e6"]),
        ((120, 243, 243), ["e2", "e4", "e5-e1", "e7+a*e6", "e8-a*e3"]),
        ((135, 243, 243), ["e1", "e2", "e4", "e5", "e9"])],
    6: [((576, 729, 729), ["e3", "e1+e5", "e6", "e7", "e8", "e9"]),
        ((360, 729, 729), ["e1", "e2", "e3", "e4", "e5", "e6"]),
        ((360, 729, 729), ["e1", "e2", "e4", "e5", "e7+a*e6", "e8-a*e3"]),
        ((360, 729, 729), ["e2", "e3", "e4", "e5-e1", "e6", "e9+a*e1"]),
        ((360, 729, 729), ["e2", "e4", "e5-e1", "e7+a*e6", "e8-a*e3", "e9+b*e1"])],
    7: [((960, 2187, 2187), ["e2", "e3", "e4", "e5-e1", "e6", "e7", "e8"]),
        ((1080, 2187, 2187), ["e1", "e2", "e3", "e4", "e5", "e6", "e9"]),
        ((1080, 2187, 2187), ["e1", "e2", "e4", "e5", "e7+a*e6", "e8-a*e3", "e9"])],
    8: [((2880, 6561, 6561), ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"]),
        ((2880, 6561, 6561), ["e2", "e3", "e4", "e5-e1", "e6", "e7", "e8", "e9+a*e1"])],
    9: [((8640, 19683, 19683), ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"])],
}

NINE_PRINTED_ROW = ["e2", "e4", "e5+e1", "e7+a*e6", "e8-a*e3", "e9+b*e1"]

_A, _B = sympy.symbols("a b")
PARAMS = (_A, _B)


class AffineRow:
    """Generators c + a*u + b*v, parsed from strings like ``e9+a*(e1+e5)``."""

    def __init__(self, eigen, gens, n):
        self.eigen = tuple(Fraction(x) for x in eigen)
        self.n = n
        basis = sympy.symbols(f"e1:{n + 1}")
        names = {str(e): e for e in basis}
        names.update(a=_A, b=_B)
        self.gens = []  # each: (const, {param: vector})
        used = set()
        for g in gens:
            expr = sympy.expand(sympy.sympify(g, locals=names))
            const = [Fraction(0)] * n
            lin = {p: [Fraction(0)] * n for p in PARAMS}
            for i, e in enumerate(basis):
                c = sympy.Poly(expr.coeff(e), *PARAMS)
                for (da, db), v in c.terms():
                    v = Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q))
                    if (da, db) == (0, 0):
                        const[i] += v
                    elif (da, db) == (1, 0):
                        lin[_A][i] += v
                        used.add(_A)
                    elif (da, db) == (0, 1):
                        lin[_B][i] += v
                        used.add(_B)
                    else:
                        raise ValueError(f"generator {g!r} is not affine")
            self.gens.append((const, lin))
        self.params = [p for p in PARAMS if p in used]

    @property
    def d(self):
        return len(self.gens)

    def at(self, values):
        vals = dict(zip(self.params, values))
        out = []
        for const, lin in self.gens:
            v = list(const)
            for p, x in vals.items():
                v = [a + x * b for a, b in zip(v, lin[p])]
            out.append(tuple(v))
        return out

    def samples(self, grid=(0, 1, -1, 2, Fraction(1, 2))):
        for values in itertools.product(grid, repeat=len(self.params)):
            basis = self.at(values)
            if rank_of_vectors(basis) == self.d:
                yield basis

    def contains(self, basis):
        """Whether some parameter value gives the span of ``basis``."""
        if len(basis) != self.d:
            return False
        target = [tuple(Fraction(x) for x in v) for v in basis]
        if rank_of_vectors(target) != self.d:
            return False
        # rows of `normals` cut out the target span
        normals = null_space(RatMatrix(target)) if self.d < self.n else []
        if not normals:
            return any(True for _ in self.samples())
        rows, rhs = [], []
        for const, lin in self.gens:
            for nv in normals:
                rows.append([sum(x * y for x, y in zip(nv, lin[p])) for p in self.params])
                rhs.append(-sum(x * y for x, y in zip(nv, const)))
        if self.params:
            sol = solve_linear(RatMatrix(rows), rhs)
            if sol is None:
                return False
            # the solution set is affine; a few points of it are enough to
            # hit the non-degenerate ones
            candidates = [sol.particular]
            for k in sol.null_basis:
                candidates += [tuple(x + c * y for x, y in zip(sol.particular, k)) for c in (1, 2)]
        else:
            if any(r != 0 for r in rhs):
                return False
            candidates = [()]
        return any(rank_of_vectors(self.at(v)) == self.d for v in candidates)


def load_table(table, n):
    return {d: [AffineRow(e, g, n) for e, g in rows] for d, rows in table.items()}


def family_samples(fam, grid=(0, 1, -1, 3, Fraction(-1, 2))):
    for values in itertools.product(grid, repeat=len(fam.free)):
        yield fam.sample(values)


def compare_listing(families, rows):
    """Problems found comparing tool families with reference rows of one
    dimension (an empty list means the two describe the same subspaces with
    the same eigen tuples)."""
    problems = []
    for f in families:
        if not f.solved:
            problems.append(f"unsolved family {f.eigen} chart {f.chart}")
        elif not f.verified:
            problems.append(f"family {f.eigen} chart {f.chart} failed verification")
    tool_tuples = {tuple(f.eigen) for f in families}
    ref_tuples = {r.eigen for r in rows}
    if tool_tuples != ref_tuples:
        problems.append(f"eigen tuples differ: tool-only {sorted(tool_tuples - ref_tuples)}, "
                        f"reference-only {sorted(ref_tuples - tool_tuples)}")
    for r in rows:
        for basis in r.samples():
            if not any(tuple(f.eigen) == r.eigen and f.solved and f.contains(basis) for f in families):
                problems.append(f"reference subspace {basis} at {r.eigen} missing from tool output")
                break
    for f in families:
        if not f.solved:
            continue
        for basis in family_samples(f):
            if not any(r.eigen == tuple(f.eigen) and r.contains(basis) for r in rows):
                problems.append(f"tool subspace {basis} at {f.eigen} chart {f.chart} not in reference")
                break
    return problems
