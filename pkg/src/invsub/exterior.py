"""Multivectors, wedge products and compound matrices.

Coordinates are stored densely in the lexicographic basis of index sets.  A
coordinate is either a ``Fraction`` or a :class:`~invsub.params.ParamPoly`.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .combinatorics import DomainError, complement, rank, sign_shuffle, subsets
from .exact_arith import DimensionError, RatMatrix, as_fraction, integer_determinant
from .params import ParamPoly


def _coerce_coeff(x):
    if isinstance(x, ParamPoly):
        return x
    return as_fraction(x)


class Multivector:
    """Element of the d-th exterior power of Q^n (or of Q[t]^n)."""

    __slots__ = ("n", "d", "coords", "_support")

    def __init__(self, n: int, d: int, coords: Iterable):
        coords = tuple(_coerce_coeff(c) for c in coords)
        if not 0 <= d <= n:
            raise DomainError(f"degree {d} outside 0..{n}")
        if len(coords) != comb(n, d):
            raise DimensionError(f"{len(coords)} coordinates for degree {d} in dimension {n}")
        self.n = n
        self.d = d
        self.coords = coords
        self._support = None

    @classmethod
    def zero(cls, n: int, d: int) -> Multivector:
        return cls(n, d, [0] * comb(n, d))

    @classmethod
    def basis(cls, n: int, index_set: Sequence[int]) -> Multivector:
        """The basis element e_I for increasing 1-based ``index_set``."""
        d = len(index_set)
        c = [0] * comb(n, d)
        c[rank(index_set, n)] = 1
        return cls(n, d, c)

    @classmethod
    def vector(cls, entries: Sequence) -> Multivector:
        return cls(len(entries), 1, entries)

    @classmethod
    def from_dict(cls, n: int, d: int, mapping: dict) -> Multivector:
        c = [0] * comb(n, d)
        for s, v in mapping.items():
            c[rank(s, n)] = v
        return cls(n, d, c)

    @property
    def k(self) -> int:
        """Number of parameters (0 for plain rational coordinates)."""
        for c in self.coords:
            if isinstance(c, ParamPoly):
                return c.k
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        if self._support is None:
            self._support = tuple(i for i, c in enumerate(self.coords) if c != 0)
        return self._support

    def is_zero(self) -> bool:
        return not self.support

    def items(self):
        """Yield ``(index_set, coefficient)`` over the nonzero coordinates."""
        table = subsets(self.n, self.d)
        for r in self.support:
            yield table[r], self.coords[r]

    def __getitem__(self, index_set) -> object:
        return self.coords[rank(index_set, self.n)]

    def _check(self, other: Multivector):
        if (self.n, self.d) != (other.n, other.d):
            raise DimensionError(f"mismatch: ({self.n},{self.d}) vs ({other.n},{other.d})")

    def __add__(self, other: Multivector) -> Multivector:
        self._check(other)
        return Multivector(self.n, self.d, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: Multivector) -> Multivector:
        self._check(other)
        return Multivector(self.n, self.d, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> Multivector:
        return Multivector(self.n, self.d, [-a for a in self.coords])

    def scale(self, c) -> Multivector:
        return Multivector(self.n, self.d, [c * a for a in self.coords])

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash((self.n, self.d, self.coords))

    def subs(self, values) -> Multivector:
        return Multivector(self.n, self.d,
                           [c.subs(values) if isinstance(c, ParamPoly) else c for c in self.coords])

    def evaluate(self, values) -> Multivector:
        return Multivector(self.n, self.d,
                           [c.evaluate(values) if isinstance(c, ParamPoly) else c for c in self.coords])

    def ratio_to(self, other: Multivector) -> Fraction | None:
        """The constant c with ``self == c * other``, or ``None``."""
        self._check(other)
        if other.is_zero():
            return None
        r0 = other.support[0]
        c = self.coords[r0] / other.coords[r0]
        if self == other.scale(c):
            return c
        return None

    def primitive(self) -> Multivector:
        """Constant multivector scaled to coprime integers, first nonzero positive."""
        if not self.support:
            return self
        den = 1
        for r in self.support:
            den = den * self.coords[r].denominator // gcd(den, self.coords[r].denominator)
        ints = [int(c * den) for c in self.coords]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if ints[self.support[0]] < 0:
            g = -g
        return Multivector(self.n, self.d, [Fraction(x, g) for x in ints])

    def __repr__(self):
        from .report import format_multivector
        return f"Multivector(n={self.n}, d={self.d}: {format_multivector(self)})"


class DualMultivector:
    """Element of the (n-d)-th exterior power of the dual space, coordinates
    in the lexicographic basis of omega_J."""

    __slots__ = ("n", "degree", "coords")

    def __init__(self, n: int, degree: int, coords: Iterable):
        coords = tuple(_coerce_coeff(c) for c in coords)
        if len(coords) != comb(n, degree):
            raise DimensionError(f"{len(coords)} coordinates for degree {degree} in dimension {n}")
        self.n = n
        self.degree = degree
        self.coords = coords

    def __getitem__(self, index_set):
        return self.coords[rank(index_set, self.n)]

    def __eq__(self, other):
        if not isinstance(other, DualMultivector):
            return NotImplemented
        return (self.n, self.degree, self.coords) == (other.n, other.degree, other.coords)

    def __hash__(self):
        return hash((self.n, self.degree, self.coords))

    def as_multivector(self) -> Multivector:
        """Reinterpret the coordinates in the primal basis of the same degree."""
        return Multivector(self.n, self.degree, self.coords)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    if a.n != b.n:
        raise DimensionError(f"ambient dimensions differ: {a.n} vs {b.n}")
    n, d = a.n, a.d + b.d
    if d > n:
        raise DomainError(f"degree {a.d}+{b.d} exceeds dimension {n}")
    out: dict[int, object] = {}
    b_items = list(b.items())
    for i_set, x in a.items():
        iset = set(i_set)
        for j_set, y in b_items:
            if iset.intersection(j_set):
                continue
            m = tuple(sorted(i_set + j_set))
            r = rank(m, n)
            term = x * y
            if sign_shuffle(i_set, j_set) < 0:
                term = -term
            out[r] = out[r] + term if r in out else term
    coords = [0] * comb(n, d)
    for r, c in out.items():
        coords[r] = c
    return Multivector(n, d, coords)


def wedge_all(vectors: Sequence[Sequence]) -> Multivector:
    """w_1 ^ ... ^ w_d for vectors given as coordinate sequences."""
    if not vectors:
        raise DomainError("empty wedge")
    acc = Multivector.vector(vectors[0])
    for v in vectors[1:]:
        acc = wedge(acc, Multivector.vector(v))
    return acc


def exterior_power(m: RatMatrix, d: int) -> RatMatrix:
    """The d-th compound matrix of ``m``.

    Entry (R, C) is the minor of ``m`` on rows R and columns C, with R and C
    running over the d-subsets of 1..n in lexicographic order.
    """
    if not m.is_square:
        raise DimensionError(f"compound of non-square {m.shape} matrix")
    n = m.rows
    if not 1 <= d <= n:
        raise DomainError(f"degree {d} outside 1..{n}")
    den = 1
    for x in m.entries:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    a = [[int(x * den) for x in row] for row in m]
    scale = Fraction(1, den ** d)
    index = subsets(n, d)
    size = len(index)
    out = [[Fraction(0)] * size for _ in range(size)]
    for ci, cols in enumerate(index):
        cz = [c - 1 for c in cols]
        # rows of m that vanish on these columns kill every minor using them
        live = [i for i in range(n) if any(a[i][c] for c in cz)]
        if len(live) < d:
            continue
        live_set = set(live)
        for ri, rows in enumerate(index):
            if not all(r - 1 in live_set for r in rows):
                continue
            det = integer_determinant([[a[r - 1][c] for c in cz] for r in rows])
            if det:
                out[ri][ci] = det * scale
    return RatMatrix(out)


def apply_compound(m: RatMatrix, v: Multivector) -> Multivector:
    if m.cols != len(v.coords) or not m.is_square:
        raise DimensionError(f"{m.shape} matrix cannot act on {len(v.coords)} coordinates")
    return Multivector(v.n, v.d, m.apply(v.coords))


def dual(v: Multivector) -> DualMultivector:
    """Coordinates y_J = sgn(J', J) x_{J'} of the associated (n-d)-form,
    using the volume element e_1 ^ ... ^ e_n."""
    n, d = v.n, v.d
    coords = []
    for j_set in subsets(n, n - d):
        jc = complement(j_set, n)
        x = v.coords[rank(jc, n)]
        coords.append(-x if sign_shuffle(jc, j_set) < 0 else x)
    return DualMultivector(n, n - d, coords)
