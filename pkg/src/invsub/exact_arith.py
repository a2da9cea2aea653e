"""Exact rational matrices, polynomials and elimination.

Scalars are :class:`fractions.Fraction`.  Nothing in this module ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Raised when matrix shapes do not fit an operation."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            p, q = x.split("/", 1)
            q = int(q)
            if q == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Fraction(int(p), q)
        return Fraction(int(x))
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# Matrices
# --------------------------------------------------------------------------


class RatMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise DimensionError("ragged rows")
        self._data = data
        self.rows = len(data)
        self.cols = ncols
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> RatMatrix:
        if not columns:
            raise DimensionError("no columns")
        return cls(list(zip(*columns)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self._data for x in r)

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._data)
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_fraction(x) for x in r) for r in self._data)
        return f"RatMatrix([{body}])"

    def _check_same_shape(self, other: RatMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)])

    def __neg__(self) -> RatMatrix:
        return RatMatrix([[-a for a in r] for r in self._data])

    def scale(self, c) -> RatMatrix:
        c = as_fraction(c)
        return RatMatrix([[c * a for a in r] for r in self._data])

    def shift(self, s) -> RatMatrix:
        """Return ``self + s*I``."""
        if not self.is_square:
            raise DimensionError("shift needs a square matrix")
        s = as_fraction(s)
        return RatMatrix([[a + s if i == j else a for j, a in enumerate(r)] for i, r in enumerate(self._data)])

    def transpose(self) -> RatMatrix:
        return RatMatrix(list(zip(*self._data))) if self.rows else RatMatrix([])

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = list(zip(*other._data))
            return RatMatrix([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in ocols]
                              for r in self._data])
        return self.apply(other)

    def apply(self, vec: Sequence):
        """Matrix-vector product.  Entries of ``vec`` may be any ring elements
        supporting ``Fraction * x`` (e.g. parameter polynomials)."""
        if len(vec) != self.cols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        out = []
        for r in self._data:
            acc = Fraction(0)
            for a, x in zip(r, vec):
                if a and x != 0:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)


def vstack(mats: Sequence[RatMatrix]) -> RatMatrix:
    if not mats:
        raise DimensionError("nothing to stack")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError("column counts differ")
    return RatMatrix([r for m in mats for r in m])


# --------------------------------------------------------------------------
# Fraction-free elimination on integer rows
# --------------------------------------------------------------------------


def _content(values) -> int:
    return reduce(gcd, values, 0)


def _integer_row(row: Sequence) -> dict[int, int]:
    """Scale a rational row to a primitive integer row, stored sparsely."""
    fr = [as_fraction(x) for x in row]
    den = 1
    for x in fr:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    out = {j: int(x * den) for j, x in enumerate(fr) if x}
    g = _content(out.values())
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _eliminate(rows: list[dict[int, int]], ncols: int, column_order: Sequence[int]):
    """Gauss-Jordan elimination with integer rows.

    Rows are combined as ``r*p - r[c]*piv`` and then divided by their content,
    so every intermediate row stays integral and primitive.  Returns the list
    of ``(pivot_column, row)`` pairs of the reduced form; each pivot column is
    zero in every other pivot row.
    """
    rows = [dict(r) for r in rows if r]
    pivots: list[tuple[int, dict[int, int]]] = []
    for c in column_order:
        candidates = [i for i, r in enumerate(rows) if c in r]
        if not candidates:
            continue
        # sparsest row, then smallest pivot: keeps fill-in and growth down
        k = min(candidates, key=lambda i: (len(rows[i]), abs(rows[i][c]), i))
        piv = rows.pop(k)
        pv = piv[c]
        if pv < 0:
            piv = {j: -v for j, v in piv.items()}
            pv = -pv

        def reduce_row(r):
            a = r.get(c)
            if not a:
                return r
            g = gcd(pv, a)
            m1, m2 = pv // g, a // g
            new = {}
            for j, v in r.items():
                new[j] = v * m1
            for j, v in piv.items():
                w = new.get(j, 0) - v * m2
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g2 = _content(new.values())
            if g2 > 1:
                new = {j: v // g2 for j, v in new.items()}
            return new

        rows = [nr for nr in (reduce_row(r) for r in rows) if nr]
        pivots = [(pc, reduce_row(pr)) for pc, pr in pivots]
        pivots.append((c, piv))
    return pivots


def _primitive(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = 1
    for x in vec:
        if x:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = _content(ints)
    if g == 0:
        return tuple(Fraction(0) for _ in vec)
    return tuple(Fraction(v // g) for v in ints)


def _kernel_from_pivots(pivots, ncols: int, free_sign_positive=True) -> list[tuple[Fraction, ...]]:
    pivot_cols = {pc for pc, _ in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, r in pivots:
            a = r.get(f)
            if a:
                v[pc] = Fraction(-a, r[pc])
        basis.append(_primitive(v))
    return basis


def null_space(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ker(m).

    Vectors are integral with content 1, one per free column in ascending
    order, each positive at its own free column and zero at the other free
    columns.
    """
    rows = [_integer_row(r) for r in m]
    pivots = _eliminate(rows, m.cols, range(m.cols))
    return _kernel_from_pivots(pivots, m.cols)


def rank(m: RatMatrix) -> int:
    rows = [_integer_row(r) for r in m]
    return len(_eliminate(rows, m.cols, range(m.cols)))


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    rows = [_integer_row(v) for v in vectors]
    return len(_eliminate(rows, len(vectors[0]), range(len(vectors[0]))))


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form over Q and its pivot columns."""
    rows = [_integer_row(r) for r in m]
    pivots = _eliminate(rows, m.cols, range(m.cols))
    pivots.sort(key=lambda p: p[0])
    out = []
    for pc, r in pivots:
        pv = r[pc]
        out.append([Fraction(r.get(j, 0), pv) for j in range(m.cols)])
    out += [[Fraction(0)] * m.cols for _ in range(m.rows - len(out))]
    return RatMatrix(out) if out else m, tuple(pc for pc, _ in pivots)


def row_space_basis(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the span: reduced echelon rows, cleared to primitive integers."""
    if not vectors:
        return []
    n = len(vectors[0])
    pivots = _eliminate([_integer_row(v) for v in vectors], n, range(n))
    pivots.sort(key=lambda p: p[0])
    return [tuple(Fraction(r.get(j, 0)) for j in range(n)) for _, r in pivots]


def kernel_form(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Basis of span(vectors) in the shape :func:`null_space` produces.

    That shape is the echelon form taken with columns scanned from the right:
    the "free" columns are the pivots of the reversed scan.
    """
    if not vectors:
        return []
    n = len(vectors[0])
    pivots = _eliminate([_integer_row(v) for v in vectors], n, range(n - 1, -1, -1))
    pivots.sort(key=lambda p: p[0])
    out = []
    for pc, r in pivots:
        v = [Fraction(r.get(j, 0)) for j in range(n)]
        out.append(_primitive(v))
    return out


def determinant(m: RatMatrix) -> Fraction:
    """Bareiss fraction-free determinant (denominators cleared per row first)."""
    if not m.is_square:
        raise DimensionError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for r in m:
        den = 1
        for x in r:
            if x:
                den = den * x.denominator // gcd(den, x.denominator)
        scale /= den
        a.append([int(x * den) for x in r])
    return scale * _bareiss(a)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def integer_determinant(a: Sequence[Sequence[int]]) -> int:
    if not a:
        return 1
    return _bareiss([list(r) for r in a])


@dataclass(frozen=True)
class LinearSolution:
    particular: tuple[Fraction, ...]
    null_basis: tuple[tuple[Fraction, ...], ...]


def solve_linear(m: RatMatrix, rhs: Sequence) -> LinearSolution | None:
    """Solve ``m x = rhs``.  Returns ``None`` when the system is inconsistent."""
    if len(rhs) != m.rows:
        raise DimensionError(f"rhs of length {len(rhs)} for {m.shape} matrix")
    n = m.cols
    rows = [_integer_row(list(r) + [as_fraction(b)]) for r, b in zip(m, rhs)]
    pivots = _eliminate(rows, n + 1, range(n + 1))
    x = [Fraction(0)] * n
    for pc, r in pivots:
        if pc == n:
            return None
        x[pc] = Fraction(r.get(n, 0), r[pc])
    return LinearSolution(tuple(x), tuple(_kernel_from_pivots([(pc, r) for pc, r in pivots], n)))


# --------------------------------------------------------------------------
# Univariate polynomials
# --------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q, coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [as_fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> UniPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_fraction(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if k == 0:
                term = format_fraction(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                term = mono if mag == 1 else f"{format_fraction(mag)}*{mono}"
            parts.append((sign, term))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + UniPoly([-c for c in other.coeffs])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = as_fraction(other)
            return UniPoly([c * x for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, RatMatrix) else None
        if isinstance(x, RatMatrix):
            # Horner on matrices
            n = x.rows
            acc = RatMatrix.zeros(n, n)
            for c in reversed(self.coeffs):
                acc = (acc @ x).shift(c)
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_linear(self, root: Fraction) -> tuple[UniPoly, Fraction]:
        """Synthetic division by (x - root)."""
        if not self.coeffs:
            return UniPoly([]), Fraction(0)
        out = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            out.append(acc)
        rem = out.pop()
        return UniPoly(reversed(out)), rem

    def primitive_integer(self) -> list[int]:
        """Coefficients scaled to coprime integers with positive leading term."""
        if not self.coeffs:
            return []
        v = _primitive(self.coeffs)
        ints = [int(x) for x in v]
        if ints[-1] < 0:
            ints = [-x for x in ints]
        return ints


def char_poly(m: RatMatrix) -> UniPoly:
    """det(xI - m), via exact reduction to upper Hessenberg form."""
    if not m.is_square:
        raise DimensionError(f"char_poly of non-square {m.shape} matrix")
    n = m.rows
    h = m.tolist()
    # similarity reduction to upper Hessenberg form
    for k in range(n - 2):
        p = next((i for i in range(k + 1, n) if h[i][k]), None)
        if p is None:
            continue
        if p != k + 1:
            h[p], h[k + 1] = h[k + 1], h[p]
            for row in h:
                row[p], row[k + 1] = row[k + 1], row[p]
        piv = h[k + 1][k]
        for i in range(k + 2, n):
            f = h[i][k] / piv
            if not f:
                continue
            hi, hk = h[i], h[k + 1]
            for j in range(n):
                if hk[j]:
                    hi[j] -= f * hk[j]
            for row in h:
                if row[i]:
                    row[k + 1] += f * row[i]
    x = UniPoly.x()
    polys = [UniPoly([1])]
    for mm in range(1, n + 1):
        pm = (x - UniPoly([h[mm - 1][mm - 1]])) * polys[mm - 1]
        prod = Fraction(1)
        for i in range(mm - 1, 0, -1):
            prod *= h[i][i - 1]
            if not prod:
                break
            c = h[i - 1][mm - 1] * prod
            if c:
                pm = pm - polys[i - 1] * c
        polys.append(pm)
    return polys[n]


def _factorize(n: int) -> dict[int, int]:
    from sympy import factorint

    return factorint(abs(n))


def _divisors(n: int, bound: Fraction | None = None) -> list[int]:
    """Positive divisors of ``n`` not exceeding ``bound``, ascending."""
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1) if bound is None or d * p ** k <= bound]
    return sorted(divs)


@dataclass(frozen=True)
class Spectrum:
    """Rational eigenvalues of a matrix with multiplicities, plus the
    remaining factor of the characteristic polynomial that has no rational
    roots (constant 1 when the spectrum is fully rational)."""

    multiplicities: dict
    residual: UniPoly

    @property
    def values(self) -> frozenset:
        return frozenset(self.multiplicities)

    @property
    def is_rational(self) -> bool:
        return self.residual.degree == 0


def rational_roots(p: UniPoly) -> dict[Fraction, int]:
    """Rational roots of ``p`` with multiplicities (rational-root theorem)."""
    roots: dict[Fraction, int] = {}
    q = p
    while q.coeffs and q.coeffs[0] == 0:
        q = UniPoly(q.coeffs[1:])
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    while q.degree >= 1:
        ints = q.primitive_integer()
        # Cauchy bound on |root|
        bound = 1 + Fraction(max(abs(c) for c in ints[:-1]), abs(ints[-1]))
        found = None
        for b in _divisors(ints[-1]):
            for a in _divisors(ints[0], bound * b):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if q(cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        while q.degree >= 1 and q(found) == 0:
            q, _ = q.divmod_linear(found)
            roots[found] = roots.get(found, 0) + 1
    return roots


def _residual(p: UniPoly, roots: dict) -> UniPoly:
    q = p
    for r, k in roots.items():
        for _ in range(k):
            q, _ = q.divmod_linear(r)
    return q


def spectrum(m: RatMatrix) -> Spectrum:
    p = char_poly(m)
    roots = rational_roots(p)
    return Spectrum(dict(sorted(roots.items())), _residual(p, roots))


def rational_eigenvalues(m: RatMatrix) -> frozenset:
    """Distinct rational eigenvalues of ``m``.  Use :func:`spectrum` for
    multiplicities and the non-rational residual factor."""
    return spectrum(m).values
