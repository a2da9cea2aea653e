"""Sparse multivariate polynomials over Q in a fixed number of parameters.

Coordinates of parametrized multivectors and the constraints placed on the
parameters are :class:`ParamPoly` values.  Plain ``Fraction`` and ``int``
operands mix freely with them.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_arith import as_fraction, format_fraction

GREEK = "αβγδεζηθικμνξοπρστυφχψω"


def param_name(i: int, style: str = "greek") -> str:
    """Display name of parameter ``i`` (0-based)."""
    if style == "greek":
        return GREEK[i] if i < len(GREEK) else f"t{i + 1}"
    return f"t{i + 1}"


class ParamPoly:
    __slots__ = ("k", "terms", "_hash")

    def __init__(self, k: int, terms: Mapping[tuple, object] | None = None):
        self.k = k
        clean = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    if len(e) != k:
                        raise ValueError(f"exponent {e} has wrong length for k={k}")
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # -- construction ---------------------------------------------------

    @classmethod
    def const(cls, c, k: int) -> ParamPoly:
        return cls(k, {(0,) * k: c})

    @classmethod
    def var(cls, i: int, k: int) -> ParamPoly:
        e = [0] * k
        e[i] = 1
        return cls(k, {tuple(e): 1})

    @classmethod
    def lift(cls, x, k: int) -> ParamPoly:
        if isinstance(x, ParamPoly):
            if x.k != k:
                raise ValueError(f"parameter count mismatch {x.k} vs {k}")
            return x
        return cls.const(x, k)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        """Value of the constant term."""
        return self.terms.get((0,) * self.k, Fraction(0))

    def as_constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.constant_value()

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> frozenset:
        return frozenset(i for e in self.terms for i, x in enumerate(e) if x)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.k != self.k:
                raise ValueError(f"parameter count mismatch {self.k} vs {other.k}")
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(other, self.k)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return ParamPoly(self.k, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.k, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ParamPoly(self.k)
            return ParamPoly(self.k, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly(self.k, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, ParamPoly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, n: int):
        out = ParamPoly.const(1, self.k)
        for _ in range(n):
            out = out * self
        return out

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.k == other.k and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.k, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- structure ------------------------------------------------------

    def leading_term(self):
        """Term with the largest exponent in graded lexicographic order."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def monic(self) -> ParamPoly:
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self * (1 / c)

    def linear_split(self, i: int):
        """Write self = a*t_i + b with a, b free of t_i.

        Only meaningful when :meth:`degree_in` is 1; returns ``(a, b)``.
        """
        a, b = {}, {}
        for e, c in self.terms.items():
            if e[i] == 1:
                e2 = list(e)
                e2[i] = 0
                a[tuple(e2)] = c
            elif e[i] == 0:
                b[e] = c
            else:
                raise ValueError(f"t{i + 1} appears with degree {e[i]}")
        return ParamPoly(self.k, a), ParamPoly(self.k, b)

    def subs(self, values: Mapping[int, object]) -> ParamPoly:
        """Substitute parameters by polynomials or numbers."""
        if not values or not self.terms:
            return self
        images = {i: ParamPoly.lift(v, self.k) for i, v in values.items()}
        powers: dict = {}

        def power(i, p):
            key = (i, p)
            if key not in powers:
                powers[key] = images[i] ** p
            return powers[key]

        out = ParamPoly(self.k)
        for e, c in self.terms.items():
            kept = [x if i not in images else 0 for i, x in enumerate(e)]
            term = ParamPoly(self.k, {tuple(kept): c})
            for i, x in enumerate(e):
                if x and i in images:
                    term = term * power(i, x)
            out = out + term
        return out

    def evaluate(self, values: Sequence) -> Fraction:
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, x in zip(values, e):
                if x:
                    t *= as_fraction(v) ** x
            acc += t
        return acc

    def extend(self, k: int) -> ParamPoly:
        """Same polynomial viewed in ``k >= self.k`` parameters."""
        if k == self.k:
            return self
        pad = (0,) * (k - self.k)
        return ParamPoly(k, {e + pad: c for e, c in self.terms.items()})

    # -- display --------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [param_name(i) for i in range(self.k)]
        items = sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
        out = ""
        for idx, (e, c) in enumerate(items):
            mono = "*".join(names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_fraction(mag)}*{mono}"
            else:
                body = format_fraction(mag)
            if idx == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"ParamPoly({self.format([f't{i + 1}' for i in range(self.k)])})"

    def __str__(self):
        return self.format()


def lift_all(values: Iterable, k: int) -> list[ParamPoly]:
    return [ParamPoly.lift(v, k) for v in values]


def is_zero(x) -> bool:
    return x == 0


def is_constant(x) -> bool:
    return not isinstance(x, ParamPoly) or x.is_constant()


def to_fraction(x) -> Fraction:
    if isinstance(x, ParamPoly):
        return x.as_constant()
    return as_fraction(x)
