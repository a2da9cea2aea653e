"""Index-set bookkeeping for exterior powers.

Index sets are plain tuples of strictly increasing 1-based integers.  The
basis of the d-th exterior power of an n-dimensional space is ordered
lexicographically, so ``(1, 2)`` has rank 0 and ``(n-1, n)`` the last rank.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

IndexSet = tuple


class DomainError(ValueError):
    """Raised for arguments outside an operation's mathematical domain."""


def check_index_set(s: Sequence[int], n: int) -> IndexSet:
    s = tuple(s)
    if any(a >= b for a, b in zip(s, s[1:])):
        raise DomainError(f"{s} is not strictly increasing")
    if s and (s[0] < 1 or s[-1] > n):
        raise DomainError(f"{s} is not inside 1..{n}")
    return s


@lru_cache(maxsize=None)
def subsets(n: int, d: int) -> tuple[IndexSet, ...]:
    """All d-subsets of 1..n in lexicographic (= rank) order."""
    return tuple(combinations(range(1, n + 1), d))


@lru_cache(maxsize=None)
def _rank_table(n: int, d: int) -> dict:
    return {s: r for r, s in enumerate(subsets(n, d))}


def rank(s: Sequence[int], n: int) -> int:
    """Zero-based lexicographic rank of ``s`` among the |s|-subsets of 1..n."""
    s = tuple(s)
    try:
        return _rank_table(n, len(s))[s]
    except KeyError:
        raise DomainError(f"{s} is not an increasing subset of 1..{n}") from None


def rank_formula(s: Sequence[int], n: int) -> int:
    """Same as :func:`rank`, computed by counting instead of table lookup."""
    s = check_index_set(s, n)
    d = len(s)
    r = 0
    prev = 0
    for i, x in enumerate(s):
        for y in range(prev + 1, x):
            r += comb(n - y, d - i - 1)
        prev = x
    return r


def unrank(r: int, n: int, d: int) -> IndexSet:
    table = subsets(n, d)
    if not 0 <= r < len(table):
        raise DomainError(f"rank {r} out of range for C({n},{d})")
    return table[r]


def complement(s: Sequence[int], n: int) -> IndexSet:
    present = set(s)
    return tuple(i for i in range(1, n + 1) if i not in present)


def sign_insert(s: int, m: Sequence[int]) -> int:
    """Sign of the permutation sorting ``(s, m_1, ..., m_r)``."""
    if s in m:
        raise DomainError(f"{s} already in {tuple(m)}")
    below = sum(1 for x in m if x < s)
    return -1 if below % 2 else 1


def sign_shuffle(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation ``a + b``."""
    if set(a) & set(b):
        raise DomainError(f"{tuple(a)} and {tuple(b)} overlap")
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of an arbitrary sequence of distinct integers relative to sorted
    order (inversion count parity).  Used as a cross-check."""
    seq = list(seq)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1
