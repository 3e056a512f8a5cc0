"""Permutations of [n] written as n-tuples, with Lehmer-code ranking.

A permutation is stored as the tuple ``(x_1, ..., x_n)`` of its values,
1-based.  Composition follows the "apply ``q`` first, then ``p``" rule::

    compose(p, q)[k] = p[q[k]]

so right-multiplying by the transposition ``(i j)`` swaps the entries at
positions ``i`` and ``j``, which is exactly :meth:`Permutation.apply_transposition`.

Ranks are Lehmer codes with factorial weights, ``rank = sum c_i (n-i)!`` where
``c_i = #{j > i : x_j < x_i}``.  The identity has rank 0 and rank order is
lexicographic order of the tuples.
"""
from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

from .errors import InputDomainError

#: Largest n whose ranks fit in an unsigned 64-bit integer (20! < 2**64 < 21!).
MAX_RANK_N = 20

_FACTORIALS = [factorial(k) for k in range(MAX_RANK_N + 1)]


class Permutation:
    """An immutable element of S_n."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[int], check: bool = True):
        entries = tuple(int(x) for x in entries)
        if check:
            n = len(entries)
            if n < 1:
                raise InputDomainError("a permutation needs n >= 1 entries")
            if sorted(entries) != list(range(1, n + 1)):
                raise InputDomainError(f"{entries} is not a permutation of 1..{n}")
        self._entries = entries

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise InputDomainError(f"n must be >= 1, got {n}")
        return cls(range(1, n + 1), check=False)

    @property
    def entries(self) -> tuple[int, ...]:
        return self._entries

    @property
    def n(self) -> int:
        return len(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, position: int) -> int:
        """Value at 1-based ``position``."""
        if not 1 <= position <= len(self._entries):
            raise InputDomainError(f"position {position} outside 1..{self.n}")
        return self._entries[position - 1]

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._entries == other._entries

    def __lt__(self, other: "Permutation") -> bool:
        return self._entries < other._entries

    def __le__(self, other: "Permutation") -> bool:
        return self._entries <= other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"Permutation({self._entries})"

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(x == k for k, x in enumerate(self._entries, start=1))

    def apply_transposition(self, i: int, j: int) -> "Permutation":
        """Right action of ``(i j)``: swap the entries at positions i and j."""
        n = self.n
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise InputDomainError(f"transposition ({i} {j}) invalid for n={n}")
        x = list(self._entries)
        x[i - 1], x[j - 1] = x[j - 1], x[i - 1]
        return Permutation(x, check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for position, value in enumerate(self._entries, start=1):
            inv[value - 1] = position
        return Permutation(inv, check=False)

    def lehmer_code(self) -> list[int]:
        x = self._entries
        n = len(x)
        return [sum(1 for j in range(i + 1, n) if x[j] < x[i]) for i in range(n)]

    def rank(self) -> int:
        return rank(self)


def apply_transposition(p: Permutation, i: int, j: int) -> Permutation:
    """Return ``p . (i j)``; positions are 1-based with ``1 <= i < j <= n``."""
    if not i < j:
        raise InputDomainError(f"expected i < j, got ({i} {j})")
    return p.apply_transposition(i, j)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``compose(p, q)[k] = p[q[k]]`` (apply q first, then p)."""
    if p.n != q.n:
        raise InputDomainError(f"cannot compose permutations of sizes {p.n} and {q.n}")
    pe = p.entries
    return Permutation((pe[v - 1] for v in q.entries), check=False)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def transposition(n: int, i: int, j: int) -> Permutation:
    """The transposition ``(i j)`` as an element of S_n."""
    return Permutation.identity(n).apply_transposition(i, j)


def _check_rank_n(n: int) -> None:
    if not 1 <= n <= MAX_RANK_N:
        raise InputDomainError(f"ranks are defined for 1 <= n <= {MAX_RANK_N}, got n={n}")


def rank(p: Permutation) -> int:
    """Lehmer rank of ``p`` in ``[0, n! - 1]``."""
    n = p.n
    _check_rank_n(n)
    return sum(c * _FACTORIALS[n - 1 - i] for i, c in enumerate(p.lehmer_code()))


def unrank(r: int, n: int) -> Permutation:
    """Inverse of :func:`rank`."""
    _check_rank_n(n)
    r = int(r)
    if not 0 <= r < _FACTORIALS[n]:
        raise InputDomainError(f"rank {r} outside [0, {n}! - 1]")
    available = list(range(1, n + 1))
    out = []
    for i in range(n):
        c, r = divmod(r, _FACTORIALS[n - 1 - i])
        out.append(available.pop(c))
    return Permutation(out, check=False)


def from_zero_based(values: Sequence[int]) -> Permutation:
    return Permutation((v + 1 for v in values), check=False)
