"""Partitions, conjugacy classes and characters of the symmetric group."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Sequence


@dataclass(frozen=True, order=True)
class Partition:
    """An integer partition stored as weakly decreasing positive parts."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive, got {parts}")
        if list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts) -> "Partition":
        if len(parts) == 1 and not isinstance(parts[0], int):
            parts = tuple(parts[0])
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    def row(self, i: int) -> int:
        """Length of row ``i`` (0-based), 0 past the last row."""
        return self.parts[i] if i < len(self.parts) else 0

    def normalized(self) -> tuple[float, ...]:
        return tuple(p / self.n for p in self.parts)

    def entropy(self) -> float:
        return diagram_entropy(self)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip().strip("()[]")
        return cls.of([int(x) for x in body.split(",") if x.strip()])


@dataclass(frozen=True)
class CycleType:
    """A conjugacy class of S_n given by its cycle lengths."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted((int(p) for p in self.parts), reverse=True)))
        if any(p <= 0 for p in self.parts):
            raise ValueError(f"cycle lengths must be positive, got {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def class_size(self) -> int:
        denom = 1
        for j, m in Counter(self.parts).items():
            denom *= j**m * math.factorial(m)
        return math.factorial(self.n) // denom

    @property
    def sign(self) -> int:
        return -1 if sum(p - 1 for p in self.parts) % 2 else 1

    @classmethod
    def identity(cls, n: int) -> "CycleType":
        return cls((1,) * n)

    @classmethod
    def of_permutation(cls, perm: Sequence[int]) -> "CycleType":
        seen = [False] * len(perm)
        lengths = []
        for i in range(len(perm)):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            lengths.append(length)
        return cls(tuple(lengths))


def _partitions(n: int, largest: int, rows: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    if rows == 0:
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first, rows - 1):
            yield (first,) + rest


def enumerate_partitions(n: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of ``n`` with at most ``max_rows`` rows, reverse-lex order."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    rows = n if max_rows is None else max(0, min(int(max_rows), n))
    return [Partition(p) for p in _partitions(n, n, rows)]


def cycle_types(n: int) -> list[CycleType]:
    return [CycleType(p.parts) for p in enumerate_partitions(n)]


# ------------------------------------------------------------ characters

def _beta_set(parts: tuple) -> tuple:
    r = len(parts)
    return tuple(parts[i] + (r - 1 - i) for i in range(r))


def _from_beta(beta: Sequence[int]) -> tuple:
    b = sorted(beta, reverse=True)
    r = len(b)
    return tuple(p for p in (b[i] - (r - 1 - i) for i in range(r)) if p > 0)


@lru_cache(maxsize=None)
def _mn(parts: tuple, mu: tuple) -> int:
    # Murnaghan-Nakayama: strip a rim hook of length mu[0]
    if not mu:
        return 1 if not parts else 0
    m, rest = mu[0], mu[1:]
    beta = _beta_set(parts)
    bs = set(beta)
    total = 0
    for x in beta:
        y = x - m
        if y < 0 or y in bs:
            continue
        height = sum(1 for z in beta if y < z < x)
        new = _from_beta([y if z == x else z for z in beta])
        total += (-1) ** height * _mn(new, rest)
    return total


def character(lam: Partition, c: CycleType) -> int:
    """Exact irreducible character value by Murnaghan-Nakayama."""
    if lam.n != c.n:
        raise ValueError(f"size mismatch: partition of {lam.n}, class of {c.n}")
    return _mn(lam.parts, c.parts)


def irrep_dimension(lam: Partition) -> int:
    """Hook-length formula."""
    conj = [sum(1 for p in lam.parts if p > j) for j in range(lam.row(0))]
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return math.factorial(lam.n) // hooks


def diagram_entropy(lam: Partition) -> float:
    n = lam.n
    return float(-sum((p / n) * math.log2(p / n) for p in lam.parts)) + 0.0


def row_bound_check(nu: Partition, mu: Partition, lam: Partition) -> bool:
    """Necessary condition ``nu_1 <= sum_i min(lam_i, mu_i)`` for g(nu, mu, lam) != 0."""
    if not nu.n == mu.n == lam.n:
        raise ValueError(f"size mismatch: {nu.n}, {mu.n}, {lam.n}")
    overlap = sum(min(a, b) for a, b in zip(lam.parts, mu.parts))
    return nu.row(0) <= overlap


def kronecker_row_feasible(a: Partition, b: Partition, c: Partition) -> bool:
    """``row_bound_check`` in all three roles."""
    return row_bound_check(a, b, c) and row_bound_check(b, a, c) and row_bound_check(c, a, b)


def lex_permutations(n: int) -> list[tuple]:
    """All permutations of ``range(n)`` in lexicographic one-line order."""
    return list(permutations(range(n)))


@lru_cache(maxsize=None)
def class_coefficients(lam: Partition) -> tuple:
    """Per-permutation projector weights ``dim/n! * chi(pi)`` in lex order.

    Returned as exact (numerator, denominator) integer pairs.
    """
    n = lam.n
    dim = irrep_dimension(lam)
    fact = math.factorial(n)
    chars: dict[CycleType, int] = {}
    out = []
    for perm in lex_permutations(n):
        ct = CycleType.of_permutation(perm)
        if ct not in chars:
            chars[ct] = character(lam, ct)
        out.append((dim * chars[ct], fact))
    return tuple(out)
