"""Permutation actions and isotypic projectors on Kronecker powers.

A power state of a k-tensor holds ``n`` copies; axis ``c*k + j`` is leg ``j``
of copy ``c``. Projectors are applied as sums of axis shuffles and the
projector matrix is never formed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .symmetric import (
    Partition,
    character,
    CycleType,
    class_coefficients,
    irrep_dimension,
    lex_permutations,
)
from .tensor import Bipartition, Tensor

MAX_LEVEL = 6
NONVANISHING_EPS = 1e-8
# cap on gathered indices held in memory at once
_GATHER_BUDGET = 1 << 24
_CACHE_ENTRIES = 1 << 22


@dataclass(frozen=True)
class PowerState:
    base_shape: tuple
    n: int
    data: np.ndarray  # flat, length prod(base_shape)**n
    is_power: bool = False
    symmetric: bool = False  # invariant under permuting whole copies

    @property
    def k(self) -> int:
        return len(self.base_shape)

    @property
    def full_shape(self) -> tuple:
        return tuple(self.base_shape) * self.n

    def array(self) -> np.ndarray:
        return self.data.reshape(self.full_shape)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    def with_data(self, data, is_power=False, symmetric=None) -> "PowerState":
        data.setflags(write=False)
        return replace(
            self,
            data=data,
            is_power=is_power,
            symmetric=self.symmetric if symmetric is None else symmetric,
        )


def power_state(t: Tensor, n: int) -> PowerState:
    """``t`` Kronecker-multiplied with itself ``n`` times, copies kept apart."""
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    if n > MAX_LEVEL:
        raise ValueError(f"level {n} exceeds the cap {MAX_LEVEL}")
    v = t.data.ravel()
    out = v
    for _ in range(n - 1):
        out = np.multiply.outer(out, v).ravel()
    out = np.ascontiguousarray(out, dtype=np.complex128)
    out.setflags(write=False)
    return PowerState(tuple(t.shape), n, out, is_power=True, symmetric=True)


def _axes_for(pi: Sequence[int], parties: frozenset, k: int) -> list[int]:
    n = len(pi)
    inv = [0] * n
    for i, target in enumerate(pi):
        inv[target] = i
    axes = []
    for c in range(n):
        for j in range(k):
            src = inv[c] if j in parties else c
            axes.append(src * k + j)
    return axes


def permute_copies(x: PowerState, pi: Sequence[int], parties: Iterable[int]) -> PowerState:
    """Move, for each party in ``parties``, the leg of copy ``i`` to copy ``pi[i]``."""
    pi = tuple(int(p) for p in pi)
    if sorted(pi) != list(range(x.n)):
        raise ValueError(f"{pi} is not a permutation of {x.n} copies")
    parties = frozenset(parties)
    out = x.array().transpose(_axes_for(pi, parties, x.k))
    whole = parties >= set(range(x.k))
    keep_power = x.is_power and (whole or not parties)
    return x.with_data(
        np.ascontiguousarray(out).ravel(), is_power=keep_power
    )


def _gather_table(base_shape: tuple, n: int, parties: frozenset, perms: tuple) -> np.ndarray:
    size = int(np.prod(base_shape)) ** n
    if size * len(perms) <= _CACHE_ENTRIES:
        return _cached_table(base_shape, n, parties, perms)
    return _build_table(base_shape, n, parties, perms)


@lru_cache(maxsize=128)
def _cached_table(base_shape, n, parties, perms):
    return _build_table(base_shape, n, parties, perms)


def _build_table(base_shape, n, parties, perms) -> np.ndarray:
    k = len(base_shape)
    full = tuple(base_shape) * n
    size = int(np.prod(full))
    ar = np.arange(size, dtype=np.int64).reshape(full)
    table = np.empty((len(perms), size), dtype=np.int64)
    for r, pi in enumerate(perms):
        table[r] = ar.transpose(_axes_for(pi, parties, k)).ravel()
    table.setflags(write=False)
    return table


def _weighted_perm_sum(x: PowerState, parties: frozenset, weights: Sequence) -> np.ndarray:
    """Sum over lex-ordered permutations of ``weights[r] * tau(pi_r) x``."""
    perms_all = lex_permutations(x.n)
    chosen = [(pi, w) for pi, w in zip(perms_all, weights) if w != 0]
    size = x.data.size
    out = np.zeros(size, dtype=np.complex128)
    if not chosen:
        return out
    batch = max(1, _GATHER_BUDGET // max(size, 1))
    for start in range(0, len(chosen), batch):
        part = chosen[start:start + batch]
        perms = tuple(pi for pi, _ in part)
        table = _gather_table(tuple(x.base_shape), x.n, parties, perms)
        coeffs = np.array([w for _, w in part], dtype=np.float64)
        kernels.gather_accumulate(out, x.data, table, coeffs)
    return out


def _isotypic_weights(lam: Partition) -> list[float]:
    return [num / den for num, den in class_coefficients(lam)]


def apply_isotypic(x: PowerState, lam: Partition, parties: Iterable[int]) -> PowerState:
    """Isotypic projector of type ``lam`` acting on the legs in ``parties``."""
    if lam.n != x.n:
        raise ValueError(f"partition of {lam.n} does not match level {x.n}")
    parties = frozenset(parties)
    data = _weighted_perm_sum(x, parties, _isotypic_weights(lam))
    # central elements commute with whole-copy permutations, so symmetry survives
    return x.with_data(data, is_power=False)


def apply_symmetrizer(x: PowerState) -> PowerState:
    """Projector onto states invariant under permuting whole copies."""
    if x.symmetric:
        return x
    w = [1.0 / math.factorial(x.n)] * math.factorial(x.n)
    data = _weighted_perm_sum(x, frozenset(range(x.k)), w)
    return x.with_data(data, is_power=False, symmetric=True)


def apply_bipartition_projector(x: PowerState, lam: Partition, b: Bipartition) -> PowerState:
    """Symmetrize over all legs, then project the side of ``b`` onto type ``lam``."""
    if b.k != x.k:
        raise ValueError(f"bipartition over {b.k} parties, state has {x.k}")
    return apply_isotypic(apply_symmetrizer(x), lam, b.side)


def bipartition_projector_double_sum(x: PowerState, lam: Partition, b: Bipartition) -> PowerState:
    """Reference evaluation by the explicit double sum over pairs of permutations.

    Uses plain transposes, not the gather kernel, so it serves as an
    independent check of ``apply_bipartition_projector``.
    """
    if lam.n != x.n:
        raise ValueError(f"partition of {lam.n} does not match level {x.n}")
    n = x.n
    perms = lex_permutations(n)
    dim = irrep_dimension(lam)
    side, rest = b.side, b.complement
    arr = x.array()
    out = np.zeros_like(arr)
    for pi in perms:
        chi = character(lam, CycleType.of_permutation(pi))
        if chi == 0:
            continue
        for sigma in perms:
            pis = tuple(pi[sigma[i]] for i in range(n))
            moved = arr.transpose(_axes_for(sigma, rest, x.k))
            moved = moved.transpose(_axes_for(pis, side, x.k))
            out = out + chi * moved
    out = out * (dim / math.factorial(n) ** 2)
    return x.with_data(np.ascontiguousarray(out).ravel(), is_power=False, symmetric=True)


def apply_ordered_product(x: PowerState, steps: Sequence[tuple]) -> PowerState:
    """Apply ``P_1 P_2 ... P_m x`` for ``steps = [(b_1, lam_1), ..., (b_m, lam_m)]``.

    The list is read as the written product, so the last step acts first.
    """
    for b, lam in reversed(list(steps)):
        x = apply_bipartition_projector(x, lam, b)
    return x


def is_nonvanishing(x: PowerState, ref_norm: float, eps: float = NONVANISHING_EPS) -> bool:
    if ref_norm <= 0:
        raise ValueError("reference norm must be positive")
    return x.norm() / ref_norm > eps
