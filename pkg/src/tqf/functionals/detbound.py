"""Entropy maximization under a product constraint, and the determinant bound."""
from __future__ import annotations

import math

import numpy as np

from ..tensor import Bipartition, Tensor, flatten, shannon_entropy
from .scaling import capacity


def _balanced_dim(t: Tensor, b: Bipartition) -> int:
    m = flatten(t, b)
    if m.shape[0] != m.shape[1]:
        raise ValueError(
            f"bipartition {b} is unbalanced: side dimensions {m.shape[0]} and {m.shape[1]}"
        )
    return m.shape[0]


def _constraint(g: float, k: int) -> float:
    return (g / (k - 1)) ** (k - 1) * (1 - g)


def entropy_max_with_det(k: int, c: float):
    """Largest entropy (bits) of a ``k``-outcome distribution with product at most ``c``.

    Returns ``(value, maximizer)``. Below the threshold ``k**-k`` the maximizer
    is ``(g/(k-1), ..., g/(k-1), 1-g)`` with ``g`` found by bisection. ``c = 0``
    is the limit ``g = 1``.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if c < 0 or math.isnan(c):
        raise ValueError(f"c must be nonnegative, got {c}")
    if c >= float(k) ** -k:
        return math.log2(k), np.full(k, 1.0 / k)
    lo, hi = 1.0 - 1.0 / k, 1.0
    if c > 0:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _constraint(mid, k) > c:
                lo = mid
            else:
                hi = mid
        # hi side keeps the constraint satisfied
        g = hi
    else:
        g = 1.0
    p = np.full(k, g / (k - 1))
    p[-1] = 1.0 - g
    return shannon_entropy(p), p


def _best_pair(s: float, cap: float):
    """Most balanced (x, s-x) with x*(s-x) <= cap."""
    if s <= 0:
        return 0.0, 0.0
    if s * s / 4 <= cap:
        return s / 2, s / 2
    disc = math.sqrt(max(s * s - 4 * cap, 0.0))
    return (s + disc) / 2, (s - disc) / 2


def _h(ps) -> float:
    return -sum(p * math.log2(p) for p in ps if p > 0)


def entropy_max_with_det_oracle(k: int, c: float, grid: int = 200) -> float:
    """Brute-force lower estimate of the same maximum, for ``k <= 4``.

    The first ``k-2`` coordinates run over the grid ``i/grid``; the last pair
    is solved exactly from its sum and the remaining product budget.
    """
    if not 2 <= k <= 4:
        raise ValueError(f"oracle supports 2 <= k <= 4, got {k}")
    if grid > 200 or grid < 1:
        raise ValueError(f"grid must lie in [1, 200], got {grid}")
    if k == 2:
        return _h(_best_pair(1.0, c))
    best = 0.0
    vals = [i / grid for i in range(1, grid)]
    if k == 3:
        heads = ((a,) for a in vals)
    else:
        heads = ((a, b) for a in vals for b in vals if a + b < 1)
    for head in heads:
        s = 1.0 - sum(head)
        if s <= 0:
            continue
        pair = _best_pair(s, c / math.prod(head))
        best = max(best, _h(head + pair))
    return best


def c_psi(t: Tensor, b: Bipartition, cap=None) -> float:
    """``|det(flatten)|^2 / cap^(2d)`` for a balanced bipartition."""
    d = _balanced_dim(t, b)
    if cap is None:
        cap = capacity(t)
    value = cap.capacity if hasattr(cap, "capacity") else float(cap)
    if value <= 0 or (hasattr(cap, "semistable") and not cap.semistable):
        raise ValueError("tensor is unstable (capacity 0); the determinant bound needs a semistable tensor")
    sign, logdet = np.linalg.slogdet(flatten(t, b))
    if sign == 0:
        return 0.0
    return float(math.exp(2 * logdet - 2 * d * math.log(value)))


def det_bound(t: Tensor, b: Bipartition, cap=None) -> float:
    """Upper bound (bits) on the single-bipartition lower functional."""
    d = _balanced_dim(t, b)
    return entropy_max_with_det(d, c_psi(t, b, cap))[0]
