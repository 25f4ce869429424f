"""Lower functional: ascent of the weighted entropy over local positive maps."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm, polar

from ..tensor import (
    BipartitionDistribution,
    EIG_FLOOR,
    Tensor,
    apply_local_maps,
    flattening_rank,
    require_nonzero,
    weighted_entropy,
)

LN2 = math.log(2.0)
STALL_WINDOW = 200
STALL_GAIN = 1e-10
CONDITION_CEILING = 1e14


@dataclass
class ScalingReport:
    achieved_entropy: float
    final_maps: list = field(repr=False)
    moment_residual: float
    iterations: int
    status: str
    start_entropy: float = 0.0
    gradient_norm: float = 0.0
    best_start: int = 0

    def to_dict(self) -> dict:
        return {
            "achieved_entropy": self.achieved_entropy,
            "moment_residual": self.moment_residual,
            "iterations": self.iterations,
            "status": self.status,
            "start_entropy": self.start_entropy,
            "gradient_norm": self.gradient_norm,
            "best_start": self.best_start,
        }


def _side_state(data: np.ndarray, side: tuple):
    """Normalized marginal on ``side`` (ascending legs), as a matrix."""
    k = data.ndim
    rest = tuple(j for j in range(k) if j not in side)
    dims = [data.shape[j] for j in side]
    m = data.transpose(side + rest).reshape(int(np.prod(dims)), -1)
    g = m @ m.conj().T
    g = (g + g.conj().T) / 2
    return g / np.trace(g).real, dims


def _entropy_and_flow(rho: np.ndarray):
    """Entropy (nats) and ``rho log rho + H rho``."""
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    wl = np.where(w > EIG_FLOOR, w * np.log(np.where(w > EIG_FLOOR, w, 1.0)), 0.0)
    h = -float(wl.sum())
    flow = (v * (wl + h * w)) @ v.conj().T
    return h, flow


def _partial_to_leg(mat: np.ndarray, dims: list, pos: int) -> np.ndarray:
    """Trace out every factor of ``mat`` except factor ``pos``."""
    r = len(dims)
    t = mat.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = [letters[i] for i in range(r)]
    cols = [letters[i] if i != pos else "Z" for i in range(r)]
    expr = "".join(rows) + "".join(cols) + "->" + rows[pos] + "Z"
    return np.einsum(expr, t)


def h_theta_and_gradient(data: np.ndarray, theta: BipartitionDistribution):
    """Weighted entropy (bits) and its Riemannian gradient per leg.

    The gradient for leg ``j`` is the Hermitian matrix ``G_j`` such that the
    derivative of the entropy along ``exp(t X_j)`` at ``t = 0`` equals
    ``Re tr(X_j G_j)``.
    """
    grads = [np.zeros((d, d), dtype=complex) for d in data.shape]
    total = 0.0
    for b, w in theta.items():
        h_b = None
        for side in (tuple(sorted(b.side)), tuple(sorted(b.complement))):
            legs = [j for j in side if data.shape[j] > 1]
            if not legs:
                continue
            rho, dims = _side_state(data, side)
            h, flow = _entropy_and_flow(rho)
            h_b = h
            for pos, j in enumerate(side):
                if j in legs:
                    grads[j] += w * (-2.0 / LN2) * _partial_to_leg(flow, dims, pos)
        if h_b is not None:
            total += w * h_b / LN2
    grads = [(g + g.conj().T) / 2 for g in grads]
    return total, grads


def _grad_norm(grads) -> float:
    return float(np.sqrt(sum(np.linalg.norm(g) ** 2 for g in grads)))


def m_theta(t: Tensor, theta: BipartitionDistribution, tol: float = 1e-9) -> float:
    """Weighted sum of log2 flattening ranks."""
    require_nonzero(t)
    if theta.k != t.k:
        raise ValueError(f"distribution is over {theta.k} parties, tensor has {t.k}")
    return float(sum(w * math.log2(flattening_rank(t, b, tol)) for b, w in theta.items()))


def _ascend(x: np.ndarray, theta, opts, ceiling: float):
    maps = [np.eye(d, dtype=complex) for d in x.shape]
    h, grads = h_theta_and_gradient(x, theta)
    step = 1.0
    history = [h]
    status = "max_iters"
    it = 0
    gn = _grad_norm(grads)
    for it in range(1, opts.max_iters + 1):
        gn = _grad_norm(grads)
        if gn < opts.tol or h >= ceiling - 1e-12:
            status = "converged"
            break
        while True:
            ms = [expm(step * g) for g in grads]
            y = apply_local_maps(Tensor(x), ms).data
            y = y / np.linalg.norm(y)
            h_new, g_new = h_theta_and_gradient(y, theta)
            if h_new >= h + 1e-4 * step * gn**2 or step < 1e-12:
                break
            step *= 0.5
        if step < 1e-12 and h_new < h:
            status = "converged" if gn < 1e-6 else "max_iters"
            break
        maps = [m @ a for m, a in zip(ms, maps)]
        x, h, grads = y, h_new, g_new
        step *= 1.5
        history.append(h)
        if len(history) > STALL_WINDOW and h - history[-STALL_WINDOW] < STALL_GAIN:
            status = "converged" if gn < 1e-6 else "max_iters"
            break
        if max(np.linalg.cond(a) for a in maps) > CONDITION_CEILING:
            status = "collapsed"
            break
    return x, h, maps, it, status, _grad_norm(grads)


def _random_start(shape, rng, scale=0.7):
    maps = []
    for d in shape:
        z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) * scale / 2
        maps.append(expm(z + z.conj().T))
    return maps


def lower_local(t: Tensor, theta: BipartitionDistribution, opts=None) -> ScalingReport:
    """Best weighted entropy found in the orbit of ``t``; a lower bound on the functional.

    The identity start is always tried first, then ``opts.restarts`` seeded
    random positive-definite starts. The search stops early once the rank
    ceiling (an upper bound for every point of the orbit) is reached.
    """
    from .options import Options
    from .scaling import moment_map

    opts = Options.coerce(opts)
    require_nonzero(t)
    if theta.k != t.k:
        raise ValueError(f"distribution is over {theta.k} parties, tensor has {t.k}")
    ceiling = m_theta(t, theta)
    start_h = weighted_entropy(t, theta)
    rng = np.random.default_rng(opts.seed)
    base = t.data / t.norm()
    best = None
    total_iters = 0
    for r in range(opts.restarts + 1):
        start_maps = [np.eye(d, dtype=complex) for d in t.shape] if r == 0 else _random_start(t.shape, rng)
        x0 = apply_local_maps(Tensor(base), start_maps).data
        x0 = x0 / np.linalg.norm(x0)
        x, h, maps, it, status, gn = _ascend(x0, theta, opts, ceiling)
        total_iters += it
        if best is None or h > best[1]:
            best = (x, h, [m @ s for m, s in zip(maps, start_maps)], status, gn, r)
        if best[1] >= ceiling - 1e-12:
            break
    x, h, maps, status, gn, r = best
    # A = U P, so P gives the same entropies as A
    pd_maps = [polar(a, side="right")[1] for a in maps]
    _, resid = moment_map(Tensor(x))
    return ScalingReport(
        achieved_entropy=h,
        final_maps=pd_maps,
        moment_residual=resid,
        iterations=total_iters,
        status=status,
        start_entropy=start_h,
        gradient_norm=gn,
        best_start=r,
    )
