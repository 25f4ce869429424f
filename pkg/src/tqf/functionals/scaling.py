"""Moment map and capacity (norm minimization over determinant-one local maps)."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from ..tensor import Tensor, apply_local_maps, require_nonzero

COLLAPSE_FLOOR = 1e-12


def _single_marginals(data: np.ndarray) -> list[np.ndarray]:
    nrm2 = np.vdot(data, data).real
    out = []
    for j in range(data.ndim):
        m = np.moveaxis(data, j, 0).reshape(data.shape[j], -1)
        g = m @ m.conj().T / nrm2
        out.append((g + g.conj().T) / 2)
    return out


def moment_map(t: Tensor):
    """Per-party ``rho_j - I/d_j`` and the root-sum-square of their Frobenius norms."""
    require_nonzero(t)
    mus = [r - np.eye(r.shape[0]) / r.shape[0] for r in _single_marginals(t.data)]
    return mus, _residual(mus)


def _residual(mus) -> float:
    return float(np.sqrt(sum(np.linalg.norm(m) ** 2 for m in mus)))


@dataclass
class CapacityReport:
    capacity: float
    minimizing_maps: list = field(repr=False)
    moment_residual: float
    semistable: bool
    iterations: int
    status: str
    witness_norm: float

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "moment_residual": self.moment_residual,
            "semistable": self.semistable,
            "iterations": self.iterations,
            "status": self.status,
            "witness_norm": self.witness_norm,
        }


def capacity(t: Tensor, opts=None) -> CapacityReport:
    """Minimize ``||g . t||`` over local maps of determinant one.

    Geodesic descent along minus the moment map with Armijo backtracking;
    the step grows after each accepted move. Norm collapse below the floor
    marks the tensor unstable.
    """
    from .options import Options

    opts = Options.coerce(opts)
    require_nonzero(t)
    tol = min(opts.tol, 1e-8)
    base = t.norm()
    data = t.data.copy()
    maps = [np.eye(d, dtype=complex) for d in t.shape]
    step = 1.0 / (2 * max(t.shape))
    lognorm = 0.0  # log of current norm relative to the start
    x = data / base
    status = "max_iters"
    it = 0
    mus, res = None, np.inf
    for it in range(1, opts.max_iters + 1):
        rhos = _single_marginals(x)
        mus = [r - np.eye(r.shape[0]) / r.shape[0] for r in rhos]
        res = _residual(mus)
        if res < tol:
            status = "converged"
            break
        slope = 2 * res**2  # derivative of log ||.||^2 along -mu
        while True:
            gs = [expm(-step * m) for m in mus]
            y = apply_local_maps(Tensor(x), gs).data
            ny = np.linalg.norm(y)
            dlog = 2 * np.log(ny) if ny > 0 else -np.inf
            if dlog <= -0.5 * step * slope or step < 1e-14:
                break
            if step * slope < 1e-12 and ny > 0:
                # norm change is below round-off; accept on residual decrease instead
                new_res = _residual([r - np.eye(r.shape[0]) / r.shape[0] for r in _single_marginals(y)])
                if new_res < res:
                    break
            step *= 0.5
        if step < 1e-14:
            status = "stalled"
            break
        maps = [g @ m for g, m in zip(gs, maps)]
        lognorm += 0.5 * dlog
        x = y / ny
        step *= 2.0
        if lognorm < np.log(COLLAPSE_FLOOR):
            status = "collapsed"
            break
    semistable = status != "collapsed"
    witness = base * float(np.exp(lognorm))
    return CapacityReport(
        capacity=witness if semistable else 0.0,
        minimizing_maps=maps,
        moment_residual=res,
        semistable=semistable,
        iterations=it,
        status=status,
        witness_norm=witness,
    )
