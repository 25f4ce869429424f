"""Level-n upper functional by exhaustive search over Young diagram tuples."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from ..projectors import (
    MAX_LEVEL,
    NONVANISHING_EPS,
    apply_bipartition_projector,
    is_nonvanishing,
    power_state,
)
from ..symmetric import enumerate_partitions, kronecker_row_feasible
from ..tensor import (
    Bipartition,
    BipartitionDistribution,
    Tensor,
    crossing_pair,
    flattening_rank,
    product_dim,
    require_nonzero,
)
from .lower import m_theta


class OrderRequiredError(ValueError):
    pass


@dataclass
class UpperReport:
    n: int
    best_value: float
    best_tuple: dict = field(default_factory=dict)
    feasible_count: int = 0
    m_theta: float = 0.0
    order: list = field(default_factory=list)
    laminar: bool = True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "best_value": self.best_value,
            "best_tuple": {str(b): str(l) for b, l in self.best_tuple.items()},
            "feasible_count": self.feasible_count,
            "m_theta": self.m_theta,
            "order": [str(b) for b in self.order],
            "laminar": self.laminar,
        }

    @property
    def f_value(self) -> float:
        return 2.0 ** self.best_value


def _resolve_order(theta: BipartitionDistribution, order) -> list[Bipartition]:
    if order is None:
        return list(theta.support)
    out = []
    for item in order:
        b = item if isinstance(item, Bipartition) else Bipartition.parse(str(item), theta.k)
        out.append(b)
    if sorted(out) != sorted(theta.support) or len(set(out)) != len(out):
        raise ValueError(
            "order must list each support bipartition exactly once; "
            f"support is {[str(b) for b in theta.support]}"
        )
    return out


def _kronecker_triples(order: list[Bipartition]):
    """Index triples (x, y, z) whose chosen sides satisfy X = Y + Z disjointly."""
    triples = []
    m = len(order)
    for ix, iy, iz in permutations(range(m), 3):
        if iy > iz:
            continue
        for X in order[ix].sides:
            hit = False
            for Y in order[iy].sides:
                for Z in order[iz].sides:
                    if not (Y & Z) and (Y | Z) == X:
                        hit = True
            if hit:
                triples.append((ix, iy, iz))
                break
    return triples


def feasible_tuples(t: Tensor, theta: BipartitionDistribution, n: int = 4, order=None,
                    eps: float = NONVANISHING_EPS, kronecker_prune: bool = True):
    """Yield every tuple ``{b: lam}`` whose projector product keeps ``t``'s power nonzero.

    Row counts are capped by side dimensions, and by flattening ranks where
    that is valid (every factor for laminar ``theta``, else the first acting
    one). Partial products that vanish cut the search, since later factors act
    on the left. ``kronecker_prune`` adds the row-bound filter on triples of
    laminar sides ``X = Y + Z``.
    """
    require_nonzero(t)
    if theta.k != t.k:
        raise ValueError(f"distribution is over {theta.k} parties, tensor has {t.k}")
    if n < 1 or n > MAX_LEVEL:
        raise ValueError(f"level n={n} outside 1..{MAX_LEVEL}")
    laminar = crossing_pair(theta) is None
    if not laminar and order is None:
        b1, b2 = crossing_pair(theta)
        raise OrderRequiredError(
            f"distribution is not laminar ({b1} crosses {b2}); an explicit projector order is required"
        )
    order = _resolve_order(theta, order)
    applied = list(reversed(order))  # first acting projector first
    m = len(applied)

    candidates = []
    for pos, b in enumerate(applied):
        rows = min(product_dim(t.shape, b.side), product_dim(t.shape, b.complement))
        if laminar or pos == 0:
            # commuting projectors: each factor may be moved next to the power
            rows = min(rows, flattening_rank(t, b))
        candidates.append(enumerate_partitions(n, rows))

    by_last = {}
    if laminar and kronecker_prune:
        for tr in _kronecker_triples(applied):
            by_last.setdefault(max(tr), []).append(tr)

    ref = t.norm() ** n
    chosen: list = [None] * m

    def dfs(pos, state):
        if pos == m:
            yield {b: chosen[applied.index(b)] for b in order}
            return
        b = applied[pos]
        for lam in candidates[pos]:
            chosen[pos] = lam
            if any(not kronecker_row_feasible(chosen[a], chosen[c], chosen[d])
                   for a, c, d in by_last.get(pos, ())):
                continue
            nxt = apply_bipartition_projector(state, lam, b)
            if is_nonvanishing(nxt, ref, eps):
                yield from dfs(pos + 1, nxt)
        chosen[pos] = None

    yield from dfs(0, power_state(t, n))


def tuple_value(theta: BipartitionDistribution, tup: dict) -> float:
    return float(sum(theta[b] * lam.entropy() for b, lam in tup.items()))


def upper_level(t: Tensor, theta: BipartitionDistribution, n: int = 4, order=None,
                eps: float = NONVANISHING_EPS) -> UpperReport:
    """Best weighted diagram entropy over tuples with nonvanishing projection at level ``n``.

    ``order`` lists the support bipartitions in written-product order (the
    last one acts first). It is required when ``theta`` is not laminar. The
    result is a lower bound on the upper functional.
    """
    laminar = crossing_pair(theta) is None
    best_value, best_tuple, count = float("nan"), {}, 0
    for tup in feasible_tuples(t, theta, n, order, eps):
        count += 1
        value = tuple_value(theta, tup)
        if count == 1 or value > best_value + 1e-15:
            best_value, best_tuple = value, tup
    return UpperReport(
        n=n,
        best_value=best_value,
        best_tuple=best_tuple,
        feasible_count=count,
        m_theta=m_theta(t, theta),
        order=_resolve_order(theta, order),
        laminar=laminar,
    )
