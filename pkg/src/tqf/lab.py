"""Scripted reproductions of the separation and agreement claims.

Each ``verify_*`` function returns a :class:`ClaimVerdict` holding the
computed numbers next to their expected values and tolerances.
"""
from __future__ import annotations

import itertools
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import corpus
from .functionals import (
    Options,
    c_psi,
    capacity,
    det_bound,
    entropy_max_with_det,
    feasible_tuples,
    lower_local,
    m_theta,
    moment_map,
    tuple_value,
    upper_level,
)
from .projectors import apply_bipartition_projector, apply_ordered_product, power_state
from .symmetric import Partition
from .tensor import (
    Bipartition,
    BipartitionDistribution,
    Tensor,
    all_bipartitions,
    bipartition_entropy,
    crossing_pair,
    flatten,
    marginal,
    marginal_spectrum,
    random_gaussian_tensor,
    restricted_distribution,
    weighted_entropy,
)

RELATIONS = {
    "approx": lambda c, v, tol: abs(c - v) <= tol,
    "<=": lambda c, v, tol: c <= v + tol,
    ">=": lambda c, v, tol: c >= v - tol,
    "<": lambda c, v, tol: c < v - tol,
    ">": lambda c, v, tol: c > v + tol,
    "==": lambda c, v, tol: c == v,
}


@dataclass
class ClaimVerdict:
    claim_id: str
    passed: bool = True
    computed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    runtime_ms: int = 0
    probabilistic: bool = False
    notes: list = field(default_factory=list)

    def check(self, name, computed, expected, tol=0.0, relation="approx"):
        """Record one quantity and fold its verdict into ``passed``."""
        if isinstance(computed, (bool, np.bool_)) or isinstance(expected, bool):
            computed, expected, relation = bool(computed), bool(expected), "=="
        elif isinstance(computed, (int, float, np.floating, np.integer)):
            computed = float(computed)
        ok = RELATIONS[relation](computed, expected, tol)
        self.computed[name] = computed
        self.expected[name] = {"value": expected, "tol": tol, "relation": relation}
        if not ok:
            self.passed = False
        return ok

    def report(self, name, value):
        """Record a value without a pass/fail condition."""
        self.computed[name] = value

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "passed": self.passed,
            "computed": _jsonable(self.computed),
            "expected": _jsonable(self.expected),
            "runtime_ms": self.runtime_ms,
            "probabilistic": self.probabilistic,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (Bipartition, Partition, Fraction)):
        return str(obj)
    return obj


class _timed:
    def __init__(self, verdict):
        self.v = verdict

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.v

    def __exit__(self, *exc):
        self.v.runtime_ms = int(round(1000 * (time.perf_counter() - self.t0)))
        return False


def binary_entropy(x: float) -> float:
    if x <= 0 or x >= 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def _bip(text: str, k: int = 4) -> Bipartition:
    return Bipartition.parse(text, k)


def sp_theta(theta_ab: float) -> BipartitionDistribution:
    rest = (1 - theta_ab) / 4
    weights = {_bip("AB"): theta_ab}
    for s in "ABCD":
        weights[_bip(s)] = weights.get(_bip(s), 0.0) + rest
    return BipartitionDistribution(4, weights, atol=1e-9)


# -------------------------------------------------------------------- S_p

def verify_sp_separation(p: float = 1 / 3, theta_ab: float = 0.5, opts=None) -> ClaimVerdict:
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not 0 < theta_ab <= 1:
        raise ValueError(f"theta_AB must lie in (0, 1], got {theta_ab}")
    opts = Options.coerce(opts)
    v = ClaimVerdict("sp-separation")
    with _timed(v):
        t = corpus.s_p(p)
        ab = _bip("AB")
        theta = sp_theta(theta_ab)
        single = max(
            float(np.abs(marginal(t, [j]).matrix - np.eye(2) / 2).max()) for j in range(4)
        )
        v.check("singleton_marginal_deviation", single, 0.0, 1e-12)
        spec = np.sort(marginal_spectrum(t, ab))
        want = np.sort([p / 2, p / 2, (1 - p) / 2, (1 - p) / 2])
        v.check("ab_spectrum_deviation", float(np.abs(spec - want).max()), 0.0, 1e-10)
        det2 = abs(np.linalg.det(flatten(t, ab))) ** 2
        v.check("det_squared", det2, p**2 * (1 - p) ** 2 / 16, 1e-12)
        proj = apply_bipartition_projector(power_state(t, 4), Partition.of(1, 1, 1, 1), ab)
        v.check("projector_norm_squared", proj.norm() ** 2, p**2 * (1 - p) ** 2 / 16, 1e-9)
        mt = m_theta(t, theta)
        up = upper_level(t, theta, 4)
        v.check("upper_level_4", up.best_value, mt, 1e-9)
        v.report("m_theta", mt)
        h = weighted_entropy(t, theta)
        # spectrum (p/2, p/2, (1-p)/2, (1-p)/2) has entropy 1 + h(p)
        v.check("H_theta_formula", h, theta_ab * (1 + binary_entropy(p)) + (1 - theta_ab), 1e-10)
        separated = abs(p - 0.5) > 1e-12
        if separated:
            v.check("H_theta_below_M_theta", h, mt, 1e-12, "<")
        else:
            v.check("H_theta_equals_M_theta", h, mt, 1e-10)
            v.notes.append("no separation at p=1/2")
        v.report("gap_bits", mt - h)
        cap = capacity(t, opts)
        det_ab = det_bound(t, ab, cap)
        composite = theta_ab * det_ab + (1 - theta_ab) * 1.0
        low = lower_local(t, theta, opts)
        v.report("det_bound_ab", det_ab)
        v.report("lower_status", low.status)
        v.check("lower_at_least_start", low.achieved_entropy, h, 1e-9, ">=")
        v.check("lower_below_det_composite", low.achieved_entropy, composite, 1e-9, "<=")
        if separated:
            v.check("det_composite_below_M_theta", composite, mt, 1e-12, "<")
    return v


# -------------------------------------------------------------------- Q_gamma

def verify_qgamma(g: float = 0.9, opts=None) -> ClaimVerdict:
    if not 0.75 <= g <= 1.0:
        raise ValueError(f"gamma must lie in [3/4, 1], got {g}")
    opts = Options.coerce(opts)
    v = ClaimVerdict("qgamma")
    with _timed(v):
        t = corpus.q_gamma(g)
        ab = _bip("AB")
        h_ab = bipartition_entropy(t, ab)
        cap = capacity(t, opts)
        v.check("capacity", cap.capacity, 1.0, 1e-6)
        c = c_psi(t, ab, cap)
        v.check("c_psi", c, (1 - g) * (g / 3) ** 3, 1e-10)
        db = det_bound(t, ab, cap)
        v.check("det_bound_equals_H_AB", db, h_ab, 1e-9)
        low = lower_local(t, BipartitionDistribution.delta(ab), opts)
        v.check("lower_local", low.achieved_entropy, h_ab, 1e-4)
        v.check("lower_below_det_bound", low.achieved_entropy, db, 1e-9, "<=")
        v.report("H_AB", h_ab)
    return v


# -------------------------------------------------------------------- crossing

def verify_crossing(n: int = 4, w: float = 0.5, opts=None) -> ClaimVerdict:
    if not 0 < w < 1:
        raise ValueError(f"w must lie in (0, 1), got {w}")
    v = ClaimVerdict("crossing")
    with _timed(v):
        t = corpus.unit(2, 4)
        ab, bc = _bip("AB"), _bip("BC")
        x = power_state(t, 4)
        ref = x.norm()
        fwd = apply_ordered_product(x, [(ab, Partition.of(2, 1, 1)), (bc, Partition.of(2, 2))])
        rev = apply_ordered_product(x, [(bc, Partition.of(2, 2)), (ab, Partition.of(2, 1, 1))])
        v.check("forward_relative_norm", fwd.norm() / ref, 1e-8, 0.0, ">")
        v.check("reversed_relative_norm", rev.norm() / ref, 1e-10, 0.0, "<")
        theta = BipartitionDistribution(4, {ab: w, bc: 1 - w}, atol=1e-9)
        up = upper_level(t, theta, n, order=[ab, bc])
        bound = 1.5 * w + (1 - w)
        v.check("upper_level", up.best_value, bound, 1e-9, ">=")
        v.check("upper_above_one", up.best_value, 1.0, 0.0, ">")
        v.report("target_bound", bound)
        v.report("best_tuple", up.best_tuple)
        ents = [bipartition_entropy(t, b) for b in all_bipartitions(4)]
        v.check("max_bipartition_entropy", max(ents), 1.0, 1e-12)
        v.check("min_bipartition_entropy", min(ents), 1.0, 1e-12)
        v.check("m_theta", m_theta(t, theta), 1.0, 1e-12)
    return v


# -------------------------------------------------------------------- unit on subsets

def subset_formula(theta: BipartitionDistribution, S) -> float:
    S = frozenset(S)
    return 1.0 - sum(w for b, w in theta.items() if S <= b.side or S <= b.complement)


def proper_subsets(k: int):
    for r in range(1, k):
        for S in itertools.combinations(range(k), r):
            yield frozenset(S)


def unit_subset_formula(theta: BipartitionDistribution, level: int = 4, opts=None,
                        tol: float = 1e-6) -> ClaimVerdict:
    """Check lower and level-``level`` upper values on every rank-2 subset unit.

    At level 2 the upper search cannot reach the formula when three support
    bipartitions split ``S`` three ways (no common nonzero Kronecker triple of
    two-box columns); level 4 is the default for that reason.
    """
    if crossing_pair(theta) is not None:
        raise ValueError("the subset-unit formula needs a laminar distribution")
    opts = Options.coerce(opts)
    v = ClaimVerdict("unit-subset")
    with _timed(v):
        from .tensor import party_label

        for S in proper_subsets(theta.k):
            t = corpus.unit2_on_subset(S, theta.k)
            f = subset_formula(theta, S)
            name = party_label(S)
            v.check(f"lower[{name}]", lower_local(t, theta, opts).achieved_entropy, f, tol)
            v.check(f"upper{level}[{name}]", upper_level(t, theta, level).best_value, f, tol)
    return v


def recognition_vector(theta: BipartitionDistribution) -> dict:
    return {S: subset_formula(theta, S) for S in proper_subsets(theta.k)}


def recover_distribution(values: dict, k: int) -> dict:
    """Invert the subset-unit values: larger sides first, by decreasing size."""
    rec: dict[Bipartition, float] = {}
    bips = all_bipartitions(k)

    def big(b):
        s, c = b.side, b.complement
        return s if len(s) >= len(c) else c

    for b in sorted(bips, key=lambda b: (-len(big(b)), b)):
        S = big(b)
        above = sum(
            rec[o] for o in rec if o != b and any(S < side for side in o.sides)
        )
        rec[b] = 1.0 - values[S] - above
    return rec


def recognition_roundtrip(theta: BipartitionDistribution, tol: float = 1e-9) -> ClaimVerdict:
    v = ClaimVerdict("recognition")
    with _timed(v):
        rec = recover_distribution(recognition_vector(theta), theta.k)
        for b in all_bipartitions(theta.k):
            v.check(f"theta[{b}]", rec[b], theta.get(b, 0.0), tol)
    return v


# -------------------------------------------------------------------- W_4

@dataclass(frozen=True)
class W4Point:
    alpha: float
    beta: float
    gamma: float
    delta: float
    z: float

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta, self.z)

    def violations(self, tol: float = 1e-12) -> list[str]:
        a, b, c, d, z = self.as_tuple()
        out = []
        if any(x < -tol or x > 0.5 + tol for x in (a, b, c, d, z)):
            out.append("bounds")
        if abs(a - b) > z + tol or abs(c - d) > z + tol:
            out.append("pair difference")
        if a + b > 1 - z + tol or c + d > 1 - z + tol:
            out.append("pair sum")
        if a + b + c + d > 1 + tol:
            out.append("total")
        return out

    def feasible(self, tol: float = 1e-12) -> bool:
        return not self.violations(tol)

    def entropies(self):
        return tuple(binary_entropy(x) for x in self.as_tuple())

    def h_theta(self, weights) -> float:
        """``weights`` ordered (A, B, C, D, AB)."""
        return float(sum(w * h for w, h in zip(weights, self.entropies())))


def w4_transform(x: W4Point, tol: float = 1e-12) -> W4Point:
    """Move a feasible point to one realized in the orbit of W_4, without losing entropy."""
    bad = x.violations(tol)
    if bad:
        raise ValueError(f"infeasible point {x.as_tuple()}: violates {', '.join(bad)}")
    a, b, c, d, z = x.as_tuple()
    sigma = a + b + c + d
    if sigma >= 1 - tol:
        return W4Point(a, b, c, d, min(a + b, c + d))
    swapped = c + d > a + b
    if swapped:
        a, b, c, d = c, d, a, b
    c2 = c + min(0.5 - c - d, 1 - sigma)
    a2 = a + max(0.0, 0.5 - a - b)
    z2 = c2 + d
    if swapped:
        return W4Point(c2, d, a2, b, z2)
    return W4Point(a2, b, c2, d, z2)


def w4_state(x: W4Point) -> Tensor:
    """Restriction of W_4 with excitation weights given by the point."""
    maps = [np.diag([1.0, math.sqrt(w)]) for w in x.as_tuple()[:4]]
    from .tensor import apply_local_maps

    return apply_local_maps(corpus.w_state(4), maps)


def w4_second_eigenvalues(t: Tensor):
    out = []
    for side in ("A", "B", "C", "D", "AB"):
        spec = np.sort(marginal_spectrum(t, _bip(side)))[::-1]
        out.append(float(spec[1]) if len(spec) > 1 else 0.0)
    return out


def _second_row(lam: Partition) -> Fraction:
    return Fraction(lam.row(1), lam.n)


def w4_constraint_check(lam_a: Partition, lam_b: Partition, lam_c: Partition,
                        lam_d: Partition, lam_ab: Partition) -> bool:
    """Exact test of the four W_4 inequality families on normalized second rows."""
    lams = (lam_a, lam_b, lam_c, lam_d, lam_ab)
    if len({lam.n for lam in lams}) != 1:
        raise ValueError(f"size mismatch: {[lam.n for lam in lams]}")
    if any(lam.rows > 2 for lam in lams):
        return False
    a, b, c, d, z = (_second_row(lam) for lam in lams)
    half = Fraction(1, 2)
    return (
        all(0 <= x <= half for x in (a, b, c, d, z))
        and abs(a - b) <= z
        and abs(c - d) <= z
        and a + b <= 1 - z
        and c + d <= 1 - z
        and a + b + c + d <= 1
    )


def random_feasible_w4(rng, count: int) -> list[W4Point]:
    out = []
    while len(out) < count:
        x = W4Point(*rng.uniform(0, 0.5, size=5))
        if x.feasible(0.0):
            out.append(x)
    return out


def verify_w4_transform(points: int = 1000, thetas: int = 100, seed: int = 0) -> ClaimVerdict:
    v = ClaimVerdict("w4-transform")
    with _timed(v):
        rng = np.random.default_rng(seed)
        xs = random_feasible_w4(rng, points)
        ws = rng.dirichlet(np.ones(5), size=thetas)
        infeasible = dominance_fail = theta_fail = not_idem = sum_fail = 0
        worst_realization = 0.0
        for i, x in enumerate(xs):
            y = w4_transform(x)
            infeasible += not y.feasible(1e-12)
            a, b, c, d, z = y.as_tuple()
            sum_fail += abs(a + b + c + d - 1) > 1e-12 or min(abs(z - a - b), abs(z - c - d)) > 1e-12
            dominance_fail += any(hy < hx - 1e-12 for hx, hy in zip(x.entropies(), y.entropies()))
            not_idem += any(abs(p - q) > 1e-12 for p, q in zip(w4_transform(y).as_tuple(), y.as_tuple()))
            theta_fail += int(np.sum(
                [y.h_theta(w) < x.h_theta(w) - 1e-12 for w in ws]
            ))
            if i < 50:
                got = w4_second_eigenvalues(w4_state(y))
                worst_realization = max(worst_realization, max(abs(p - q) for p, q in zip(got, y.as_tuple())))
        v.check("infeasible_outputs", infeasible, 0)
        v.check("sum_or_z_mismatch", sum_fail, 0)
        v.check("entropy_dominance_failures", dominance_fail, 0)
        v.check("h_theta_failures", theta_fail, 0)
        v.check("non_idempotent", not_idem, 0)
        v.check("realization_deviation", worst_realization, 0.0, 1e-9)
        ex = w4_transform(W4Point(0.1, 0.1, 0.1, 0.1, 0.3)).as_tuple()
        v.check("example_deviation", max(abs(p - q) for p, q in zip(ex, (0.4, 0.1, 0.4, 0.1, 0.5))), 0.0, 1e-12)
    return v


W4_SIDES = ("A", "B", "C", "D", "AB")


def w4_feasible_tuples(n: int = 4):
    """All level-``n`` tuples (A, B, C, D, AB) with nonzero projection on W_4.

    Row-bound pruning is switched off so the constraints are tested, not assumed.
    """
    theta = BipartitionDistribution(4, {_bip(s): 0.2 for s in W4_SIDES})
    out = []
    for tup in feasible_tuples(corpus.w_state(4), theta, n, kronecker_prune=False):
        out.append(tuple(tup[_bip(s)] for s in W4_SIDES))
    return out


def verify_w4_constraints(n: int = 4, opts=None) -> ClaimVerdict:
    v = ClaimVerdict("w4-constraints")
    with _timed(v):
        tuples = w4_feasible_tuples(n)
        bad = [tuple(str(l) for l in tup) for tup in tuples if not w4_constraint_check(*tup)]
        v.check("feasible_tuples_found", len(tuples), 1, 0, ">=")
        v.check("constraint_violations", len(bad), 0)
        v.report("feasible_count", len(tuples))
        if bad:
            v.report("violating_tuples", bad[:10])
        cap = capacity(corpus.w_state(4), opts)
        v.check("w4_semistable", cap.semistable, False)
        v.check("w4_capacity", cap.capacity, 0.0, 0.0)
        _, resid = moment_map(corpus.w_state(4))
        v.check("w4_moment_residual", resid, 0.3, 0.0, ">")
    return v


# -------------------------------------------------------------------- genericity

def generic_separation_sample(d: int = 2, trials: int = 50, seed: int = 0,
                              margin: float = 1e-12, opts=None) -> ClaimVerdict:
    if d < 2 or trials < 1:
        raise ValueError("need d >= 2 and trials >= 1")
    opts = Options.coerce(opts)
    v = ClaimVerdict("generic", probabilistic=True)
    with _timed(v):
        D = d * d
        threshold = float(D) ** -D
        ab = _bip("AB")
        rng = np.random.default_rng(seed)
        strict = semistable = 0
        cs = []
        for _ in range(trials):
            t = random_gaussian_tensor((d,) * 4, int(rng.integers(2**63 - 1)))
            cap = capacity(t, opts)
            if not cap.semistable:
                continue
            semistable += 1
            c = c_psi(t, ab, cap)
            cs.append(c)
            db = entropy_max_with_det(D, c)[0]
            if c < threshold - margin and db < math.log2(D):
                strict += 1
        frac = strict / trials
        v.report("semistable_fraction", semistable / trials)
        v.report("median_c_psi", float(np.median(cs)) if cs else float("nan"))
        v.report("threshold", threshold)
        v.check("strict_fraction", frac, 0.9, 0.0, ">=")
        q = corpus.q_gamma(0.75)
        cq = c_psi(q, ab)
        v.check("boundary_c_psi", cq, threshold, 1e-15)
        v.check("boundary_excluded", cq < threshold - margin, False)
    return v


# -------------------------------------------------------------------- AME

def lower_not_spectral_ingredients(k: int = 4, factor: float = 0.9) -> ClaimVerdict:
    if k < 4:
        raise ValueError(f"need k >= 4, got {k}")
    v = ClaimVerdict("not-spectral")
    with _timed(v):
        L = corpus.ame_L(k)
        core = corpus.ame_L(4)
        worst = 0.0
        for b in all_bipartitions(4):
            spec = marginal_spectrum(core, b)
            nz = spec[spec > 1e-12]
            worst = max(worst, float(np.abs(nz - 1 / len(nz)).max()))
            v.check(f"entropy[{b}]", bipartition_entropy(core, b), math.log2(len(nz)), 1e-12)
        v.check("uniformity_deviation", worst, 0.0, 1e-12)
        _, resid = moment_map(L)
        v.check("moment_residual", resid, 0.0, 1e-12)
        ab = _bip("AB", k)
        cap = capacity(L)
        v.check("c_psi_L", c_psi(L, ab, cap), 9.0**-9, 1e-20)
        v.check("det_bound_L", det_bound(L, ab, cap), math.log2(9), 1e-9)
        # the display's scale: 3 outcomes, threshold 3^-3
        s3 = entropy_max_with_det(3, factor / 27)[0]
        v.check("det_entropy_3", s3, math.log2(3), 0.0, "<")
        v.report("gap_3", math.log2(3) - s3)
        # the flattening's actual scale: 9 outcomes, threshold 9^-9
        s9 = entropy_max_with_det(9, factor * 9.0**-9)[0]
        v.check("det_entropy_9", s9, math.log2(9), 0.0, "<")
        v.report("gap_9", math.log2(9) - s9)
        # trivial legs change nothing
        theta = BipartitionDistribution(k + 1, {
            Bipartition(k + 1, frozenset({0, 1})): 0.5,
            Bipartition(k + 1, frozenset({0})): 0.25,
            Bipartition(k + 1, frozenset({0, 2, k})): 0.25,
        })
        big = corpus.embed(L, k + 1, list(range(k)))
        sub, C = restricted_distribution(theta, k)
        v.check("embedded_entropy", weighted_entropy(big, theta), C * weighted_entropy(L, sub), 1e-12)
        v.check("lower_equals_M_theta", weighted_entropy(L, sub), m_theta(L, sub), 1e-9)
    return v


# -------------------------------------------------------------------- embedding

def embedding_identity_check(t: Tensor, theta: BipartitionDistribution, k: int | None = None,
                             n: int = 4, opts=None) -> ClaimVerdict:
    k = theta.k if k is None else k
    if theta.k != k:
        raise ValueError(f"distribution is over {theta.k} parties, expected {k}")
    if t.k >= k:
        raise ValueError(f"tensor has {t.k} legs; embedding needs fewer than {k}")
    opts = Options.coerce(opts)
    sub, C = restricted_distribution(theta, t.k)
    v = ClaimVerdict("embedding")
    with _timed(v):
        big = corpus.embed(t, k, list(range(t.k)))
        v.report("C", C)
        v.report("restricted", sub.to_spec())
        v.check("start_entropy", weighted_entropy(big, theta), C * weighted_entropy(t, sub), 1e-9)
        lo_big = lower_local(big, theta, opts).achieved_entropy
        lo_small = lower_local(t, sub, opts).achieved_entropy
        v.check("lower", lo_big, C * lo_small, 1e-3)
        if crossing_pair(theta) is None and crossing_pair(sub) is None:
            vals_big = sorted({round(tuple_value(theta, tp), 9) for tp in feasible_tuples(big, theta, n)})
            vals_small = sorted({round(C * tuple_value(sub, tp), 9) for tp in feasible_tuples(t, sub, n)})
            v.check("feasible_value_count", len(vals_big), len(vals_small))
            diff = max((abs(a - b) for a, b in zip(vals_big, vals_small)), default=0.0)
            v.check("feasible_value_deviation", diff if len(vals_big) == len(vals_small) else 1.0, 0.0, 1e-8)
            v.check("upper", max(vals_big), max(vals_small), 1e-8)
        else:
            v.notes.append("upper correspondence skipped: distribution not laminar")
    return v


# -------------------------------------------------------------------- registry

DEFAULT_THETA = "AB:0.3333333333333333,A:0.3333333333333333,C:0.3333333333333334"

CLAIMS = {
    "sp-separation": lambda o: verify_sp_separation(1 / 3, 0.5, o),
    "qgamma": lambda o: verify_qgamma(0.9, o),
    "crossing": lambda o: verify_crossing(o.level_n if o.level_n else 4, 0.5, o),
    "unit-subset": lambda o: unit_subset_formula(BipartitionDistribution.parse(DEFAULT_THETA, 4), 4, o),
    "recognition": lambda o: recognition_roundtrip(BipartitionDistribution.parse(DEFAULT_THETA, 4)),
    "w4-transform": lambda o: verify_w4_transform(1000, 100, o.seed),
    "w4-constraints": lambda o: verify_w4_constraints(4, o),
    "generic": lambda o: generic_separation_sample(2, 50, o.seed, opts=o),
    "not-spectral": lambda o: lower_not_spectral_ingredients(4),
    "embedding": lambda o: embedding_identity_check(
        corpus.w_state(3), BipartitionDistribution.parse("AB:0.5,C:0.5", 4), 4, 4, o
    ),
}


def run_claim(claim_id: str, opts=None) -> ClaimVerdict:
    if claim_id not in CLAIMS:
        raise KeyError(f"unknown claim {claim_id!r}; available: {', '.join(CLAIMS)}")
    return CLAIMS[claim_id](Options.coerce(opts))
