"""Named tensors used throughout the library, and the standard embedding.

Basis vector ``e_1`` in 1-based notation is index 0 here.
"""
from __future__ import annotations

import math
from itertools import permutations
from typing import Sequence

import numpy as np

from .tensor import Tensor, parse_parties

MAX_DET_K = 6


def _basis_sum(shape, terms) -> Tensor:
    out = np.zeros(shape, dtype=np.complex128)
    for idx, coeff in terms:
        out[idx] += coeff
    return Tensor(out)


def unit(n: int, k: int) -> Tensor:
    """Rank-``n`` unit tensor: sum of ``e_i`` on every leg."""
    if n < 1 or k < 2:
        raise ValueError(f"unit tensor needs n >= 1 and k >= 2, got n={n}, k={k}")
    return _basis_sum((n,) * k, (((i,) * k, 1.0) for i in range(n)))


def unit2_on_subset(S, k: int) -> Tensor:
    """Rank-2 unit tensor on the parties in ``S``; other legs are trivial.

    ``S`` is a set of 0-based party indices or a string of letters.
    """
    if isinstance(S, str):
        S = parse_parties(S)
    S = frozenset(int(i) for i in S)
    if not S or not S <= set(range(k)):
        raise ValueError(f"subset {sorted(S)} is not a nonempty subset of {k} parties")
    shape = tuple(2 if j in S else 1 for j in range(k))
    terms = [(tuple(i if j in S else 0 for j in range(k)), 1.0) for i in range(2)]
    return _basis_sum(shape, terms)


def w_state(k: int) -> Tensor:
    """Unnormalized W state: one excitation spread over ``k`` legs."""
    if k < 2:
        raise ValueError(f"W state needs k >= 2, got {k}")
    terms = [(tuple(1 if j == i else 0 for j in range(k)), 1.0) for i in range(k)]
    return _basis_sum((2,) * k, terms)


def s_p(p: float) -> Tensor:
    """The four-qubit family separating the upper and lower functionals."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    a, b = math.sqrt(p / 2), math.sqrt((1 - p) / 2)
    return _basis_sum(
        (2, 2, 2, 2),
        [((0, 0, 0, 0), a), ((1, 1, 1, 1), a), ((0, 1, 0, 1), b), ((1, 0, 1, 0), b)],
    )


def bell_states() -> dict[str, np.ndarray]:
    r = 1 / math.sqrt(2)
    return {
        "phi+": np.array([[r, 0], [0, r]], dtype=complex),
        "phi-": np.array([[r, 0], [0, -r]], dtype=complex),
        "psi+": np.array([[0, r], [r, 0]], dtype=complex),
        "psi-": np.array([[0, r], [-r, 0]], dtype=complex),
    }


def q_gamma(g: float) -> Tensor:
    """Purified Werner-type family; Bell pairs sit on (A,B) and (C,D)."""
    if not 0.0 <= g <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {g}")
    bell = bell_states()
    out = math.sqrt(1 - g) * np.multiply.outer(bell["psi-"], bell["psi-"])
    for name in ("phi+", "phi-", "psi+"):
        out = out + math.sqrt(g / 3) * np.multiply.outer(bell[name], bell[name])
    return Tensor(out)


def ame_L(k: int) -> Tensor:
    """Absolutely maximally entangled 3x3x3x3 core padded with trivial legs."""
    if k < 4:
        raise ValueError(f"AME tensor needs k >= 4, got {k}")
    core = np.zeros((3, 3, 3, 3), dtype=np.complex128)
    for a in range(3):
        for b in range(3):
            # 1-based l, l' shifted to 0-based with sums reduced into {1,2,3}
            core[a, b, (a + b + 1) % 3, (a + 2 * b + 2) % 3] = 1 / 3
    return Tensor(core.reshape((3, 3, 3, 3) + (1,) * (k - 4)))


def det_tensor(k: int) -> Tensor:
    """Antisymmetric tensor ``e_1 ^ ... ^ e_k``."""
    if not 2 <= k <= MAX_DET_K:
        raise ValueError(f"determinant tensor supports 2 <= k <= {MAX_DET_K}, got {k}")
    out = np.zeros((k,) * k, dtype=np.complex128)
    for perm in permutations(range(k)):
        out[perm] = _perm_sign(perm)
    return Tensor(out)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def embed(t: Tensor, k: int, positions: Sequence[int]) -> Tensor:
    """Place the legs of ``t`` at 0-based ``positions`` among ``k`` legs.

    The remaining legs have dimension 1.
    """
    positions = [int(p) for p in positions]
    if len(positions) != t.k:
        raise ValueError(f"need {t.k} positions, got {len(positions)}")
    if len(set(positions)) != len(positions) or any(not 0 <= p < k for p in positions):
        raise ValueError(f"invalid positions {positions} for {k} legs")
    order = np.argsort(positions)
    data = t.data.transpose(order)
    shape = [1] * k
    for p in sorted(positions):
        shape[p] = t.shape[positions.index(p)]
    return Tensor(data.reshape(shape))


# ------------------------------------------------------------ name resolution

def _kv(body: str) -> dict[str, str]:
    out = {}
    if not body:
        return out
    for item in body.split(","):
        if "=" not in item:
            raise ValueError(f"expected key=value, got {item!r}")
        key, val = item.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def _int(params, key):
    try:
        return int(params[key])
    except KeyError:
        raise ValueError(f"missing parameter {key!r}") from None


def _float(params, key):
    try:
        return float(params[key])
    except KeyError:
        raise ValueError(f"missing parameter {key!r}") from None


FAMILIES = {
    "unit": (lambda q: unit(_int(q, "n"), _int(q, "k")), ("n", "k")),
    "sp": (lambda q: s_p(_float(q, "p")), ("p",)),
    "qgamma": (lambda q: q_gamma(_float(q, "g")), ("g",)),
    "w": (lambda q: w_state(_int(q, "k")), ("k",)),
    "ameL": (lambda q: ame_L(_int(q, "k")), ("k",)),
    "det": (lambda q: det_tensor(_int(q, "k")), ("k",)),
    "unit2S": (lambda q: unit2_on_subset(q["S"], _int(q, "k")), ("S", "k")),
}


def from_name(spec: str) -> Tensor:
    """Build a tensor from a spec such as ``"sp:p=0.333"`` or ``"unit:n=2,k=4"``."""
    name, _, body = spec.strip().partition(":")
    if name not in FAMILIES:
        raise ValueError(f"unknown tensor family {name!r}; known: {', '.join(FAMILIES)}")
    params = _kv(body)
    unknown = set(params) - set(FAMILIES[name][1])
    if unknown:
        raise ValueError(f"unknown parameter(s) {sorted(unknown)} for {name}")
    return FAMILIES[name][0](params)
