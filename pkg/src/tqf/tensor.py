"""Dense complex k-tensors, flattenings, marginals and bipartition bookkeeping.

Parties are 0-based internally and printed as letters ``A``, ``B``, ...
Entropies are in bits throughout.
"""
from __future__ import annotations

import json
import string
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

RANK_TOL = 1e-9
EIG_FLOOR = 1e-14
LETTERS = string.ascii_uppercase


class ZeroTensorError(ValueError):
    """Raised when a functional is evaluated on the zero tensor."""

    def __init__(self, msg: str = "nonzero tensor required"):
        super().__init__(msg)


class Tensor:
    """An immutable dense complex tensor with explicit leg dimensions."""

    __slots__ = ("_data",)

    def __init__(self, data):
        arr = np.array(data, dtype=np.complex128, copy=True)
        if arr.ndim == 0:
            raise ValueError("a tensor needs at least one leg")
        if any(d < 1 for d in arr.shape):
            raise ValueError(f"leg dimensions must be positive, got {arr.shape}")
        arr.setflags(write=False)
        self._data = arr

    @classmethod
    def from_entries(cls, shape: Sequence[int], entries: Sequence) -> "Tensor":
        shape = tuple(int(d) for d in shape)
        flat = np.asarray(entries, dtype=np.complex128).ravel()
        if flat.size != int(np.prod(shape)):
            raise ValueError(
                f"entry count {flat.size} does not match shape {shape}"
            )
        return cls(flat.reshape(shape))

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, ...]:
        return self._data.shape

    @property
    def k(self) -> int:
        return self._data.ndim

    def norm(self) -> float:
        return float(np.linalg.norm(self._data.ravel()))

    def is_zero(self) -> bool:
        return not np.any(self._data)

    def normalized(self) -> "Tensor":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroTensorError()
        return Tensor(self._data / nrm)

    def __add__(self, other: "Tensor") -> "Tensor":
        return Tensor(self._data + other._data)

    def __mul__(self, scalar) -> "Tensor":
        return Tensor(self._data * scalar)

    __rmul__ = __mul__

    def allclose(self, other: "Tensor", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and np.allclose(
            self._data, other._data, atol=atol, rtol=0
        )

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, norm={self.norm():.6g})"

    # JSON: {"shape": [...], "entries": [[re, im], ...]} row-major
    def to_json(self) -> str:
        flat = self._data.ravel()
        return json.dumps(
            {
                "shape": list(self.shape),
                "entries": [[float(z.real), float(z.imag)] for z in flat],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Tensor":
        obj = json.loads(text)
        try:
            shape = obj["shape"]
            entries = obj["entries"]
        except (TypeError, KeyError) as exc:
            raise ValueError(f"tensor JSON missing field {exc}") from None
        vals = []
        for pos, e in enumerate(entries):
            if isinstance(e, (list, tuple)) and len(e) == 2:
                vals.append(complex(float(e[0]), float(e[1])))
            elif isinstance(e, (int, float)):
                vals.append(complex(e))
            else:
                raise ValueError(f"bad entry at position {pos}: {e!r}")
        return cls.from_entries(shape, vals)


def require_nonzero(t: Tensor) -> None:
    if t.is_zero():
        raise ZeroTensorError()


# ---------------------------------------------------------------- bipartitions

def party_label(parties: Iterable[int]) -> str:
    return "".join(LETTERS[i] for i in sorted(parties))


def parse_parties(text: str) -> frozenset[int]:
    text = text.strip()
    if not text:
        raise ValueError("empty party set")
    out = set()
    for pos, ch in enumerate(text):
        if ch not in LETTERS:
            raise ValueError(f"bad party letter {ch!r} at position {pos}")
        out.add(LETTERS.index(ch))
    return frozenset(out)


@dataclass(frozen=True, order=True)
class Bipartition:
    """Unordered pair {S, complement}; ``side`` always holds party 0."""

    k: int
    side: frozenset = field(compare=False)
    _key: tuple = field(init=False, repr=False, compare=True)

    def __post_init__(self):
        side = frozenset(int(i) for i in self.side)
        if not side or len(side) >= self.k or not side <= set(range(self.k)):
            raise ValueError(f"{sorted(side)} is not a proper nonempty subset of {self.k} parties")
        if 0 not in side:
            side = frozenset(range(self.k)) - side
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "_key", (len(side), tuple(sorted(side))))

    @classmethod
    def parse(cls, text: str, k: int) -> "Bipartition":
        text = text.strip()
        left = text.split("|")[0]
        return cls(k, parse_parties(left))

    @property
    def complement(self) -> frozenset:
        return frozenset(range(self.k)) - self.side

    @property
    def sides(self) -> tuple[frozenset, frozenset]:
        return self.side, self.complement

    def is_singleton(self) -> bool:
        return len(self.side) == 1 or len(self.side) == self.k - 1

    def laminar_with(self, other: "Bipartition") -> bool:
        return any(a <= b for a in self.sides for b in other.sides)

    def separates(self, parties: frozenset) -> bool:
        """True when ``parties`` meets both sides."""
        return bool(parties & self.side) and bool(parties & self.complement)

    def __str__(self) -> str:
        return f"{party_label(self.side)}|{party_label(self.complement)}"


def all_bipartitions(k: int) -> list[Bipartition]:
    out = []
    rest = list(range(1, k))
    for r in range(0, k - 1):
        for extra in combinations(rest, r):
            out.append(Bipartition(k, frozenset((0,) + extra)))
    return sorted(out)


class BipartitionDistribution(Mapping):
    """Probability weights on bipartitions of ``k`` parties."""

    def __init__(self, k: int, weights: Mapping[Bipartition, float], atol: float = 1e-12):
        merged: dict[Bipartition, float] = {}
        for b, w in weights.items():
            if not isinstance(b, Bipartition):
                b = Bipartition(k, b)
            if b.k != k:
                raise ValueError(f"bipartition {b} is not over {k} parties")
            w = float(w)
            if w < 0:
                raise ValueError(f"negative weight {w} on {b}")
            merged[b] = merged.get(b, 0.0) + w
        total = sum(merged.values())
        if abs(total - 1.0) > atol:
            raise ValueError(f"weights sum to {total!r}, not 1")
        self.k = k
        self._w = {b: w for b, w in sorted(merged.items()) if w > 0}

    @classmethod
    def delta(cls, b: Bipartition) -> "BipartitionDistribution":
        return cls(b.k, {b: 1.0})

    @classmethod
    def parse(cls, spec: str, k: int) -> "BipartitionDistribution":
        """Parse ``"AB:0.5,A:0.25,C:0.25"``; a lone term without weight means 1."""
        weights: dict[Bipartition, float] = {}
        pos = 0
        for term in spec.split(","):
            stripped = term.strip()
            if not stripped:
                raise ValueError(f"empty term at position {pos}")
            if ":" in stripped:
                side_txt, w_txt = stripped.split(":", 1)
                try:
                    w = float(w_txt)
                except ValueError:
                    raise ValueError(f"bad weight {w_txt!r} at position {pos}") from None
            else:
                side_txt, w = stripped, 1.0
            try:
                b = Bipartition.parse(side_txt, k)
            except ValueError as exc:
                raise ValueError(f"{exc} (term at position {pos})") from None
            weights[b] = weights.get(b, 0.0) + w
            pos += len(term) + 1
        return cls(k, weights, atol=1e-9)

    def __getitem__(self, b):
        return self._w[b]

    def get(self, b, default=0.0):
        return self._w.get(b, default)

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    @property
    def support(self) -> list[Bipartition]:
        return list(self._w)

    def to_spec(self) -> str:
        return ",".join(f"{party_label(b.side)}:{w:.12g}" for b, w in self._w.items())

    def __repr__(self) -> str:
        return f"BipartitionDistribution({self.k}, {self.to_spec()!r})"


def crossing_pair(theta: BipartitionDistribution):
    """First support pair that is not mutually laminar, or None."""
    supp = theta.support
    for i, b in enumerate(supp):
        for c in supp[i + 1:]:
            if not b.laminar_with(c):
                return b, c
    return None


def is_laminar(theta: BipartitionDistribution) -> bool:
    return crossing_pair(theta) is None


def restricted_distribution(theta: BipartitionDistribution, ell: int):
    """Push ``theta`` onto the first ``ell`` parties.

    Returns ``(theta_restricted, C)`` where ``C`` is the total weight of
    bipartitions that still split ``{0..ell-1}``.
    """
    if not 1 <= ell < theta.k:
        raise ValueError(f"need 1 <= ell < k, got ell={ell}, k={theta.k}")
    head = frozenset(range(ell))
    acc: dict[Bipartition, float] = {}
    for b, w in theta.items():
        cut = b.side & head
        if cut and cut != head:
            rb = Bipartition(ell, cut)
            acc[rb] = acc.get(rb, 0.0) + w
    total = sum(acc.values())
    if total <= 0:
        raise ValueError("restricted distribution undefined: no bipartition splits the first parties (C = 0)")
    return BipartitionDistribution(ell, {b: w / total for b, w in acc.items()}, atol=1e-9), total


# ------------------------------------------------------------------- algebra

def kronecker(a: Tensor, b: Tensor) -> Tensor:
    """Party-wise tensor product; leg j gets dimension a_j * b_j."""
    if a.k != b.k:
        raise ValueError(f"party counts differ: {a.k} vs {b.k}")
    k = a.k
    outer = np.multiply.outer(a.data, b.data)
    axes = [ax for j in range(k) for ax in (j, k + j)]
    shape = tuple(da * db for da, db in zip(a.shape, b.shape))
    return Tensor(outer.transpose(axes).reshape(shape))


def direct_sum(a: Tensor, b: Tensor) -> Tensor:
    if a.k != b.k:
        raise ValueError(f"party counts differ: {a.k} vs {b.k}")
    out = np.zeros(tuple(x + y for x, y in zip(a.shape, b.shape)), dtype=np.complex128)
    out[tuple(slice(0, d) for d in a.shape)] = a.data
    out[tuple(slice(d, None) for d in a.shape)] = b.data
    return Tensor(out)


def _side_of(arg, k: int) -> tuple[int, ...]:
    if isinstance(arg, Bipartition):
        side = arg.side
    else:
        side = frozenset(arg)
    side = tuple(sorted(side))
    if not side or len(side) >= k or side[0] < 0 or side[-1] >= k:
        raise ValueError(f"invalid side {side} for {k} parties")
    return side


def flatten(t: Tensor, side) -> np.ndarray:
    """Matrix from the legs in ``side`` (rows) to the remaining legs (columns).

    ``side`` may be a Bipartition (its canonical side is used) or a party set.
    Within each side legs are taken in ascending order.
    """
    rows = _side_of(side, t.k)
    cols = tuple(j for j in range(t.k) if j not in rows)
    dr = int(np.prod([t.shape[j] for j in rows]))
    return t.data.transpose(rows + cols).reshape(dr, -1)


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues in descending order."""
        return np.linalg.eigvalsh(self.matrix)[::-1]

    def entropy(self) -> float:
        return shannon_entropy(self.eigenvalues())


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > EIG_FLOOR]
    return float(-np.sum(p * np.log2(p))) + 0.0


def _gram(m: np.ndarray) -> np.ndarray:
    g = m @ m.conj().T
    return (g + g.conj().T) / 2


def marginal(t: Tensor, side) -> DensityOperator:
    """Normalized marginal on the legs in ``side``."""
    require_nonzero(t)
    m = flatten(t, side)
    g = _gram(m)
    return DensityOperator(g / np.trace(g).real)


def marginal_spectrum(t: Tensor, b) -> np.ndarray:
    """Nonzero-padded spectrum across a bipartition, taken on its smaller side."""
    require_nonzero(t)
    m = flatten(t, b)
    if m.shape[0] > m.shape[1]:
        m = m.T
    g = _gram(m)
    ev = np.linalg.eigvalsh(g / np.trace(g).real)[::-1]
    return np.clip(ev, 0.0, None)


def bipartition_entropy(t: Tensor, b) -> float:
    return shannon_entropy(marginal_spectrum(t, b))


def weighted_entropy(t: Tensor, theta: BipartitionDistribution) -> float:
    if theta.k != t.k:
        raise ValueError(f"distribution is over {theta.k} parties, tensor has {t.k}")
    return float(sum(w * bipartition_entropy(t, b) for b, w in theta.items()))


def flattening_rank(t: Tensor, b, tol: float = RANK_TOL) -> int:
    require_nonzero(t)
    s = np.linalg.svd(flatten(t, b), compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def apply_local_maps(t: Tensor, maps: Sequence) -> Tensor:
    """Apply ``maps[j]`` to leg ``j``; ``None`` leaves the leg untouched."""
    if len(maps) != t.k:
        raise ValueError(f"need {t.k} maps, got {len(maps)}")
    data = t.data
    for j, m in enumerate(maps):
        if m is None:
            continue
        m = np.asarray(m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[1] != data.shape[j]:
            raise ValueError(
                f"map for leg {j} has shape {m.shape}, leg dimension is {data.shape[j]}"
            )
        data = np.moveaxis(np.tensordot(m, data, axes=([1], [j])), 0, j)
    return Tensor(data)


def random_gaussian_tensor(shape: Sequence[int], seed=None) -> Tensor:
    """I.i.d. standard complex Gaussian entries (E|z|^2 = 1)."""
    rng = np.random.default_rng(seed)
    shape = tuple(int(d) for d in shape)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    return Tensor(z)


def product_dim(shape: Sequence[int], parties: Iterable[int]) -> int:
    return reduce(lambda x, y: x * y, (shape[j] for j in parties), 1)
