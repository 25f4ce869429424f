import math
from collections import defaultdict
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from tqf.symmetric import (
    CycleType,
    Partition,
    character,
    class_coefficients,
    cycle_types,
    diagram_entropy,
    enumerate_partitions,
    irrep_dimension,
    kronecker_row_feasible,
    lex_permutations,
    row_bound_check,
)


# ------------------------------------------------------------------ oracles

def partition_count(n):
    """p(n) by the coin-change recurrence."""
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for m in range(part, n + 1):
            ways[m] += ways[m - part]
    return ways[n]


def _poly_mul(a, b, cap):
    # drop monomials that overshoot the target exponent; they never come back down
    out = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if all(x <= c for x, c in zip(e, cap)):
                out[e] += ca * cb
    return out


def frobenius_character(lam, mu):
    """chi_lam(mu) as the coefficient of x^(lam + delta) in a_delta * prod p_mu_i."""
    r = len(lam)
    delta = tuple(r - 1 - i for i in range(r))
    vandermonde = defaultdict(int)
    for perm in permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        vandermonde[tuple(delta[perm[i]] for i in range(r))] += (-1) ** inv
    target = tuple(lam[i] + delta[i] for i in range(r))
    poly = vandermonde
    for m in mu:
        power_sum = {tuple(m if i == j else 0 for i in range(r)): 1 for j in range(r)}
        poly = _poly_mul(poly, power_sum, target)
    return poly.get(target, 0)


def hooks_by_brute_force(lam):
    cols = [sum(1 for p in lam if p > j) for j in range(lam[0])]
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j) + (cols[j] - i) - 1
    return math.factorial(sum(lam)) // prod


def partitions_of(n):
    return [p for p in enumerate_partitions(n)]


# ------------------------------------------------------------------ partitions

def test_enumerate_examples():
    assert [p.parts for p in enumerate_partitions(4, 2)] == [(4,), (3, 1), (2, 2)]
    assert len(enumerate_partitions(4, 4)) == 5


@pytest.mark.parametrize("n", range(1, 13))
def test_partition_count_matches_recurrence(n):
    assert len(enumerate_partitions(n)) == partition_count(n)


def test_partition_count_ten():
    assert len(enumerate_partitions(10)) == 42 == partition_count(10)


@pytest.mark.parametrize("n", [5, 7])
def test_enumeration_order_is_reverse_lex(n):
    parts = [p.parts for p in enumerate_partitions(n)]
    assert parts == sorted(parts, reverse=True)
    assert len(set(parts)) == len(parts)


def test_max_rows_filter():
    for n in range(1, 9):
        for r in range(1, n + 1):
            got = enumerate_partitions(n, r)
            assert all(p.rows <= r for p in got)
            assert len(got) == sum(1 for p in enumerate_partitions(n) if p.rows <= r)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    with pytest.raises(ValueError):
        enumerate_partitions(0)
    assert Partition.of(1, 3) == Partition((3, 1))
    assert Partition.parse("(2,1,1)") == Partition((2, 1, 1))
    assert Partition((2, 1, 1)).n == 4


# ------------------------------------------------------------------ cycle types

@pytest.mark.parametrize("n", range(1, 7))
def test_class_sizes_by_counting(n):
    counts = defaultdict(int)
    for perm in permutations(range(n)):
        counts[CycleType.of_permutation(perm)] += 1
    for c in cycle_types(n):
        assert c.class_size == counts[c]
    assert sum(c.class_size for c in cycle_types(n)) == math.factorial(n)


def test_cycle_type_sign():
    assert CycleType((2, 1, 1)).sign == -1
    assert CycleType((3, 1)).sign == 1
    assert CycleType.identity(4) == CycleType((1, 1, 1, 1))


# ------------------------------------------------------------------ characters

def test_character_examples():
    assert character(Partition((2, 2)), CycleType((2, 1, 1))) == 0
    assert character(Partition((1, 1, 1, 1)), CycleType((2, 1, 1))) == -1
    for c in cycle_types(5):
        assert character(Partition((5,)), c) == 1


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        character(Partition((2, 1)), CycleType((2, 2)))


@pytest.mark.parametrize("n", range(1, 8))
def test_character_matches_frobenius_formula(n):
    for lam in partitions_of(n):
        for c in cycle_types(n):
            assert character(lam, c) == frobenius_character(lam.parts, c.parts), (lam, c)


@pytest.mark.parametrize("n", range(1, 7))
def test_character_orthogonality(n):
    lams = partitions_of(n)
    for a in lams:
        for b in lams:
            s = sum(c.class_size * character(a, c) * character(b, c) for c in cycle_types(n))
            assert s == (math.factorial(n) if a == b else 0)


@pytest.mark.parametrize("n", range(1, 7))
def test_sign_twist(n):
    # conjugate partition character equals sign times character
    for lam in partitions_of(n):
        conj = Partition(tuple(sum(1 for p in lam.parts if p > j) for j in range(lam.row(0))))
        for c in cycle_types(n):
            assert character(conj, c) == c.sign * character(lam, c)


# ------------------------------------------------------------------ dimensions

@pytest.mark.parametrize("n", range(1, 9))
def test_dimension_equals_identity_character(n):
    for lam in partitions_of(n):
        assert irrep_dimension(lam) == character(lam, CycleType.identity(n))
        assert irrep_dimension(lam) == hooks_by_brute_force(lam.parts)


def test_dimension_examples():
    assert irrep_dimension(Partition((6,))) == 1
    assert irrep_dimension(Partition((2, 1, 1))) == 3
    assert sum(irrep_dimension(l) ** 2 for l in partitions_of(4)) == 24


@pytest.mark.parametrize("n", range(1, 9))
def test_burnside(n):
    assert sum(irrep_dimension(l) ** 2 for l in partitions_of(n)) == math.factorial(n)


# ------------------------------------------------------------------ entropy

def test_diagram_entropy_examples():
    assert diagram_entropy(Partition((2, 2))) == pytest.approx(1.0)
    assert diagram_entropy(Partition((2, 1, 1))) == pytest.approx(1.5)
    assert diagram_entropy(Partition((7,))) == 0.0
    assert Partition((2, 1, 1)).entropy() == pytest.approx(1.5)


@given(st.integers(1, 12), st.data())
def test_diagram_entropy_bounds(n, data):
    lam = data.draw(st.sampled_from(partitions_of(n)))
    h = diagram_entropy(lam)
    assert 0.0 <= h <= math.log2(lam.rows) + 1e-12


# ------------------------------------------------------------------ row bound

def test_row_bound_examples():
    P = Partition
    assert row_bound_check(P((3, 1)), P((2, 2)), P((2, 2)))
    assert not row_bound_check(P((4,)), P((2, 2)), P((3, 1)))
    with pytest.raises(ValueError):
        row_bound_check(P((3,)), P((2, 2)), P((2, 2)))


def kronecker_coefficient(a, b, c):
    n = a.n
    total = sum(
        ct.class_size * character(a, ct) * character(b, ct) * character(c, ct) for ct in cycle_types(n)
    )
    assert total % math.factorial(n) == 0
    return total // math.factorial(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_row_bound_is_necessary(n):
    # any nonzero Kronecker coefficient passes the check in every role
    lams = partitions_of(n)
    for a in lams:
        for b in lams:
            for c in lams:
                if kronecker_coefficient(a, b, c):
                    assert kronecker_row_feasible(a, b, c)


def test_second_row_inequality():
    # on two-row shapes the check gives |alpha - beta| <= z after rescaling second rows
    n = 8
    two = enumerate_partitions(n, 2)
    for a in two:
        for b in two:
            for c in two:
                if kronecker_row_feasible(a, b, c):
                    al, be, z = a.row(1), b.row(1), c.row(1)
                    assert abs(al - be) <= z


# ------------------------------------------------------------------ projector weights

def test_lex_permutations():
    perms = lex_permutations(3)
    assert perms == sorted(perms)
    assert len(perms) == 6


@pytest.mark.parametrize("n", range(1, 5))
def test_class_coefficients_sum_to_trace(n):
    # sum over lambda of the weights is the identity permutation indicator
    acc = defaultdict(Fraction)
    for lam in partitions_of(n):
        for perm, (num, den) in zip(lex_permutations(n), class_coefficients(lam)):
            acc[perm] += Fraction(num, den)
    for perm in lex_permutations(n):
        assert acc[perm] == (1 if perm == tuple(range(n)) else 0)
