import random

import pytest
from hypothesis import given, strategies as st

from grascurve.binform import (
    BinForm, PolyMat, SplittingType, forms_gcd, graded_kernel_splitting, minimal_basis, split_cohomology,
)
from grascurve.errors import DegenerateFamily, NotLocallyFree
from grascurve.exact import QQ, GF, Mat

s = BinForm([1, 0], 1)
t = BinForm([0, 1], 1)
Z0 = BinForm.zero(0)
Z1 = BinForm.zero(1)
ONE = BinForm.const(1)


def c(x):
    return BinForm.const(x)


def test_form_arithmetic_and_evaluation():
    f = (s + t) * (s - t)
    assert f == s * s - t * t
    assert f(QQ(3), QQ(2)) == 5
    assert repr(s ** 2 + t ** 2 * 3) == "1*s^2 + 3*t^2"


def test_substitute():
    f = s * t
    g = f.substitute(1, 1, 0, 1)  # s <- s + t
    assert g == s * t + t * t


def test_gcd():
    g = forms_gcd([(s + t) * s, (s + t) * t])
    assert g.deg == 1 and g.divexact(s + t).deg == 0
    assert forms_gcd([s, t]).deg == 0
    assert forms_gcd([BinForm.zero(2)]) is None


# -- minimal basis --

def test_minimal_basis_already_minimal():
    m = PolyMat([[ONE, Z0, Z0, Z0, Z0], [Z1, s, t, Z1, Z1]])
    basis, idx = minimal_basis(m)
    assert idx == SplittingType([1, 0])
    assert basis == m


def test_minimal_basis_reduces_degree_one_row():
    m = PolyMat([[s, s, t, Z1, Z1], [ONE, Z0, Z0, Z0, Z0]])
    basis, idx = minimal_basis(m)
    assert idx == SplittingType([1, 0])
    assert basis.rows[1] == (Z1, s, t, Z1, Z1)


def test_minimal_basis_scroll_cubic():
    q = BinForm.zero(2)
    m = PolyMat([[s, t, Z1, Z1, Z1], [q, q, s * s, s * t, t * t]])
    assert minimal_basis(m)[1] == SplittingType([2, 1])


def test_minimal_basis_rank_deficient():
    with pytest.raises(DegenerateFamily):
        minimal_basis(PolyMat([[s, t, Z1, Z1, Z1], [s, t, Z1, Z1, Z1]]))


def test_minimal_basis_hidden_split_with_irreducible_determinant():
    # (1, 0..) and (0, s, t, 0, 0) mixed by a unimodular-up-to-scalar matrix of quadratic det s^2+t^2
    a = [ONE, Z0, Z0, Z0, Z0]
    b = [Z1, s, t, Z1, Z1]
    top = [s * s * x + t * y for x, y in zip(a, b)]
    bottom = [(s * s + t * t) * x + s * y for x, y in zip(a, b)]
    # row span over rational functions is the same as that of a, b
    _, idx = minimal_basis(PolyMat([top, bottom]))
    assert idx == SplittingType([1, 0])


def _random_family(rng, d0, d1):
    def row(d):
        return [BinForm([rng.randint(-4, 4) for _ in range(d + 1)], d) for _ in range(5)]
    return row(d0), row(d1)


@given(st.integers(0, 10 ** 6), st.integers(0, 2), st.integers(0, 2), st.integers(-6, 6))
def test_indices_invariant_under_coordinate_change(seed, d0, d1, lam):
    rng = random.Random(seed)
    r0, r1 = _random_family(rng, d0, min(d0 + d1, 3))
    m = PolyMat([r0, r1])
    try:
        _, idx = minimal_basis(m)
    except DegenerateFamily:
        return
    shifted = PolyMat([[f.substitute(1, lam, 0, 1) for f in r] for r in m.rows])
    assert minimal_basis(shifted)[1] == idx
    while True:
        g = Mat([[rng.randint(-2, 2) for _ in range(5)] for _ in range(5)])
        if g.rank() == 5:
            break
    moved = PolyMat([[sum((r[j] * g[i, j] for j in range(5)), BinForm.zero(r[0].deg)) for i in range(5)]
                     for r in m.rows])
    assert minimal_basis(moved)[1] == idx


@given(st.integers(0, 10 ** 6))
def test_minimal_basis_over_prime_field(seed):
    rng = random.Random(seed)
    F = GF(7)
    row0 = [BinForm([F(rng.randint(0, 6)), F(rng.randint(0, 6))], 1, F) for _ in range(5)]
    row1 = [BinForm([F(rng.randint(0, 6))], 0, F) for _ in range(5)]
    try:
        basis, idx = minimal_basis(PolyMat([row0, row1], F))
    except DegenerateFamily:
        return
    assert idx.degree <= 1 and len(idx) == 2


# -- graded kernels --

def test_koszul_kernel():
    assert graded_kernel_splitting(PolyMat([[s, t]]), [-1, -1], [0]) == SplittingType([-2])


def _pencil_map(a1, a4):
    # columns (a2, a3, b2, b3); pencil coordinates b1 = s, b4 = t
    return PolyMat([[-s, Z1, c(a1), c(-1)], [-t, -s, c(a4), c(a1)]])


def test_kernel_off_the_conic():
    assert graded_kernel_splitting(_pencil_map(0, 1), [0, 0, 1, 1], [1, 1]) == SplittingType([0, 0])


def test_kernel_on_the_conic():
    assert graded_kernel_splitting(_pencil_map(1, -1), [0, 0, 1, 1], [1, 1]) == SplittingType([1, -1])


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_kernel_jumps_exactly_on_conic(a1, a4):
    got = graded_kernel_splitting(_pencil_map(a1, a4), [0, 0, 1, 1], [1, 1])
    assert got == (SplittingType([1, -1]) if a4 + a1 * a1 == 0 else SplittingType([0, 0]))


def test_non_surjective_map():
    with pytest.raises(NotLocallyFree):
        graded_kernel_splitting(PolyMat([[s, s]]), [-1, -1], [0])


@given(st.integers(0, 10 ** 6))
def test_riemann_roch_for_random_kernels(seed):
    rng = random.Random(seed)
    src = [rng.randint(-1, 2) for _ in range(4)]
    tgt = [max(src) + 1]
    row = [BinForm([rng.randint(-3, 3) for _ in range(tgt[0] - d + 1)], tgt[0] - d) for d in src]
    try:
        k = graded_kernel_splitting(PolyMat([row]), src, tgt)
    except NotLocallyFree:
        return
    assert k.rank == 3
    assert k.degree == sum(src) - sum(tgt)
    h0, h1 = split_cohomology(k)
    assert h0 - h1 == k.degree + k.rank


# -- cohomology --

@pytest.mark.parametrize("t, expected", [
    ((0, 0, 1), (4, 0)),
    ((1, 1, -1), (4, 0)),
    ((-2,), (0, 1)),
    ((), (0, 0)),
])
def test_split_cohomology(t, expected):
    assert split_cohomology(SplittingType(t)) == expected


@given(st.lists(st.integers(-6, 6), max_size=6))
def test_euler_characteristic(ds):
    h0, h1 = split_cohomology(ds)
    assert h0 - h1 == sum(ds) + len(ds)


def test_splitting_type_sorted_and_printed():
    assert repr(SplittingType([0, 1, -1, 1])) == "{1,1,0,-1}"
