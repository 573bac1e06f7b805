import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from grascurve.errors import BadReduction, DimensionMismatch, FieldMismatch
from grascurve.exact import (
    GF, QQ, Mat, Subspace, format_scalar, parse_scalar, rref_kernel, subspace_meet, subspace_sum,
)

small = st.integers(-20, 20)
big = st.integers(-(2 ** 256), 2 ** 256)


def matrices(field=QQ, max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


# -- scalars --

def test_rationals_are_lowest_terms_with_positive_denominator():
    x = QQ(6) / QQ(-4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert format_scalar(x) == "-3/2"
    assert format_scalar(QQ(4)) == "4"


def test_gf_canonical_representatives():
    F = GF(7)
    assert F(-1).v == 6
    assert F("1/3").v == 5  # 3 * 5 = 15 = 1 mod 7
    assert format_scalar(F(10)) == "3"


def test_floats_rejected():
    with pytest.raises(TypeError):
        QQ(0.5)


def test_bad_reduction():
    with pytest.raises(BadReduction):
        GF(3)(Fraction(1, 3))


def test_field_mismatch_between_prime_fields():
    with pytest.raises(FieldMismatch):
        GF(3)(1) + GF(5)(1)
    with pytest.raises(FieldMismatch):
        QQ(GF(5)(2))
    with pytest.raises(FieldMismatch):
        Mat([[GF(3)(1), GF(5)(1)]])


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        GF(9)


@given(big.filter(bool), big.filter(bool))
def test_rational_inverse_256_bit(a, b):
    x = QQ(a) / QQ(b)
    assert x * (QQ(b) / QQ(a)) == 1


@given(st.integers(1, 10 ** 6))
def test_gf_inverse(a):
    F = GF(2 ** 31 - 1)
    x = F(a)
    assert x * x.inverse() == F.one


def test_parse_scalar_roundtrip():
    for s in ("0", "-7", "22/7", "-1/1000000000000000000000"):
        assert format_scalar(parse_scalar(s)) == s


# -- rref / kernel --

def test_identity_rank_and_kernel():
    _, rank, ker = rref_kernel(Mat.identity(3))
    assert rank == 3 and ker.dim == 0


def test_zero_matrix():
    _, rank, ker = rref_kernel(Mat.zeros(2, 5))
    assert rank == 0 and ker.dim == 5


def test_kernel_vectors_annihilated():
    m = Mat([[1, 2, 3, 4], [2, 4, 6, 9], [0, 0, 1, 1]])
    _, rank, ker = rref_kernel(m)
    assert rank + ker.dim == 4
    for v in ker.basis.rows:
        assert all(x == 0 for x in m.apply(v))


def test_pivoting_is_leftmost_column_first_row():
    red, piv = Mat([[0, 2, 4], [3, 0, 3]]).rref()
    assert piv == [0, 1]
    assert red.rows == ((1, 0, 1), (0, 1, 2))


@given(matrices())
def test_rank_equals_transpose_rank(rows):
    m = Mat(rows)
    assert m.rank() == m.transpose().rank()


@given(matrices())
def test_rref_idempotent(rows):
    red, _ = Mat(rows).rref()
    again, _ = red.rref()
    assert again == red


@given(matrices())
def test_rank_nullity(rows):
    m = Mat(rows)
    _, rank, ker = rref_kernel(m)
    assert rank + ker.dim == m.ncols


@given(matrices(max_rows=4, max_cols=5), st.sampled_from([2, 3, 5, 7]))
def test_rank_nullity_mod_p(rows, p):
    F = GF(p)
    m = Mat([[F(x) for x in r] for r in rows], F)
    _, rank, ker = rref_kernel(m)
    assert rank + ker.dim == m.ncols
    for v in ker.basis.rows:
        assert all(x == 0 for x in m.apply(v))


# -- subspaces --

def e(i, n=5):
    return [1 if j == i else 0 for j in range(n)]


def test_meet_and_sum_examples():
    a = Subspace([e(0), e(1)])
    b = Subspace([e(1), e(2)])
    assert subspace_meet(a, b) == Subspace([e(1)])
    assert (Subspace([e(0), e(1)]) + Subspace([e(2), e(3)])).dim == 4


def test_random_three_spaces_meet_in_a_line():
    rng = random.Random(0)
    for _ in range(20):
        a = Subspace([[rng.randint(-9, 9) for _ in range(5)] for _ in range(3)])
        b = Subspace([[rng.randint(-9, 9) for _ in range(5)] for _ in range(3)])
        assert (a.dim, b.dim) == (3, 3)
        assert a.meet(b).dim == 1


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4),
       st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4))
def test_grassmann_dimension_formula(ra, rb):
    a, b = Subspace(ra, 5), Subspace(rb, 5)
    assert subspace_sum(a, b).dim + subspace_meet(a, b).dim == a.dim + b.dim


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4),
       st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_canonical_form_independent_of_basis(rows, mix):
    a = Subspace(rows, 5)
    g = Mat(mix)
    if g.rank() != 4:
        return
    base = [list(r) for r in a.basis.rows] + [[0] * 5] * (4 - a.dim)
    other = [[sum(g[i, k] * base[k][j] for k in range(4)) for j in range(5)] for i in range(4)]
    assert Subspace(other, 5) == a


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        Subspace([e(0)]).meet(Subspace([[1, 0, 0]]))


def test_annihilator_and_complement():
    a = Subspace([e(0), e(2)])
    ann = a.annihilator()
    assert ann.dim == 3
    for c in ann.basis.rows:
        assert all(sum(x * y for x, y in zip(c, v)) == 0 for v in a.basis.rows)
    assert (a + Subspace(a.complement_basis(), 5)).dim == 5


def test_json_matrix_strings():
    m = Mat([[QQ("1/2"), 3], [0, -1]])
    assert m.to_json() == [["1/2", "3"], ["0", "-1"]]
    assert Mat.from_json(m.to_json()) == m


def test_vertex_condition_matrix_at_e0_hand_elimination():
    # columns are the covectors w -> omega_h(e0, w) for the three hyperplanes of Y3
    from grascurve.sections import section_preset
    forms = section_preset("Y3").forms
    cols = [f.covector_at(e(0)) for f in forms]
    assert cols[0] == (0, 0, 0, -1, 0)
    assert cols[1] == (0, 0, 0, 0, 0)
    assert cols[2] == (0, 0, -1, 0, 0)
    _, rank, ker = rref_kernel(Mat(cols).transpose())
    assert rank == 2 and ker.dim == 1
