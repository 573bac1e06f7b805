import random

import pytest
from hypothesis import given, strategies as st

from grascurve.errors import NotDecomposable
from grascurve.exact import QQ, Mat, Subspace
from grascurve.grassmann import (
    LABELS, PlueckerVector, SkewForm, evaluate_covector, hyperplane_to_skew, lines_incident, parse_covector,
    plucker_relations, pluecker_embed, pluecker_split, random_subspace, schubert_lookup, schubert_sample,
    schubert_table, skew_restrict, wedge2, wedge2_matrix,
)

seeds = st.integers(0, 10 ** 6)


def e(*idx):
    return Subspace.coordinate(idx)


def unit(i):
    return [1 if j == i else 0 for j in range(5)]


def test_embed_coordinate_plane():
    assert pluecker_embed(e(0, 1)).coords == (1,) + (0,) * 9


def test_embed_direct_minors():
    v = pluecker_embed([[1, 0, 0, 0, 0], [0, 1, 1, 0, 0]])
    assert v["p01"] == 1 and v["p02"] == 1
    assert sum(1 for c in v.coords if c != 0) == 2


def test_skew_indexing():
    v = pluecker_embed([[1, 0, 0, 0, 0], [0, 1, 1, 0, 0]])
    assert v[1, 0] == -1 and v[3, 3] == 0


@given(seeds)
def test_random_planes_satisfy_plucker_relations_and_round_trip(seed):
    plane = random_subspace(random.Random(seed), 2)
    v = pluecker_embed(plane)
    assert all(r == 0 for r in plucker_relations(v.coords))
    assert pluecker_split(v) == plane


def test_split_coordinate_point():
    assert pluecker_split(PlueckerVector((1,) + (0,) * 9)) == e(0, 1)


def test_split_rejects_non_decomposable():
    coords = [0] * 10
    coords[LABELS.index("p01")] = 1
    coords[LABELS.index("p23")] = 1
    with pytest.raises(NotDecomposable):
        pluecker_split(PlueckerVector(coords))


def test_incidence_examples():
    assert lines_incident(e(0, 1), e(0, 2))
    assert not lines_incident(e(0, 1), e(2, 3))


@given(seeds)
def test_incidence_agrees_with_meet(seed):
    rng = random.Random(seed)
    a = random_subspace(rng, 2)
    b = random_subspace(rng, 2) if rng.random() < 0.5 else Subspace(
        [a.basis.rows[0], [rng.randint(-5, 5) for _ in range(5)]])
    if b.dim != 2:
        return
    assert lines_incident(a, b) == (a.meet(b).dim >= 1)


@given(seeds, st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_basis_change_scales_by_determinant(seed, g):
    a, b = random_subspace(random.Random(seed), 2).basis.rows
    det = g[0] * g[3] - g[1] * g[2]
    if det == 0:
        return
    a2 = [g[0] * x + g[1] * y for x, y in zip(a, b)]
    b2 = [g[2] * x + g[3] * y for x, y in zip(a, b)]
    assert wedge2(a2, b2) == tuple(det * x for x in wedge2(a, b))
    assert pluecker_embed([a2, b2]) == pluecker_embed([a, b])


@given(seeds)
def test_induced_action_on_wedge(seed):
    rng = random.Random(seed)
    g = Mat([[rng.randint(-3, 3) for _ in range(5)] for _ in range(5)])
    a, b = random_subspace(rng, 2).basis.rows
    ga, gb = g.apply(a), g.apply(b)
    assert tuple(wedge2_matrix(g).apply(wedge2(a, b))) == wedge2(ga, gb)


# -- skew forms --

def test_h1_is_rank_four_with_kernel_e4():
    f = hyperplane_to_skew(parse_covector("p12 - p03"))
    assert f.rank() == 4
    assert f.kernel() == e(4)


def test_h1_restrictions():
    f = hyperplane_to_skew(parse_covector("p12 - p03"))
    assert skew_restrict(f, e(0, 1, 2, 4))[0] == 2
    rank, ker = skew_restrict(f, e(0, 1, 4))
    assert rank == 0 and ker == e(0, 1, 4)


def test_parse_covector_forms():
    assert parse_covector("p12 - p03") == parse_covector("p30 + p12")
    assert parse_covector("2*p01 + 1/2 p34")[0] == 2
    assert parse_covector(",".join(["1"] + ["0"] * 9))[0] == 1
    with pytest.raises(ValueError):
        parse_covector("p11")
    with pytest.raises(ValueError):
        parse_covector("p12 +* q")


def test_non_skew_matrix_rejected():
    with pytest.raises(ValueError):
        SkewForm(Mat.identity(5))


@given(seeds, st.integers(1, 5))
def test_skew_rank_even_and_kernel_complementary(seed, k):
    rng = random.Random(seed)
    f = hyperplane_to_skew([rng.randint(-3, 3) for _ in range(10)])
    v = random_subspace(rng, k)
    rank, ker = skew_restrict(f, v)
    assert rank % 2 == 0
    assert ker.dim == v.dim - rank
    assert v.contains_subspace(ker)


@given(seeds)
def test_two_evaluation_routes_agree(seed):
    rng = random.Random(seed)
    h = [QQ(rng.randint(-5, 5)) for _ in range(10)]
    a, b = random_subspace(rng, 2).basis.rows
    assert evaluate_covector(h, wedge2(a, b)) == hyperplane_to_skew(h).pair(a, b)


# -- Schubert data --

def test_schubert_table_entries():
    table = {d.name: (d.dim, d.deg) for d in schubert_table()}
    assert table["sigma20"] == (4, 3)
    assert table["sigma11"] == (4, 2)
    assert table["sigma10"] == (5, 5)
    assert table["sigma32"] == (1, 1)
    assert len(table) == 8


def test_schubert_lookup():
    assert schubert_lookup("sigma21").label == (2, 1)
    assert schubert_lookup((3, 1)).dim == 2
    with pytest.raises(KeyError):
        schubert_lookup("sigma44")


def test_sigma30_samples_contain_e0():
    d = schubert_lookup("sigma30")
    for seed in range(20):
        plane = schubert_sample(d, seed)
        assert plane.contains(unit(0))


@pytest.mark.parametrize("datum", schubert_table(), ids=lambda d: d.name)
def test_samples_lie_in_their_cycle(datum):
    for seed in range(10):
        assert datum.contains(schubert_sample(datum, seed))
