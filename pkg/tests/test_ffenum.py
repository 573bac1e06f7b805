import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grascurve.errors import BadReduction, BudgetExceeded
from grascurve.exact import GF, Mat, Subspace
from grascurve.ffenum import (
    CovectorRank, EnumSpec, Lines, Planes22, Planes31, Schubert, SkewRank, Subspaces, batch_rank,
    count_projective_zeros, enumerate_count, fibers_over_fourspace, gaussian_binomial, iter_subspaces,
    locus_poly_check, parse_object, pivot_patterns, verify_witness,
)
from grascurve.grassmann import schubert_table
from grascurve.sections import SectionModel, axis_locus_model, section_preset

Y6, Y5, Y4, Y3, Y2 = (section_preset(n) for n in ("Y6", "Y5", "Y4", "Y3", "Y2"))


def count(p, obj, sec, **kw):
    return enumerate_count(EnumSpec(p, obj, sec), **kw)


def gr35(p):
    return gaussian_binomial(5, 3, p)


def sigma_count(p):
    return p ** 3 + p ** 2 + p + 1


# -- enumeration machinery --

@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_representatives_count_the_grassmannian(p, k):
    assert count(p, Subspaces(k), Y6).count == gaussian_binomial(5, k, p)


def test_gr25_over_f2():
    assert count(2, Subspaces(2), Y6).count == 155


def test_pivot_patterns():
    assert len(pivot_patterns(2, 5)) == 10
    assert pivot_patterns(1, 3) == [(0,), (1,), (2,)]


def test_iter_subspaces_distinct_and_complete():
    spaces = list(iter_subspaces(2, 3, 4))
    assert len(spaces) == gaussian_binomial(4, 2, 3) == len(set(spaces))


@given(st.lists(st.lists(st.integers(0, 6), min_size=5, max_size=5), min_size=1, max_size=4))
@settings(max_examples=60)
def test_batch_rank_matches_exact_rank(rows):
    F = GF(7)
    got = batch_rank(np.array([rows], dtype=np.int64), 7)[0]
    assert got == Mat([[F(x) for x in r] for r in rows], F).rank()


def test_bad_reduction_of_section():
    sec = SectionModel(["1/3 p01 + p23"])
    with pytest.raises(BadReduction):
        EnumSpec(3, Lines(), sec)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        count(5, Lines("flags"), Y5, budget=1000)


def test_parse_object():
    assert parse_object("lines", strategy="planes") == Lines("planes")
    assert parse_object("skew-rank") == SkewRank(4, 2)
    assert parse_object("schubert", label="sigma21") == Schubert((2, 1))
    with pytest.raises(KeyError):
        parse_object("conics")


# -- line counts on the fourfold-codimension section --

def test_y2_line_counts_bounded_with_ten_attained():
    counts = {p: count(p, Lines(), Y2).count for p in (3, 5, 7)}
    assert all(c <= 10 for c in counts.values())
    assert counts[5] == 1
    assert count(11, Lines(), Y2).count == 10


def test_y2_contains_no_planes():
    for p in (3, 5):
        assert count(p, Planes22(), Y2).count == 0
        assert count(p, Planes31("planes"), Y2).count == 0


def test_strategies_agree():
    for p in (2, 3):
        flags = count(p, Lines("flags"), Y5).count
        assert count(p, Lines("vertex"), Y5).count == flags
        assert count(p, Lines("planes"), Y5).count == flags
        assert count(p, Planes31("vertex"), Y4).count == count(p, Planes31("planes"), Y4).count


def test_f1_flag_count_from_fiber_dichotomy():
    for p in (2, 3):
        predicted = (gr35(p) - sigma_count(p)) + sigma_count(p) * (p * p + p + 1)
        assert count(p, Lines("flags"), Y5).count == predicted


# -- planes --

@pytest.mark.parametrize("p", [2, 3, 5])
def test_unique_plane_of_lines_in_y4(p):
    res = count(p, Planes22(), Y4, witnesses=True)
    assert res.count == 1
    F = GF(p)
    assert res.witnesses[0].parts[0] == Subspace.coordinate((0, 1, 4), 5, F)


def test_isotropic_planes_of_one_hyperplane():
    report = locus_poly_check(lambda p: EnumSpec(p, Planes22(), Y5), sigma_count, [2, 3, 5])
    assert report["ok"], report
    assert [r["count"] for r in report["rows"]] == [15, 40, 156]


def test_rank_two_fourspaces_contain_kernel():
    report = locus_poly_check(lambda p: EnumSpec(p, SkewRank(4, 2), Y5), sigma_count, [2, 3, 5])
    assert report["ok"]
    res = count(3, SkewRank(4, 2), Y5, witnesses=True, max_witnesses=100)
    assert len(res.witnesses) == 40
    assert all(w.parts[0].contains([0, 0, 0, 0, 1]) for w in res.witnesses)


def test_covector_restrictions_have_full_rank_on_all_fourspaces():
    for p in (2, 3, 5):
        assert count(p, CovectorRank(4, 3), Y3).count == gaussian_binomial(5, 4, p)


def test_mismatch_report_names_first_counterexample():
    report = locus_poly_check(lambda p: EnumSpec(p, Planes22(), Y5), lambda p: sigma_count(p) + 1, [2, 3])
    assert not report["ok"]
    ce = report["counterexample"]
    assert ce["p"] == 2 and ce["count"] == 15 and ce["predicted"] == 16
    assert ce["witness"]["kind"] == "subspace"


def test_fibers_over_fourspace():
    F = GF(3)
    sec = Y4.reduce(3)
    v4 = Subspace.coordinate((0, 1, 2, 4), 5, F)
    info = fibers_over_fourspace(v4, sec)
    assert info["planes"] == [Subspace.coordinate((0, 1, 4), 5, F)]
    assert len(info["points"]) == gaussian_binomial(info["kernel"].dim, 1, 3)


# -- determinism and witnesses --

def test_parallel_partition_gives_same_answer():
    a = count(3, Lines(), Y4, witnesses=True)
    b = count(3, Lines(), Y4, witnesses=True, jobs=3)
    assert a.count == b.count
    assert a.to_json() == b.to_json()


@pytest.mark.parametrize("obj, sec", [
    (Lines("vertex"), Y4), (Lines("planes"), Y4), (Lines("flags"), Y4),
    (Planes31("vertex"), Y4), (Planes31("planes"), Y5), (Planes22(), Y5), (SkewRank(4, 2), Y5),
    (Schubert((2, 1)), Y5),
], ids=lambda x: getattr(x, "name", type(x).__name__))
def test_witnesses_verify_exactly(obj, sec):
    res = count(3, obj, sec, witnesses=True, max_witnesses=30)
    assert res.witnesses
    sec3 = sec.reduce(3)
    assert all(verify_witness(obj, w, sec3) for w in res.witnesses)


def test_tampered_witness_fails_verification():
    sec = Y5.reduce(3)
    w = count(3, Lines(), Y5, witnesses=True, max_witnesses=1).witnesses[0]
    v = w.parts[0].basis.rows[0]
    outside = next(s for s in iter_subspaces(3, 3)
                   if s.contains(v) and any(not sec.contains_line([v, u]) for u in s.basis.rows))
    assert not verify_witness(Lines(), type(w)(w.kind, (w.parts[0], outside)), sec)


# -- Schubert leading terms --

@pytest.mark.parametrize("datum", schubert_table(), ids=lambda d: d.name)
def test_schubert_counts_grow_like_dimension(datum):
    for p in (5, 7):
        c = count(p, Schubert(datum.label), Y6).count
        assert 0.5 < c / p ** datum.dim < 2


# -- point counts --

def test_twisted_cubic_point_count():
    from grascurve.checks import AXIS_TEST_LINE
    model = axis_locus_model(Subspace(AXIS_TEST_LINE))
    _, quadrics = model.cut_by(Y3)
    assert len(quadrics) == 3 and quadrics[0].nvars == 4
    for p in (3, 5, 7):
        assert count_projective_zeros(list(quadrics), p) == p + 1


def test_point_count_of_a_conic():
    from grascurve.forms import HomForm
    q = HomForm.from_terms(3, {(1, 0, 1): 1, (0, 2, 0): 1})
    for p in (3, 5, 7):
        assert count_projective_zeros([q], p) == p + 1


def test_gaussian_binomial_values():
    assert gaussian_binomial(5, 2, 2) == 155
    assert gaussian_binomial(4, 2, 3) == 130
    assert all(gaussian_binomial(5, k, 3) == gaussian_binomial(5, 5 - k, 3) for k in range(6))
