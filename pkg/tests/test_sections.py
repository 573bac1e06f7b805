import random

import pytest
from hypothesis import given, settings, strategies as st

from grascurve.binform import SplittingType, split_cohomology
from grascurve.curves import CurveFamily, curve_in_section
from grascurve.errors import DimensionMismatch, LineNotInSection, NonGenericEnvelope
from grascurve.exact import Subspace
from grascurve.grassmann import random_gl, random_subspace, random_vector, wedge2
from grascurve.interp import pencil_kernel_point
from grascurve.sections import (
    PRESET_NAMES, SectionModel, axis_locus_model, c0_point, conic_in_envelope, incidence_space, is_sigma22_plane,
    normal_bundle_splitting, pencil_family, plane_fiber, section_preset, sigma22_planes, sigma31_planes_at,
    vertex_fiber,
)

Y6, Y5, Y4, Y3, Y2 = (section_preset(n) for n in PRESET_NAMES)


def e(*idx):
    return Subspace.coordinate(idx)


def unit(i):
    return [1 if j == i else 0 for j in range(5)]


def moved(g, v: Subspace) -> Subspace:
    return Subspace([g.apply(r) for r in v.basis.rows])


def test_presets_nested():
    assert [len(section_preset(n)) for n in PRESET_NAMES] == [0, 1, 2, 3, 4]
    assert Y4.hyperplanes == Y3.hyperplanes[:2]
    with pytest.raises(KeyError):
        section_preset("Y7")


def test_custom_fourth_hyperplane():
    sec = section_preset("Y2", h4="p13")
    assert sec.hyperplanes[:3] == Y3.hyperplanes
    assert sec.hyperplanes[3] != Y2.hyperplanes[3]


def test_section_json_round_trip():
    assert SectionModel.from_json(Y3.to_json()) == Y3


# -- vertex fibers --

def test_vertex_fiber_on_full_grassmannian():
    for v in ([1, 2, 3, 4, 5], unit(4)):
        r = vertex_fiber(v, Y6)
        assert r.k == 4 and r.interpretation == "GrassmannFiber(2,4)"


def test_vertex_fiber_unique_line():
    r = vertex_fiber(unit(1), Y4)
    assert r.k == 2 and r.interpretation == "UniquePoint"
    assert r.basis == e(0, 1, 4)
    assert curve_in_section(pencil_family(e(1), r.basis), Y4)


def test_vertex_fiber_on_conic_vertex():
    r = vertex_fiber(unit(0), Y4)
    assert r.k == 3 and r.interpretation == "ProjSpace(2)"


def test_conic_parameterization_has_three_dim_fiber():
    for s, t in ((1, 0), (0, 1), (1, 1), (2, -3)):
        assert vertex_fiber(c0_point(s, t), Y4).k == 3


@pytest.mark.parametrize("sec", [Y6, Y5, Y4, Y3], ids=lambda s: s.name)
def test_vertex_fiber_pencils_lie_in_section(sec):
    rng = random.Random(7)
    for _ in range(6):
        p = random_vector(rng, 5) if rng.random() < 0.5 or len(sec) == 0 else pencil_kernel_point(sec, rng, 2)
        if all(x == 0 for x in p):
            continue
        w = incidence_space(p, sec)
        if w.dim < 3:
            continue
        extra = [r for r in (w.basis.rows) if not Subspace([p]).contains(r)]
        rest = Subspace(extra)
        for _ in range(3):
            combos = [[rng.randint(-4, 4) for _ in rest.basis.rows] for _ in range(2)]
            plane = Subspace([p] + [[sum(c * r[j] for c, r in zip(cs, rest.basis.rows)) for j in range(5)]
                                    for cs in combos])
            if plane.dim == 3:
                assert curve_in_section(pencil_family(Subspace([p]), plane), sec)


# -- plane fibers --

def test_plane_fiber_examples():
    r = plane_fiber(e(0, 1, 2), Y5)
    assert r.interpretation == "UniquePoint" and r.basis == e(0)
    r = plane_fiber(e(0, 1, 4), Y5)
    assert r.interpretation == "ProjSpace(2)" and r.extra["isotropic"]
    assert plane_fiber(e(0, 1, 4), Y4).interpretation == "ProjSpace(2)"


@given(st.integers(0, 10 ** 6))
def test_plane_fiber_dichotomy_on_one_hyperplane(seed):
    v3 = random_subspace(random.Random(seed), 3)
    r = plane_fiber(v3, Y5)
    assert r.interpretation in ("UniquePoint", "ProjSpace(2)")
    assert (r.interpretation == "ProjSpace(2)") == is_sigma22_plane(v3, Y5)


def test_sigma22_examples():
    assert is_sigma22_plane(e(0, 1, 4), Y4)
    assert not is_sigma22_plane(e(0, 1, 2), Y4)
    assert is_sigma22_plane(e(0, 1, 4), Y5)


def test_structural_sigma22_search():
    planes = sigma22_planes(Y5, 20, seed=3)
    assert len(set(planes)) == 20
    assert all(is_sigma22_plane(p, Y5) for p in planes)
    assert all(p.contains(unit(4)) for p in planes)
    with pytest.raises(DimensionMismatch):
        sigma22_planes(Y4, 1)


# -- sigma31 planes --

def test_sigma31_examples():
    r = sigma31_planes_at(unit(1), Y5)
    assert r.interpretation == "UniquePoint" and r.basis == e(0, 1, 3, 4)
    r = sigma31_planes_at(unit(4), Y5)
    assert r.interpretation == "GrassmannFiber(3,4)" and r.dim == 3
    assert sigma31_planes_at(unit(0), Y4).interpretation == "UniquePoint"


# -- conics and the axis model --

def test_conic_in_envelope_on_coordinate_fourspace():
    rep = conic_in_envelope(e(0, 1, 2, 3), Y3)
    assert rep.rank == 3
    assert rep.coordinates == ("p01", "p12", "p23")
    assert repr(rep.form) == "p01*p23 + p12^2"


def test_conic_in_envelope_non_generic():
    # p01 vanishes on the coordinate space <e1..e4>, so the restrictions are dependent
    sec = SectionModel(["p12 - p03", "p13 - p24", "p01"])
    with pytest.raises(NonGenericEnvelope):
        conic_in_envelope(e(1, 2, 3, 4), sec)


def test_no_coordinate_fourspace_is_degenerate_for_three_hyperplanes():
    import itertools
    for q in itertools.combinations(range(5), 4):
        assert conic_in_envelope(e(*q), Y3).rank >= 1


def test_axis_model_coordinates():
    model = axis_locus_model(e(0, 1))
    assert model.span.dim == 7
    assert sorted(model.vanishing_coordinates()) == ["p23", "p24", "p34"]
    assert len(model.quadrics) == 3


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15)
def test_axis_quadrics_vanish_on_meeting_lines(seed):
    rng = random.Random(seed)
    line = random_subspace(rng, 2)
    model = axis_locus_model(line)
    c1, c2 = rng.randint(-5, 5), rng.randint(-5, 5)
    on_line = [c1 * x + c2 * y for x, y in zip(*line.basis.rows)]
    p = wedge2(on_line, random_vector(rng, 5))
    assert model.span.contains(p)
    assert all(q(p) == 0 for q in model.quadrics)


# -- normal bundles --

def test_normal_bundle_on_full_grassmannian():
    assert normal_bundle_splitting((e(0), e(0, 1, 2)), Y6) == SplittingType([1, 1, 1, 0, 0])


def test_normal_bundle_explicit_line_in_one_hyperplane():
    t = normal_bundle_splitting((e(0), e(0, 1, 2)), Y5)
    assert t == SplittingType([1, 1, 0, 0])
    assert split_cohomology(t) == (6, 0)


def _pi_pencil(a1, a4):
    v = [1, a1, 0, 0, a4]
    return Subspace([v]), e(0, 1, 4)


def test_normal_bundle_jumps_on_tangent_lines():
    generic = normal_bundle_splitting(_pi_pencil(0, 1), Y4)
    special = normal_bundle_splitting(_pi_pencil(1, -1), Y4)
    assert generic == SplittingType([1, 0, 0])
    assert special == SplittingType([1, 1, -1])
    assert split_cohomology(generic) == split_cohomology(special) == (4, 0)


def test_line_not_in_section():
    with pytest.raises(LineNotInSection):
        normal_bundle_splitting((e(1), e(1, 2, 3)), Y5)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15)
def test_equivariance_under_change_of_basis(seed):
    rng = random.Random(seed)
    g = random_gl(rng)
    sec = Y4.transform(g)
    p = random_vector(rng, 5)
    if all(x == 0 for x in p):
        return
    assert vertex_fiber(g.apply(p), sec).k == vertex_fiber(p, Y4).k
    v3 = random_subspace(rng, 3)
    assert plane_fiber(moved(g, v3), sec).k == plane_fiber(v3, Y4).k
    v1, plane = _pi_pencil(1, -1)
    assert normal_bundle_splitting((moved(g, v1), moved(g, plane)), sec) == SplittingType([1, 1, -1])


def test_family_transform_matches_section_transform():
    rng = random.Random(1)
    g = random_gl(rng)
    fam = pencil_family(e(0), e(0, 1, 2))
    assert curve_in_section(fam.transform(g), Y5.transform(g))
    assert isinstance(fam, CurveFamily)


def test_reduce_to_prime_field():
    sec = Y3.reduce(5)
    F = sec.field
    assert F.p == 5
    assert sec.contains_line([[F(1), F(0), F(0), F(0), F(0)], [F(0), F(0), F(0), F(0), F(1)]])
    assert not sec.contains_line([[F(0), F(1), F(0), F(0), F(0)], [F(0), F(0), F(1), F(0), F(0)]])
