"""Scripted consistency checks run by ``grascurve verify``.

Each check returns ``(ok, evidence)``; evidence is plain JSON data
(counts, dimensions, splitting types) and never includes timings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .binform import BinForm, PolyMat, minimal_basis, split_cohomology
from .curves import AxisLine, KINDS, SAMPLE_PARAMS, curve_axis, curve_envelope, meets_all, pluecker_degree, random_curve
from .errors import UnknownCheck
from .exact import GF, QQ, Subspace, format_scalar
from .ffenum import (
    CovectorRank,
    EnumSpec,
    Lines,
    Planes22,
    Planes31,
    count_projective_zeros,
    enumerate_count,
    fibers_over_fourspace,
    gaussian_binomial,
    iter_subspaces,
)
from .forms import HomForm
from .grassmann import LABELS, N, random_vector, seeded_rng, skew_restrict, wedge2
from .interp import (
    c0_sampler,
    ideal_compare,
    sigma20_sampler,
    vanishing_forms,
    vertex_condition_minors,
    y3_vertex_sampler,
)
from .sections import (
    PI_PLANE,
    axis_locus_model,
    c0_point,
    conic_in_envelope,
    is_sigma22_plane,
    normal_bundle_splitting,
    plane_fiber,
    section_preset,
    sigma31_planes_at,
    vertex_fiber,
)


@dataclass(frozen=True)
class VerifyCheck:
    id: str
    description: str
    run: Callable[[dict], tuple[bool, dict]]


def _sub_json(s: Subspace):
    return s.to_json()


# -- curves --

def _rand_form(rng, d):
    return BinForm([QQ(rng.randint(-3, 3)) for _ in range(d + 1)], d, QQ)


def check_splitting_identity(cfg):
    """Row degrees of a minimal basis add up to the reduced Plücker degree, also after scrambling."""
    per_kind = {}
    ok = True
    for kind in KINDS.values():
        rng = seeded_rng(cfg["seed"], "splitting", kind)
        good = 0
        for _ in range(200):
            c = random_curve(kind, rng)
            a, b = c._padded_rows()
            d0, d1 = c.split
            # rows' = G·rows with det G = φ^(d1+1-d0)·ψ, so the row module is no longer saturated
            phi, psi = _rand_form(rng, 1), _rand_form(rng, 1)
            while phi.is_zero() or psi.is_zero():
                phi, psi = _rand_form(rng, 1), _rand_form(rng, 1)
            mix = _rand_form(rng, 1)
            top = [phi ** (d1 + 1 - d0) * x + mix * y for x, y in zip(a, b)]
            bottom = [psi * y for y in b]
            forms = wedge2(top, bottom)
            _, split = minimal_basis(PolyMat([top, bottom], QQ))
            if tuple(sorted(split)) == (d0, d1) and sum(split) == pluecker_degree(forms) == c.degree:
                good += 1
        per_kind[kind] = good
        ok &= good == 200
    return ok, {"families_per_kind": 200, "identity_holds": per_kind}


def check_conic_envelope(cfg):
    rng = seeded_rng(cfg["seed"], "envelope")
    good = 0
    for i in range(100):
        c = random_curve("ConeConic" if i % 2 else "ScrollConic", rng)
        env = curve_envelope(c)
        if env.dim == 4 and all(env.contains_subspace(c.line_at(s, t)) for s, t in SAMPLE_PARAMS[:5]):
            good += 1
    return good == 100, {"conics": 100, "envelopes_of_dim_4_containing_lines": good}


def check_cubic_axis(cfg):
    rng = seeded_rng(cfg["seed"], "axis")
    good = 0
    for _ in range(100):
        c = random_curve("ScrollCubic", rng)
        ax = curve_axis(c)
        if isinstance(ax, AxisLine) and meets_all(ax.line, c):
            good += 1
    return good == 100, {"cubics": 100, "axis_meets_all": good}


# -- sections --

def check_unique_sigma22_plane(cfg):
    pi = Subspace.coordinate(PI_PLANE)
    exact = is_sigma22_plane(pi, section_preset("Y4"))
    counts = {}
    ok = exact
    for p in (2, 3, 5, 7):
        res = enumerate_count(EnumSpec(p, Planes22(), section_preset("Y4")), witnesses=True)
        match = res.count == 1 and res.witnesses[0].parts[0] == Subspace.coordinate(PI_PLANE, field=GF(p))
        counts[str(p)] = {"count": res.count, "equals_pi": match}
        ok &= match
    return ok, {"pi": _sub_json(pi), "pi_isotropic": exact, "enumeration": counts}


def _off_c0(v) -> bool:
    return not (v[2] == 0 and v[3] == 0 and v[0] * v[4] + v[1] * v[1] == 0)


def check_vertex_conic(cfg):
    sec = section_preset("Y4")
    rng = seeded_rng(cfg["seed"], "vertex-conic")
    off = []
    while len(off) < 50:
        v = random_vector(rng, N)
        if any(x != 0 for x in v) and _off_c0(v):
            off.append(vertex_fiber(v, sec).k)
    on = []
    for i in range(20):
        s, t = 1 + i % 7, (-1) ** i * (1 + i // 2)
        on.append(vertex_fiber(c0_point(s, t), sec).k)
    ideal = vanishing_forms(c0_sampler(), 2, seed=cfg["seed"])
    a = [HomForm.variable(3, i, names=("a0", "a1", "a4")) for i in range(3)]
    target = a[0] * a[2] + a[1] * a[1]
    rel = ideal_compare(ideal, [target])
    ok = all(k == 2 for k in off) and all(k == 3 for k in on) and rel["relation"] == "equal-span"
    return ok, {"k_off_conic": sorted(set(off)), "k_on_conic": sorted(set(on)),
                "degree_2_ideal": [repr(f) for f in ideal.forms()], "comparison": rel}


def check_line_fibers_over_planes(cfg):
    y5 = section_preset("Y5")
    hist = {}
    consistent = True
    sec = y5.reduce(3)
    for v3 in iter_subspaces(3, 3):
        r = plane_fiber(v3, sec)
        hist[r.interpretation] = hist.get(r.interpretation, 0) + 1
        consistent &= (r.interpretation == "ProjSpace(2)") == is_sigma22_plane(v3, sec)
        consistent &= r.interpretation in ("UniquePoint", "ProjSpace(2)")
    sigma = {}
    ok = consistent and hist.get("ProjSpace(2)") == 40
    for p in (2, 3, 5):
        c = enumerate_count(EnumSpec(p, Planes22(), y5)).count
        sigma[str(p)] = {"count": c, "predicted": p ** 3 + p ** 2 + p + 1}
        ok &= c == p ** 3 + p ** 2 + p + 1
    flags = {}
    for p in (2, 3):
        s = (p + 1) * (p * p + 1)
        want = (gaussian_binomial(N, 3, p) - s) + s * (p * p + p + 1)
        got = {st: enumerate_count(EnumSpec(p, Lines(st), y5)).count for st in ("vertex", "planes", "flags")}
        flags[str(p)] = {"counts": got, "predicted": want}
        ok &= all(v == want for v in got.values())
    return ok, {"plane_fibers_over_F3": hist, "dichotomy_consistent": consistent,
                "isotropic_planes": sigma, "line_flags": flags}


def check_sigma31_planes(cfg):
    sec = section_preset("Y5")
    rng = seeded_rng(cfg["seed"], "sigma31")
    e4 = [0, 0, 0, 0, 1]
    labels = set()
    count = 0
    while count < 50:
        y = random_vector(rng, N)
        if all(x == 0 for x in y) or all(x == 0 for x in y[:4]):
            continue
        r = sigma31_planes_at(y, sec)
        labels.add((r.interpretation, r.dim))
        count += 1
    at = sigma31_planes_at(e4, sec)
    ok = labels == {("UniquePoint", 0)} and at.dim == 3
    return ok, {"generic_points": 50, "generic_fibers": [list(x) for x in sorted(labels)],
                "at_e4": {"interpretation": at.interpretation, "dim": at.dim, "k": at.k}}


def _pencil(v, plane_rows):
    return Subspace([v], N, QQ), Subspace(plane_rows, N, QQ)


def check_normal_bundles(cfg):
    y4 = section_preset("Y4")
    pi_rows = [[1 if j == i else 0 for j in range(N)] for i in PI_PLANE]
    rng = seeded_rng(cfg["seed"], "nbundle")
    off, on = set(), set()
    h_y4 = set()
    n = 0
    while n < 20:
        a1, a4 = rng.randint(-9, 9), rng.randint(-9, 9)
        if a4 + a1 * a1 == 0:
            continue
        t = normal_bundle_splitting(_pencil([1, a1, 0, 0, a4], pi_rows), y4)
        off.add(repr(t))
        h_y4.add(split_cohomology(t))
        n += 1
    for i in range(20):
        a1 = i - 10
        t = normal_bundle_splitting(_pencil([1, a1, 0, 0, -a1 * a1], pi_rows), y4)
        on.add(repr(t))
        h_y4.add(split_cohomology(t))
    y5 = normal_bundle_splitting(_pencil([1, 0, 0, 0, 0], [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]),
                                 section_preset("Y5"))
    h5 = split_cohomology(y5)
    y6 = section_preset("Y6")
    h6 = set()
    for _ in range(20):
        v3 = _random_plane(rng)
        v = v3.basis.rows[0]
        h6.add(split_cohomology(normal_bundle_splitting((Subspace([v], N, QQ), v3), y6)))
    ok = (off == {"{1,0,0}"} and on == {"{1,1,-1}"} and h_y4 == {(4, 0)} and h5 == (6, 0) and h6 == {(8, 0)})
    return ok, {"y4_off_conic": sorted(off), "y4_on_conic": sorted(on), "y4_h0_h1": [list(x) for x in h_y4],
                "y5_line": {"split": repr(y5), "h0": h5[0], "h1": h5[1]}, "y6_h0_h1": [list(x) for x in h6]}


def _random_plane(rng):
    while True:
        s = Subspace([random_vector(rng, N) for _ in range(3)], N, QQ)
        if s.dim == 3:
            return s


# -- interpolation --

def check_axis_cycle_ideal(cfg):
    lin = vanishing_forms(sigma20_sampler(), 1, seed=cfg["seed"])
    p = {name: HomForm.variable(len(LABELS), i, names=LABELS) for i, name in enumerate(LABELS)}
    rel = ideal_compare(lin, [p["p23"], p["p24"], p["p34"]])
    quad = vanishing_forms(sigma20_sampler(), 2, modulo=lin, seed=cfg["seed"])
    ok = lin.dim == 3 and rel["relation"] == "equal-span" and quad.dim == 3
    return ok, {"linear": [repr(f) for f in lin.forms()], "linear_comparison": rel,
                "quadrics_modulo_linear": quad.dim, "quadrics": [repr(f) for f in quad.forms()]}


AXIS_TEST_LINE = ((1, 0, 1, 0, 0), (0, 1, 0, 0, 1))


def check_envelope_conic_and_axis_cubic(cfg):
    rep = conic_in_envelope(Subspace.coordinate(range(4)), section_preset("Y3"))
    # local coordinates (01,02,03,12,13,23); the first hyperplane forces y03 = y12 on the solutions
    tied = all(b[2] == b[3] for b in rep.solution_basis)
    y = {n: HomForm.variable(3, i, names=rep.coordinates) for i, n in enumerate(rep.coordinates)}
    expected = y["p01"] * y["p23"] + y["p12"] * y["p12"] if set(y) == {"p01", "p12", "p23"} else None
    matches = expected is not None and rep.form == expected
    line = Subspace([list(r) for r in AXIS_TEST_LINE], N, QQ)
    _, quadrics = axis_locus_model(line).cut_by(section_preset("Y3"))
    counts = {str(p): count_projective_zeros(list(quadrics), p) for p in (3, 5, 7)}
    ok = rep.rank == 3 and tied and matches and all(c == int(p) + 1 for p, c in counts.items())
    return ok, {"conic": repr(rep.form), "rank": rep.rank, "y03_equals_y12": tied,
                "matches_p01_p23_plus_p03_squared": matches,
                "axis_line": [list(r) for r in AXIS_TEST_LINE], "cubic_point_counts": counts}


def y3_reference_cubics() -> list[HomForm]:
    names = tuple(f"a{i}" for i in range(N))
    a0, a1, a2, a3, a4 = (HomForm.variable(N, i, names=names) for i in range(N))
    return [
        a1 * a2 * a3 + a0 * a3 * a3 - a2 * a2 * a4 + a3 * a4 * a4,
        a2 * a2 * a2 - a1 * a3 * a3 - a2 * a3 * a4,
        a1 * a2 * a2 + a0 * a2 * a3 - a1 * a3 * a4,
        a0 * a2 * a2 + a1 * a1 * a3,
        a1 * a1 * a2 + a0 * a1 * a3 + a0 * a2 * a4,
        a0 * a1 * a2 + a0 * a0 * a3 + a1 * a1 * a4 + a0 * a4 * a4,
        a1 * a1 * a1 - a0 * a0 * a2 + a0 * a1 * a4,
    ]


def check_y3_vertex_cubics(cfg):
    space = vanishing_forms(y3_vertex_sampler(), 3, seed=cfg["seed"])
    with_list = ideal_compare(space, y3_reference_cubics())
    with_minors = ideal_compare(space, vertex_condition_minors(section_preset("Y3")))
    ok = with_list["relation"] == "equal-span" and with_minors["relation"] == "equal-span"
    return ok, {"dim": space.dim, "reference_cubics": with_list, "minors": with_minors}


# -- enumeration --

def check_conic_kernel_rank(cfg):
    sec = section_preset("Y3")
    out = {}
    ok = True
    for q in (2, 3, 5):
        total = gaussian_binomial(N, 4, q)
        c = enumerate_count(EnumSpec(q, CovectorRank(4, 3), sec)).count
        out[str(q)] = {"fourspaces": total, "rank_3": c}
        ok &= c == total
    return ok, out


def check_y2_line_count(cfg):
    sec = section_preset("Y2", h4=cfg.get("h4"))
    out = {}
    counts = []
    planes = 0
    for p in (3, 5, 7, 11):
        spec = EnumSpec(p, Lines(), sec)
        c = enumerate_count(spec, jobs=cfg.get("jobs", 1)).count
        pl = (enumerate_count(EnumSpec(p, Planes22(), sec)).count
              + enumerate_count(EnumSpec(p, Planes31(), sec)).count)
        out[str(p)] = {"lines": c, "planes": pl}
        counts.append(c)
        planes += pl
    ok = all(c <= 10 for c in counts) and 10 in counts and planes == 0
    return ok, {"fourth_covector": [format_scalar(x) for x in sec.hyperplanes[3]], "counts": out}


def check_skew_rank_fourspaces(cfg):
    F = GF(3)
    y5 = section_preset("Y5").reduce(3)
    y4 = section_preset("Y4").reduce(3)
    e4 = [F(0)] * 4 + [F(1)]
    pi = Subspace.coordinate(PI_PLANE, field=F)
    rank_ok = True
    rank2 = 0
    qualifying = 0
    fibers_ok = True
    for v4 in iter_subspaces(4, 3):
        r = skew_restrict(y5.forms[0], v4)[0]
        rank2 += r == 2
        rank_ok &= (r == 2) == v4.contains(e4)
        fib = fibers_over_fourspace(v4, y4)
        if fib["points"] or fib["planes"]:
            qualifying += 1
            k1 = skew_restrict(y4.forms[0], v4)[1]
            k2 = skew_restrict(y4.forms[1], v4)[1]
            fibers_ok &= (v4.contains_subspace(pi) and fib["points"] == [k1.meet(k2)]
                          and fib["planes"] == [k1 + k2])
    contains_pi = sum(1 for v4 in iter_subspaces(4, 3) if v4.contains_subspace(pi))
    ok = rank_ok and fibers_ok and qualifying == contains_pi == 4
    return ok, {"rank_2_iff_contains_e4": rank_ok, "rank_2_count": rank2,
                "y4_qualifying_fourspaces": qualifying, "fourspaces_containing_pi": contains_pi,
                "y4_fibers_are_two_kernel_flags": fibers_ok}


CHECKS = [
    VerifyCheck("splitting-identity", "minimal-basis degrees add up to the reduced Plücker degree",
                check_splitting_identity),
    VerifyCheck("conic-envelope", "conics sweep a 4-dimensional envelope", check_conic_envelope),
    VerifyCheck("cubic-axis", "scroll cubics have an axis meeting every line", check_cubic_axis),
    VerifyCheck("unique-sigma22-plane", "Y4 contains exactly one plane of lines in a fixed plane",
                check_unique_sigma22_plane),
    VerifyCheck("vertex-conic", "Y4 vertices with a plane of lines form the conic a0*a4 + a1^2 = 0",
                check_vertex_conic),
    VerifyCheck("line-fibers-over-planes", "Y5 lines over each plane: one point or the whole plane",
                check_line_fibers_over_planes),
    VerifyCheck("sigma31-planes", "Y5 has one plane of lines through y unless y = e4",
                check_sigma31_planes),
    VerifyCheck("normal-bundles", "splitting types of normal bundles of lines in Y6, Y5, Y4",
                check_normal_bundles),
    VerifyCheck("axis-cycle-ideal", "lines meeting a fixed line span a P6 cut by three quadrics",
                check_axis_cycle_ideal),
    VerifyCheck("envelope-conic-and-axis-cubic", "Y3 conic in a 3-space and twisted cubic over an axis",
                check_envelope_conic_and_axis_cubic),
    VerifyCheck("y3-vertex-cubics", "cubics through the Y3 vertex locus", check_y3_vertex_cubics),
    VerifyCheck("conic-kernel-rank", "Y3 covectors restrict with rank 3 to every 4-space",
                check_conic_kernel_rank),
    VerifyCheck("y2-line-count", "Y2 has at most 10 lines over small primes", check_y2_line_count),
    VerifyCheck("skew-rank-fourspaces", "rank of the Y5 form on 4-spaces and the Y4 plane flags over them",
                check_skew_rank_fourspaces),
]

CHECK_IDS = [c.id for c in CHECKS]


def get_check(check_id: str) -> VerifyCheck:
    for c in CHECKS:
        if c.id == check_id:
            return c
    raise UnknownCheck(check_id)


def run_checks(ids=None, seed: int = 0, h4=None, jobs: int = 1) -> dict:
    """Run the named checks (all by default) and return a JSON-ready report."""
    selected = [get_check(i) for i in ids] if ids else CHECKS
    cfg = {"seed": seed, "h4": h4, "jobs": jobs}
    results = []
    for c in selected:
        try:
            ok, evidence = c.run(cfg)
        except Exception as e:  # a crashing check is reported as a failure, not a usage error
            ok, evidence = False, {"error": f"{type(e).__name__}: {e}"}
        results.append({"id": c.id, "description": c.description, "status": "pass" if ok else "fail",
                        "evidence": evidence})
    return {"checks": results, "ok": all(r["status"] == "pass" for r in results)}
