"""Linear sections of Gr(2,5) and fiber computations on them.

A section is a list of hyperplane covectors on ∧²C⁵.  Each one is also
read as a skew form ω_h with h(a ∧ b) = ω_h(a, b), which turns every
incidence condition below into linear algebra on C⁵.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .binform import BinForm, PolyMat, SplittingType, graded_kernel_splitting, minimal_basis
from .curves import CurveFamily, curve_in_section
from .errors import DimensionMismatch, LineNotInSection, NonGenericEnvelope
from .exact import GF, QQ, Mat, Subspace, format_scalar, rref_kernel
from .forms import HomForm
from .grassmann import (
    LABELS,
    N,
    PAIRS,
    evaluate_covector,
    hyperplane_to_skew,
    parse_covector,
    seeded_rng,
    skew_restrict,
    wedge2,
    wedge2_matrix,
    wedge22,
)

H1 = "p12 - p03"
H2 = "p13 - p24"
H3 = "p14 - p02"
H4_DEFAULT = "p01 - p34"

PRESET_NAMES = ("Y6", "Y5", "Y4", "Y3", "Y2")


class SectionModel:
    """An ordered list of hyperplane covectors with their skew forms."""

    __slots__ = ("name", "hyperplanes", "field", "forms")

    def __init__(self, hyperplanes: Sequence, name: str = "custom", field=QQ):
        hs = tuple(parse_covector(h, field) for h in hyperplanes)
        if len(hs) > 4:
            raise DimensionMismatch("at most four hyperplanes are supported")
        self.name = name
        self.field = field
        self.hyperplanes = hs
        self.forms = tuple(hyperplane_to_skew(h, field) for h in hs)

    def __len__(self):
        return len(self.hyperplanes)

    def __repr__(self):
        return f"SectionModel({self.name}, {len(self)} hyperplanes)"

    def __eq__(self, other):
        return isinstance(other, SectionModel) and self.hyperplanes == other.hyperplanes and self.field is other.field

    def contains_line(self, plane) -> bool:
        p = wedge2(*(plane.basis.rows if isinstance(plane, Subspace) else plane))
        return all(evaluate_covector(h, p) == 0 for h in self.hyperplanes)

    def reduce(self, p: int) -> "SectionModel":
        """The same covectors over GF(p); raises BadReduction on p in a denominator."""
        F = GF(p)
        return SectionModel([[F(c) for c in h] for h in self.hyperplanes], self.name, F)

    def transform(self, g: Mat) -> "SectionModel":
        """Covectors pulled back so that the section of g·L holds iff L was in the original."""
        inv = _inverse(wedge2_matrix(g))
        hs = [[sum((h[k] * inv[k, j] for k in range(len(PAIRS))), self.field.zero) for j in range(len(PAIRS))]
              for h in self.hyperplanes]
        return SectionModel(hs, f"{self.name}^g", self.field)

    def to_json(self):
        return {"name": self.name, "hyperplanes": [[format_scalar(c) for c in h] for h in self.hyperplanes]}

    @classmethod
    def from_json(cls, data, field=QQ) -> "SectionModel":
        if isinstance(data, dict):
            return cls(data["hyperplanes"], data.get("name", "custom"), field)
        return cls(data, "custom", field)


def _inverse(m: Mat) -> Mat:
    n = m.nrows
    aug = Mat([list(r) + [m.field.one if i == j else m.field.zero for j in range(n)] for i, r in enumerate(m.rows)],
              m.field)
    red, piv = aug.rref()
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Mat([r[n:] for r in red.rows], m.field)


def section_preset(name: str, field=QQ, h4=None) -> SectionModel:
    """Named sections Y6 (none) through Y2 (four hyperplanes); ``h4`` overrides the fourth covector."""
    chain = [H1, H2, H3, h4 if h4 is not None else H4_DEFAULT]
    try:
        count = 6 - int(name.upper().lstrip("Y"))
    except ValueError:
        raise KeyError(f"unknown section preset {name!r}") from None
    if not 0 <= count <= 4:
        raise KeyError(f"unknown section preset {name!r}")
    return SectionModel(chain[:count], name.upper(), field)


# -- fiber reports --

@dataclass(frozen=True)
class FiberReport:
    k: int
    basis: Subspace
    interpretation: str
    dim: int  # dimension of the fiber as a variety (-1 when empty)
    extra: dict = dc_field(default_factory=dict, compare=False)

    def to_json(self):
        out = {"k": self.k, "basis": self.basis.to_json(), "interpretation": self.interpretation, "dim": self.dim}
        out.update(self.extra)
        return out


def _grassmann_label(a: int, k: int) -> tuple[str, int]:
    """Label and dimension of Gr(a, k)."""
    if k < a:
        return "Empty", -1
    if k == a:
        return "UniquePoint", 0
    if a == 1 or (a, k) == (2, 3):
        return f"ProjSpace({k - 1})", k - 1
    return f"GrassmannFiber({a},{k})", a * (k - a)


def _as_point(p, field) -> list:
    if isinstance(p, Subspace):
        if p.dim != 1:
            raise DimensionMismatch("expected a point (1-dimensional subspace)")
        return list(p.basis.rows[0])
    vec = [field(x) for x in p]
    if len(vec) != N or all(x == 0 for x in vec):
        raise DimensionMismatch("expected a nonzero vector of length 5")
    return vec


def incidence_space(p, sec: SectionModel) -> Subspace:
    """W = {w : h(p ∧ w) = 0 for all h in the section}; it always contains p."""
    v = _as_point(p, sec.field)
    rows = [f.covector_at(v) for f in sec.forms]
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return Subspace.full(N, sec.field)
    return rref_kernel(Mat(rows, sec.field, ncols=N))[2]


def vertex_fiber(p, sec: SectionModel) -> FiberReport:
    """Lines of the section whose vertex is p: pencils (p, V3) with V3 ⊆ W, i.e. Gr(2, k)."""
    w = incidence_space(p, sec)
    k = w.dim - 1
    label, dim = _grassmann_label(2, k)
    return FiberReport(k, w, label, dim)


def plane_fiber(v3: Subspace, sec: SectionModel) -> FiberReport:
    """Vertices p ∈ V3 for which the pencil (p, V3) lies in the section."""
    if v3.dim != 3:
        raise DimensionMismatch("plane_fiber needs a 3-dimensional subspace")
    if len(sec) == 0:
        raise ValueError("plane_fiber needs at least one hyperplane")
    common = v3
    for f in sec.forms:
        _, rad = skew_restrict(f, v3)
        common = common.meet(rad)
    k = common.dim
    label, dim = _grassmann_label(1, k)
    return FiberReport(k, common, label, dim, {"isotropic": k == 3})


def sigma31_planes_at(y, sec: SectionModel) -> FiberReport:
    """Planes of lines through y inside some V4 ⊆ W: the Grassmannian Gr(3, k) of V4/y."""
    w = incidence_space(y, sec)
    k = w.dim - 1
    label, dim = _grassmann_label(3, k)
    return FiberReport(k, w, label, dim)


def is_sigma22_plane(v3: Subspace, sec: SectionModel) -> bool:
    """Whether every line in P(V3) lies in the section (each ω_h vanishes on V3)."""
    if v3.dim != 3:
        raise DimensionMismatch("expected a 3-dimensional subspace")
    rows = v3.basis.rows
    return all(f.pair(rows[i], rows[j]) == 0 for f in sec.forms for i in range(3) for j in range(i + 1, 3))


def sigma22_planes(sec: SectionModel, count: int, seed=0) -> list[Subspace]:
    """Seeded planes all of whose lines lie in a one-hyperplane section.

    With ω of rank 4 and kernel K, such a V3 contains K and V3/K is a
    Lagrangian plane of V/K: take u, then w with ω(u, w) = 0.
    """
    if len(sec) != 1:
        raise DimensionMismatch("structural search needs exactly one hyperplane")
    f = sec.forms[0]
    if f.rank() != 4:
        raise DimensionMismatch(f"the form has rank {f.rank()}, expected 4")
    kernel = f.kernel()
    rng = seeded_rng(seed)
    out = []
    while len(out) < count:
        u = [sec.field(rng.randint(-9, 9)) for _ in range(N)]
        if kernel.contains(u):
            continue
        perp = rref_kernel(Mat([f.covector_at(u)], sec.field, ncols=N))[2]
        coeffs = [rng.randint(-9, 9) for _ in perp.basis.rows]
        w = [sum((c * r[j] for c, r in zip(coeffs, perp.basis.rows)), sec.field.zero) for j in range(N)]
        plane = kernel + Subspace([u, w], N, sec.field)
        if plane.dim == 3:
            out.append(plane)
    return out


PI_PLANE = (0, 1, 4)  # coordinate indices spanning the plane x2 = x3 = 0


def c0_point(s, t, field=QQ) -> list:
    """Point of the vertex conic in Y4, parameterized as [s² : st : 0 : 0 : -t²]."""
    s, t = field(s), field(t)
    return [s * s, s * t, field.zero, field.zero, -t * t]


# -- conics in an envelope --

@dataclass(frozen=True)
class ConicReport:
    form: HomForm
    rank: int
    coordinates: tuple[str, ...]  # ∧²V4 coordinates chosen as free parameters
    solution_basis: tuple

    def to_json(self):
        return {"form": repr(self.form), "rank": self.rank, "coordinates": list(self.coordinates),
                "gram": self.form.gram().to_json()}


def conic_in_envelope(v4: Subspace, sec: SectionModel) -> ConicReport:
    """Conic cut on Gr(2, V4) ⊂ P(∧²V4) by three section hyperplanes, as a ternary quadric."""
    if v4.dim != 4:
        raise DimensionMismatch("conic_in_envelope needs a 4-dimensional subspace")
    if len(sec) != 3:
        raise DimensionMismatch("conic_in_envelope needs exactly three hyperplanes")
    F = sec.field
    u = v4.basis.rows
    idx = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    rest = Mat([[f.pair(u[i], u[j]) for i, j in idx] for f in sec.forms], F, ncols=6)
    _, rank, ker = rref_kernel(rest)
    if rank != 3:
        raise NonGenericEnvelope(f"restricted hyperplanes have rank {rank} on ∧²V4, expected 3")
    # local Plücker coordinates y_ij on ∧²V4 in the order 01,02,03,12,13,23
    q = HomForm.from_terms(6, {(1, 0, 0, 0, 0, 1): 1, (0, 1, 0, 0, 1, 0): -1, (0, 0, 1, 1, 0, 0): 1}, F)
    basis = ker.basis.rows
    images = [HomForm(3, 1, [basis[c][pos] for c in range(3)], F) for pos in range(6)]
    free = [c for c in range(6) if c not in _pivots(rest)]
    names = tuple(LABELS[PAIRS.index((_coord(v4, idx[c][0]), _coord(v4, idx[c][1])))]
                  if _is_coordinate_space(v4) else f"y{idx[c][0]}{idx[c][1]}" for c in free)
    form = q.linear_substitute(images)
    form = HomForm(3, 2, form.coeffs, F, names)
    return ConicReport(form, form.gram().rank(), names, tuple(basis))


def _pivots(m: Mat) -> list[int]:
    return m.rref()[1]


def _is_coordinate_space(v: Subspace) -> bool:
    return all(sum(1 for x in r if x != 0) == 1 for r in v.basis.rows)


def _coord(v: Subspace, i: int) -> int:
    return v.pivots[i]


# -- the linear span of σ2,0(ℓ) and its quadrics --

@dataclass(frozen=True)
class AxisModel:
    line: Subspace
    span: Subspace  # inside ∧²C⁵
    quadrics: tuple[HomForm, ...]  # in the ten Plücker variables
    section_restrictions: tuple  # covectors restricted to span, in span-basis coordinates

    def vanishing_coordinates(self) -> list[str]:
        ann = self.span.annihilator()
        return [LABELS[j] for r in ann.basis.rows for j in range(len(PAIRS)) if r[j] != 0 and sum(
            1 for x in r if x != 0) == 1]

    def cut_by(self, sec: SectionModel) -> tuple[Subspace, tuple[HomForm, ...]]:
        """Span ∩ ker(section) and the quadrics restricted to it, in its basis coordinates."""
        F = self.span.field
        eqs = list(self.span.annihilator().basis.rows) + [list(h) for h in sec.hyperplanes]
        sub = rref_kernel(Mat(eqs, F, ncols=len(PAIRS)))[2]
        basis = sub.basis.rows
        n = len(basis)
        images = [HomForm(n, 1, [basis[i][k] for i in range(n)], F) for k in range(len(PAIRS))]
        return sub, tuple(q.linear_substitute(images) for q in self.quadrics)


def _base_axis_quadrics(field) -> list[HomForm]:
    """2×2 minors of [[p02,p03,p04],[p12,p13,p14]]."""
    top = ["p02", "p03", "p04"]
    bot = ["p12", "p13", "p14"]
    out = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        e1 = [0] * len(PAIRS)
        e2 = [0] * len(PAIRS)
        e1[LABELS.index(top[a])] += 1
        e1[LABELS.index(bot[b])] += 1
        e2[LABELS.index(top[b])] += 1
        e2[LABELS.index(bot[a])] += 1
        out.append(HomForm.from_terms(len(PAIRS), {tuple(e1): 1, tuple(e2): -1}, field, LABELS))
    return out


def axis_locus_model(line: Subspace, sec: SectionModel | None = None) -> AxisModel:
    """Linear span {p : p ∧ ℓ = 0} of the lines meeting ℓ, with its three defining quadrics."""
    if line.dim != 2:
        raise DimensionMismatch("axis_locus_model needs a 2-dimensional subspace")
    F = line.field
    pl = wedge2(*line.basis.rows)
    rows = []
    for k in range(len(PAIRS)):
        e = [F.zero] * len(PAIRS)
        e[k] = F.one
        rows.append(wedge22(e, pl))
    span = rref_kernel(Mat(rows, F).transpose())[2]
    # g sends e0, e1 to the basis of ℓ; quadrics pulled back through ∧²g⁻¹
    g_cols = list(line.basis.rows) + line.complement_basis()
    g = Mat(g_cols, F).transpose()
    inv = _inverse(wedge2_matrix(g))
    images = [HomForm(len(PAIRS), 1, list(inv.rows[k]), F, LABELS) for k in range(len(PAIRS))]
    quadrics = tuple(q.linear_substitute(images) for q in _base_axis_quadrics(F))
    restr = ()
    if sec is not None:
        basis = span.basis.rows
        restr = tuple(tuple(evaluate_covector(h, b) for b in basis) for h in sec.hyperplanes)
    return AxisModel(line, span, quadrics, restr)


# -- normal bundles of lines --

def pencil_family(v1: Subspace, v3: Subspace) -> CurveFamily:
    """The line of Gr(2,5) made of all lines through the point V1 inside the plane V3."""
    F = v3.field
    v = v1.basis.rows[0]
    u1, u2 = _complement_in(v1, v3)
    row0 = [BinForm.const(x, F) for x in v]
    row1 = [BinForm([a, b], 1, F) for a, b in zip(u1, u2)]
    basis, _ = minimal_basis(PolyMat([row0, row1], F))
    return CurveFamily(basis)


def _complement_in(small: Subspace, big: Subspace) -> list[tuple]:
    cur = small
    out = []
    for r in big.basis.rows:
        nxt = cur + Subspace([r], N, big.field)
        if nxt.dim > cur.dim:
            out.append(r)
            cur = nxt
    return out


def normal_bundle_splitting(z: tuple[Subspace, Subspace], sec: SectionModel) -> SplittingType:
    """Splitting type of the normal bundle of the line z = (V1 ⊂ V3) inside the section.

    In the frame L(s,t) = ⟨v, s·u1 + t·u2⟩ with complement w1, w2 of V3, the
    normal bundle in Gr(2,5) is O(1)⊕O⊕O⊕O(1)⊕O(1) (moving v inside V3, v
    toward w1, w2, the moving point toward w1, w2), and each hyperplane gives
    one map to O(1) by differentiating h(L(s,t)).
    """
    v1, v3 = z
    if v1.dim != 1 or v3.dim != 3 or not v3.contains_subspace(v1):
        raise DimensionMismatch("a line of Gr(2,5) is a flag V1 ⊂ V3 with dims 1 and 3")
    F = sec.field
    fam = pencil_family(v1, v3)
    if not curve_in_section(fam, sec):
        raise LineNotInSection("the pencil is not contained in the section")
    v = fam.mat.coefficient_vectors(0)[0]
    u1, u2 = fam.mat.coefficient_vectors(1)
    w1, w2 = v3.complement_basis()
    sources = [1, 0, 0, 1, 1]
    if len(sec) == 0:
        return SplittingType(sources)
    rows = []
    for f in sec.forms:
        rows.append([
            BinForm.const(-f.pair(u1, u2), F),
            BinForm([f.pair(w1, u1), f.pair(w1, u2)], 1, F),
            BinForm([f.pair(w2, u1), f.pair(w2, u2)], 1, F),
            BinForm.const(f.pair(v, w1), F),
            BinForm.const(f.pair(v, w2), F),
        ])
    return graded_kernel_splitting(PolyMat(rows, F), sources, [1] * len(sec))
