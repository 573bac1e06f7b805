"""Rational curves of degree at most 3 in Gr(2,5), given as pencils of rows.

A family is a 2×5 matrix of binary forms with row degrees d0 <= d1; the
line over (s:t) is the span of the two rows evaluated there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .binform import BinForm, PolyMat, SplittingType, forms_gcd, minimal_basis
from .errors import DegenerateConic, DegenerateFamily, DimensionMismatch, OutOfScopeDegree, WrongDegree
from .exact import QQ, Mat, Subspace, rref_kernel
from .grassmann import N, PlueckerVector, TRIPLES, evaluate_covector, wedge2, wedge22, wedge3

KINDS = {
    (0, 1): "Line",
    (0, 2): "ConeConic",
    (1, 1): "ScrollConic",
    (0, 3): "ConeCubic",
    (1, 2): "ScrollCubic",
}

# parameter values used for the injectivity heuristic and for spot checks
SAMPLE_PARAMS = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (1, 3), (3, -1))


class CurveFamily:
    """A base-point-free, injective rational curve in Gr(2,5) of degree d0 + d1."""

    __slots__ = ("mat", "split", "field", "_pluecker")

    def __init__(self, mat: PolyMat, check_injective: bool = True):
        if mat.nrows != 2 or mat.ncols != N:
            raise DimensionMismatch(f"a curve family is a 2x{N} matrix, got {mat.nrows}x{mat.ncols}")
        degs = mat.row_degrees
        if degs[0] > degs[1]:
            mat = PolyMat([mat.rows[1], mat.rows[0]])
            degs = (degs[1], degs[0])
        self.mat = mat
        self.field = mat.field
        self.split = degs
        forms = wedge2(*self._padded_rows())
        g = forms_gcd(forms)
        if g is None:
            raise DegenerateFamily("rows are dependent: every Plücker minor vanishes")
        if g.deg > 0:
            raise DegenerateFamily(f"base point: the Plücker minors share the factor {g!r}")
        self._pluecker = forms
        if check_injective and sum(degs) > 1:
            seen = set()
            for (s, t), pt in zip(SAMPLE_PARAMS, _projective_images(forms, self.field)):
                if pt in seen:
                    raise DegenerateFamily(f"the map is not injective: repeated line at ({s}:{t})")
                seen.add(pt)

    def _padded_rows(self):
        out = []
        for r, d in zip(self.mat.rows, self.split):
            out.append([f if not f.is_zero() else BinForm.zero(d, self.field) for f in r])
        return out

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ) -> "CurveFamily":
        """Rows of BinForms, or nested coefficient lists (ascending in t) per entry."""
        built = []
        for r in rows:
            entries = [e if isinstance(e, BinForm) else None for e in r]
            if all(e is not None for e in entries):
                built.append(entries)
                continue
            degs = {len(e) - 1 for e in r if not isinstance(e, BinForm) and not _is_zero_entry(e)}
            degs |= {e.deg for e in r if isinstance(e, BinForm) and not e.is_zero()}
            d = degs.pop() if degs else 0
            built.append([e if isinstance(e, BinForm) else
                          (BinForm.zero(d, field) if _is_zero_entry(e) else BinForm(e, field=field)) for e in r])
        return cls(PolyMat(built, field))

    @classmethod
    def reduced(cls, mat: PolyMat) -> "CurveFamily":
        """The family spanned by ``mat`` after passing to a minimal basis."""
        basis, _ = minimal_basis(mat)
        return cls(basis)

    @property
    def degree(self) -> int:
        return sum(self.split)

    def pluecker_forms(self) -> tuple[BinForm, ...]:
        return self._pluecker

    def line_at(self, s, t) -> Subspace:
        m = self.mat.evaluate(self.field(s), self.field(t))
        return Subspace(m.rows, N, self.field)

    def reparametrize(self, a, b, c, d) -> "CurveFamily":
        """Substitute (s, t) <- (a s + b t, c s + d t)."""
        rows = [[f.substitute(a, b, c, d) for f in r] for r in self._padded_rows()]
        return CurveFamily(PolyMat(rows, self.field))

    def transform(self, g: Mat) -> "CurveFamily":
        """Apply a linear map of C⁵ to every line of the family."""
        rows = []
        for r in self._padded_rows():
            rows.append([sum((f * g[i, j] for j, f in enumerate(r)), BinForm.zero(r[0].deg, self.field))
                         for i in range(N)])
        return CurveFamily(PolyMat(rows, self.field))

    def __eq__(self, other):
        return isinstance(other, CurveFamily) and self.mat == other.mat

    def __repr__(self):
        return f"CurveFamily({self.mat!r})"

    def to_json(self):
        return {"rows": [[f.to_json() for f in r] for r in self._padded_rows()]}

    @classmethod
    def from_json(cls, data, field=QQ) -> "CurveFamily":
        return cls(PolyMat.from_json(data, field))


def _projective_images(forms, field):
    """Canonical projective points of the Plücker vector at SAMPLE_PARAMS."""
    if field is not QQ:
        return [PlueckerVector([f(s, t) for f in forms], field) for s, t in SAMPLE_PARAMS]
    den = 1
    for f in forms:
        for c in f.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
    int_forms = [[int(c * den) for c in f.coeffs] for f in forms]
    out = []
    for s, t in SAMPLE_PARAMS:
        vals = []
        for cs in int_forms:
            acc, tp = (cs[0], 1) if cs else (0, 1)
            for c in cs[1:]:
                tp *= t
                acc = acc * s + c * tp
            vals.append(acc)
        g = 0
        for v in vals:
            g = gcd(g, v)
        lead = next(v for v in vals if v)
        g = g if lead > 0 else -g
        out.append(tuple(v // g for v in vals))
    return out


def _is_zero_entry(e) -> bool:
    if not isinstance(e, (list, tuple)):
        return e == 0
    return all(x == 0 for x in e)


@dataclass(frozen=True)
class CurveClass:
    degree: int
    split: tuple[int, int]
    kind: str

    def to_json(self):
        return {"degree": self.degree, "split": list(self.split), "kind": self.kind}


class _NoVertex:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NoVertex"

    def __bool__(self):
        return False


NoVertex = _NoVertex()


@dataclass(frozen=True)
class AxisLine:
    line: Subspace


@dataclass(frozen=True)
class ConeWithVertex:
    vertex: Subspace


def curve_classify(c: CurveFamily) -> CurveClass:
    if c.degree > 3:
        raise OutOfScopeDegree(f"degree {c.degree} is beyond the supported range")
    if c.degree == 0:
        raise DegenerateFamily("constant family")
    return CurveClass(c.degree, c.split, KINDS[c.split])


def _vertex_equations(c: CurveFamily) -> list[list]:
    """Rows of the linear system in v expressing v ∧ a(s,t) ∧ b(s,t) ≡ 0."""
    a, b = c._padded_rows()
    f = c.field
    per_basis = []
    for k in range(N):
        e = [BinForm.zero(0, f) for _ in range(N)]
        e[k] = BinForm.const(f.one, f)
        per_basis.append(wedge3(e, a, b))
    eqs = []
    for ti in range(len(TRIPLES)):
        deg = c.degree
        for idx in range(deg + 1):
            row = [per_basis[k][ti].coeffs[idx] if not per_basis[k][ti].is_zero() else f.zero for k in range(N)]
            if any(x != 0 for x in row):
                eqs.append(row)
    return eqs


def curve_vertex(c: CurveFamily):
    """The common point of all lines of the family, or ``NoVertex``."""
    eqs = _vertex_equations(c)
    if not eqs:
        raise DegenerateFamily("constant family has no well-defined vertex")
    ker = rref_kernel(Mat(eqs, c.field, ncols=N))[2]
    if ker.dim == 0:
        return NoVertex
    if ker.dim > 1:
        raise DegenerateFamily("all lines coincide")
    return ker


def _row_coefficient_vectors(c: CurveFamily) -> list[tuple]:
    return [v for i in range(2) for v in c.mat.coefficient_vectors(i)]


def curve_envelope(c: CurveFamily) -> Subspace:
    """The 3-space (a 4-dimensional subspace) swept by the lines of a conic."""
    if c.degree != 2:
        raise WrongDegree(f"envelope is defined for conics, got degree {c.degree}")
    span = Subspace(_row_coefficient_vectors(c), N, c.field)
    if span.dim != 4:
        raise DegenerateConic(f"lines span a subspace of dimension {span.dim}, expected 4")
    return span


def meets_all(line: Subspace, c: CurveFamily) -> bool:
    """Whether ``line`` meets every line of the family, as an identity in (s, t)."""
    if line.dim != 2:
        raise DimensionMismatch("meets_all needs a 2-dimensional subspace")
    pl = wedge2(*line.basis.rows)
    return all(f.is_zero() for f in wedge22(pl, c.pluecker_forms()))


def curve_axis(c: CurveFamily):
    """Axis of a twisted cubic: the line swept by the degree-1 row, or the cone vertex."""
    if c.degree != 3:
        raise WrongDegree(f"axis is defined for cubics, got degree {c.degree}")
    if c.split == (0, 3):
        v = curve_vertex(c)
        return ConeWithVertex(v)
    axis = Subspace(c.mat.coefficient_vectors(0), N, c.field)
    if axis.dim != 2 or not meets_all(axis, c):
        raise DegenerateFamily("degree-1 row does not sweep a line meeting the family")
    return AxisLine(axis)


@dataclass(frozen=True)
class Cone:
    point: Sequence
    directrix: Sequence


@dataclass(frozen=True)
class Scroll:
    row0: Sequence
    row1: Sequence


def scroll_curve(spec, field=QQ) -> CurveFamily:
    """Family of lines joining a point to a curve (Cone) or two curves in step (Scroll)."""
    if isinstance(spec, Cone):
        point = [BinForm.const(x, field) for x in spec.point]
        rows = [point, list(spec.directrix)]
    elif isinstance(spec, Scroll):
        rows = [list(spec.row0), list(spec.row1)]
    else:
        raise TypeError("expected Cone or Scroll")
    fam = CurveFamily.from_rows(rows, field)
    if fam.degree > 3:
        raise OutOfScopeDegree(f"degree {fam.degree} is beyond the supported range")
    return fam


def curve_in_section(c: CurveFamily, sec) -> bool:
    """Whether every hyperplane of ``sec`` vanishes identically on the family."""
    forms = c.pluecker_forms()
    for h in sec.hyperplanes:
        val = evaluate_covector(h, forms)
        if not val.is_zero():
            return False
    return True


def random_row(rng: random.Random, deg: int, field=QQ, bound: int = 5, support: int = N) -> list[BinForm]:
    return [BinForm([field(rng.randint(-bound, bound)) for _ in range(deg + 1)], deg, field)
            if i < support else BinForm.zero(deg, field) for i in range(N)]


def random_curve(kind: str, rng: random.Random, field=QQ, bound: int = 5) -> CurveFamily:
    """A random valid family of the given kind with small integer coefficients."""
    split = next(k for k, v in KINDS.items() if v == kind)
    while True:
        rows = [random_row(rng, split[0], field, bound), random_row(rng, split[1], field, bound)]
        try:
            return CurveFamily(PolyMat(rows, field))
        except DegenerateFamily:
            continue


def pluecker_degree(forms: Sequence[BinForm]) -> int:
    """Degree of the Plücker form vector after removing the common factor."""
    g = forms_gcd(forms)
    if g is None:
        raise DegenerateFamily("all Plücker minors vanish")
    f = next(f for f in forms if not f.is_zero())
    return f.deg - g.deg


def splitting_of(mat: PolyMat) -> SplittingType:
    return minimal_basis(mat)[1]
