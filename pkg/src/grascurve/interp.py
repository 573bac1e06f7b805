"""Exact interpolation of the forms of degree <= 3 vanishing on a sampled locus."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .errors import DimensionMismatch, UnstableInterpolation
from .exact import QQ, Mat, Subspace, _rref_rows, rref_kernel
from .forms import HomForm, eval_monomials, monomials
from .grassmann import LABELS, N, random_subspace, random_vector, seeded_rng, wedge2
from .sections import PI_PLANE, SectionModel, incidence_space, section_preset


def primitive(vec: Sequence) -> tuple:
    """Projective rescaling of a rational vector to coprime integers, first nonzero entry positive."""
    den = 1
    for c in vec:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    lead = next((x for x in ints if x), 1)
    g = g if lead > 0 else -g
    return tuple(QQ(x // g) for x in ints)


class Sampler:
    """Deterministic generator of exact points on a locus; ``draw(rng)`` returns one point."""

    def __init__(self, name: str, names: Sequence[str], draw: Callable[[random.Random], Sequence]):
        self.name = name
        self.names = tuple(names)
        self._draw = draw

    @property
    def nvars(self) -> int:
        return len(self.names)

    def sample(self, count: int, seed) -> list[tuple]:
        rng = seeded_rng(seed)
        return [primitive(self._draw(rng)) for _ in range(count)]


def gr25_sampler() -> Sampler:
    return Sampler("gr25", LABELS, lambda rng: wedge2(*random_subspace(rng, 2).basis.rows))


def sigma20_sampler(line: Subspace | None = None) -> Sampler:
    """Lines meeting ``line`` (default ⟨e0, e1⟩)."""
    line = line if line is not None else Subspace.coordinate([0, 1])

    def draw(rng):
        while True:
            coeffs = [rng.randint(-9, 9) for _ in line.basis.rows]
            a = [sum((c * r[j] for c, r in zip(coeffs, line.basis.rows)), QQ.zero) for j in range(N)]
            b = random_vector(rng, N)
            p = wedge2(a, b)
            if any(x != 0 for x in p):
                return p

    return Sampler("sigma20", LABELS, draw)


def pencil_kernel_point(sec: SectionModel, rng: random.Random, min_k: int) -> list:
    """A point p with vertex-fiber dimension >= min_k, found as ker(Σ c_h ω_h) for random c.

    p has k >= min_k exactly when the covectors p ↦ ω_h(p, ·) are dependent,
    i.e. when p is in the kernel of some combination of the forms.
    """
    F = sec.field
    while True:
        c = [rng.randint(-9, 9) for _ in sec.forms]
        if all(x == 0 for x in c):
            continue
        om = [[sum((ci * f.omega[i, j] for ci, f in zip(c, sec.forms)), F.zero) for j in range(N)]
              for i in range(N)]
        ker = rref_kernel(Mat(om, F))[2]
        if ker.dim != 1:
            continue
        p = list(ker.basis.rows[0])
        if incidence_space(p, sec).dim - 1 >= min_k:
            return p


def c0_sampler() -> Sampler:
    """Vertices of planes of lines in Y4, in coordinates (a0, a1, a4) of the plane x2 = x3 = 0."""
    sec = section_preset("Y4")

    def draw(rng):
        p = pencil_kernel_point(sec, rng, 3)
        return [p[i] for i in PI_PLANE]

    return Sampler("c0", ("a0", "a1", "a4"), draw)


def y3_vertex_sampler() -> Sampler:
    """Vertices of lines in Y3, as points of P⁴."""
    sec = section_preset("Y3")
    return Sampler("y3-vertex", tuple(f"a{i}" for i in range(N)), lambda rng: pencil_kernel_point(sec, rng, 2))


SAMPLERS = {
    "gr25": gr25_sampler,
    "sigma20": sigma20_sampler,
    "c0": c0_sampler,
    "y3-vertex": y3_vertex_sampler,
}


@dataclass(frozen=True)
class FormSpace:
    nvars: int
    degree: int
    basis: tuple[tuple, ...]  # coefficient vectors over monomials(nvars, degree), RREF
    names: tuple[str, ...]

    @classmethod
    def span(cls, forms: Sequence[HomForm]) -> "FormSpace":
        if not forms:
            raise DimensionMismatch("cannot infer shape of an empty span")
        f0 = forms[0]
        if any((f.nvars, f.degree) != (f0.nvars, f0.degree) for f in forms):
            raise DimensionMismatch("forms of different degree or arity")
        ncols = len(monomials(f0.nvars, f0.degree))
        rows, _ = _rref_rows([list(f.coeffs) for f in forms], ncols)
        return cls(f0.nvars, f0.degree, tuple(tuple(r) for r in rows), f0.names)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def forms(self) -> list[HomForm]:
        return [HomForm(self.nvars, self.degree, b, QQ, self.names) for b in self.basis]

    def subspace(self) -> Subspace:
        return Subspace(self.basis, len(monomials(self.nvars, self.degree)), QQ)

    def to_json(self):
        return {"degree": self.degree, "vars": list(self.names), "dim": self.dim,
                "basis": [repr(f) for f in self.forms()],
                "coefficients": Mat(self.basis, QQ, ncols=len(monomials(self.nvars, self.degree))).to_json()}


def _multiples(space: FormSpace, degree: int) -> list[list]:
    """Coefficient vectors of all products of ``space`` with monomials up to ``degree``."""
    extra = degree - space.degree
    if extra < 0:
        raise DimensionMismatch("modulo space has higher degree than the target")
    index = {e: k for k, e in enumerate(monomials(space.nvars, degree))}
    out = []
    for m in monomials(space.nvars, extra):
        for b in space.basis:
            row = [QQ.zero] * len(index)
            for e, c in zip(monomials(space.nvars, space.degree), b):
                if c != 0:
                    row[index[tuple(x + y for x, y in zip(e, m))]] += c
            out.append(row)
    return out


def vanishing_forms(sampler: Sampler, degree: int, modulo: FormSpace | None = None, seed=0) -> FormSpace:
    """Forms of the given degree vanishing on the sampled locus, certified on a fresh batch."""
    if not 1 <= degree <= 3:
        raise DimensionMismatch("interpolation degree must be 1, 2 or 3")
    mons = monomials(sampler.nvars, degree)
    count = 2 * len(mons)
    pts = sampler.sample(count, ("interp", sampler.name, degree, seed))
    ev = Mat([eval_monomials(p, degree, QQ) for p in pts], QQ, ncols=len(mons))
    ker = rref_kernel(ev)[2]
    fresh = sampler.sample(2 * count, ("confirm", sampler.name, degree, seed))
    for p in fresh:
        vals = eval_monomials(p, degree, QQ)
        for b in ker.basis.rows:
            if sum((c * v for c, v in zip(b, vals) if c != 0), QQ.zero) != 0:
                raise UnstableInterpolation(f"a form fitted on {count} samples fails on a fresh point {p}")
    basis = list(ker.basis.rows)
    if modulo is not None and modulo.dim:
        known = _multiples(modulo, degree)
        red, piv = _rref_rows([list(r) for r in known], len(mons))
        reduced = []
        for b in basis:
            v = list(b)
            for r, pc in zip(red, piv):
                if v[pc] != 0:
                    f = v[pc]
                    v = [x - f * y for x, y in zip(v, r)]
            if any(x != 0 for x in v):
                reduced.append(v)
        basis, _ = _rref_rows(reduced, len(mons)) if reduced else ([], [])
    return FormSpace(sampler.nvars, degree, tuple(tuple(b) for b in basis), sampler.names)


def ideal_compare(f: FormSpace, candidates: Sequence[HomForm]) -> dict:
    """Span comparison of ``f`` with the span of ``candidates``."""
    if any(c.degree != f.degree or c.nvars != f.nvars for c in candidates):
        raise DimensionMismatch("candidate forms must match the degree and variables of the space")
    ncols = len(monomials(f.nvars, f.degree))
    a = f.subspace()
    b = Subspace([c.coeffs for c in candidates], ncols, QQ) if candidates else Subspace.zero(ncols)
    inter = a.meet(b).dim
    if a == b:
        rel = "equal-span"
    elif inter == b.dim:
        rel = "contains"
    elif inter == a.dim:
        rel = "contained-in"
    else:
        rel = "mismatch"
    return {"relation": rel, "dim_space": a.dim, "dim_candidates": b.dim, "dim_intersection": inter}


def vertex_condition_minors(sec: SectionModel) -> list[HomForm]:
    """3×3 minors of the 5×m matrix whose columns are the covectors w ↦ ω_h(a, w), in a0..a4."""
    names = tuple(f"a{i}" for i in range(N))
    cols = []
    for f in sec.forms:
        col = []
        for j in range(N):
            col.append(HomForm(N, 1, [f.omega[i, j] for i in range(N)], QQ, names))
        cols.append(col)
    m = len(cols)
    if m != 3:
        raise DimensionMismatch("minors are defined here for three hyperplanes")
    out = []
    for rows in itertools.combinations(range(N), 3):
        x = [[cols[c][r] for c in range(3)] for r in rows]
        det = (x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1])
               - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
               + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]))
        out.append(det)
    return out

