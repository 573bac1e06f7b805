"""Plücker coordinates on Gr(2,5), skew forms from hyperplanes, Schubert data.

Coordinates are ordered lexicographically, p01, p02, ..., p34, with
p_ij = a_i b_j - a_j b_i for the plane spanned by rows a, b.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, NotDecomposable
from .exact import QQ, Mat, Subspace, common_field, format_scalar, rref_kernel

N = 5
PAIRS: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(N), 2))
PAIR_INDEX = {pr: k for k, pr in enumerate(PAIRS)}
QUADS: tuple[tuple[int, ...], ...] = tuple(itertools.combinations(range(N), 4))
TRIPLES: tuple[tuple[int, ...], ...] = tuple(itertools.combinations(range(N), 3))
LABELS = tuple(f"p{i}{j}" for i, j in PAIRS)


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# (quad index, pair index of first factor, pair index of second factor, sign)
_WEDGE22_TERMS = []
for _q, _quad in enumerate(QUADS):
    for _a in itertools.combinations(_quad, 2):
        _b = tuple(x for x in _quad if x not in _a)
        _WEDGE22_TERMS.append((_q, PAIR_INDEX[_a], PAIR_INDEX[_b], _perm_sign(_a + _b)))


def wedge2(a: Sequence, b: Sequence) -> tuple:
    """Plücker coordinates of a ∧ b.  Entries may be scalars or binary forms."""
    return tuple(a[i] * b[j] - a[j] * b[i] for i, j in PAIRS)


def wedge22(p: Sequence, q: Sequence) -> tuple:
    """The five ∧⁴ components of p ∧ q for p, q in ∧², indexed by 4-subsets in lex order."""
    out = [None] * len(QUADS)
    for k, i, j, sgn in _WEDGE22_TERMS:
        term = p[i] * q[j]
        if sgn < 0:
            term = -term
        out[k] = term if out[k] is None else out[k] + term
    return tuple(out)


def plucker_relations(p: Sequence) -> tuple:
    """The five quadrics p_ij p_kl - p_ik p_jl + p_il p_jk, one per 4-subset."""
    out = []
    for i, j, k, l in QUADS:
        x = PAIR_INDEX
        out.append(p[x[i, j]] * p[x[k, l]] - p[x[i, k]] * p[x[j, l]] + p[x[i, l]] * p[x[j, k]])
    return tuple(out)


def wedge3(a: Sequence, b: Sequence, c: Sequence) -> tuple:
    """Plücker coordinates of a 3-plane, one 3×3 minor per 3-subset in lex order."""
    out = []
    for i, j, k in TRIPLES:
        out.append(a[i] * (b[j] * c[k] - b[k] * c[j])
                   - a[j] * (b[i] * c[k] - b[k] * c[i])
                   + a[k] * (b[i] * c[j] - b[j] * c[i]))
    return tuple(out)


def wedge2_matrix(g: Mat) -> Mat:
    """The induced action of g on ∧²: column (kl) holds the coordinates of g e_k ∧ g e_l."""
    cols = [wedge2([g[r, k] for r in range(N)], [g[r, l] for r in range(N)]) for k, l in PAIRS]
    return Mat(cols, g.field).transpose()


def _canonical_coords(coords, field):
    if field is QQ:
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in coords]
        g = 0
        for x in ints:
            g = gcd(g, x)
        lead = next(x for x in ints if x != 0)
        g = g if lead > 0 else -g
        return tuple(QQ(x // g) for x in ints)
    lead = next(c for c in coords if c != 0)
    inv = lead.inverse()
    return tuple(c * inv for c in coords)


class PlueckerVector:
    """A point of P(∧²C⁵), stored in canonical scaling so equality is syntactic."""

    __slots__ = ("coords", "field")

    def __init__(self, coords: Sequence, field=None):
        if len(coords) != len(PAIRS):
            raise DimensionMismatch(f"need {len(PAIRS)} Plücker coordinates, got {len(coords)}")
        field = common_field(coords, default=field)
        vals = [field(c) for c in coords]
        if all(c == 0 for c in vals):
            raise ValueError("the zero vector is not a projective point")
        self.field = field
        self.coords = _canonical_coords(vals, field)

    def __eq__(self, other):
        return isinstance(other, PlueckerVector) and self.field is other.field and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __getitem__(self, key):
        if isinstance(key, str):
            key = LABELS.index(key)
        elif isinstance(key, tuple):
            i, j = key
            if i > j:
                return -self.coords[PAIR_INDEX[j, i]]
            if i == j:
                return self.field.zero
            key = PAIR_INDEX[i, j]
        return self.coords[key]

    def __repr__(self):
        return "PlueckerVector(" + ", ".join(format_scalar(c) for c in self.coords) + ")"

    def is_decomposable(self) -> bool:
        return all(r == 0 for r in plucker_relations(self.coords))

    def to_json(self):
        return [format_scalar(c) for c in self.coords]


def _plane_rows(plane) -> tuple[Sequence, Sequence]:
    if isinstance(plane, Subspace):
        if plane.dim != 2 or plane.ambient_dim != N:
            raise DimensionMismatch(f"expected a 2-plane in dimension {N}, got dim {plane.dim}")
        return plane.basis.rows
    rows = list(plane)
    if len(rows) != 2:
        raise DimensionMismatch("expected two spanning vectors")
    return rows


def pluecker_embed(plane) -> PlueckerVector:
    """Plücker point of a 2-plane given as a Subspace or two independent vectors."""
    a, b = _plane_rows(plane)
    if isinstance(plane, Subspace):
        return PlueckerVector(wedge2(a, b), plane.field)
    field = common_field(list(a) + list(b))
    a = [field(x) for x in a]
    b = [field(x) for x in b]
    coords = wedge2(a, b)
    if all(c == 0 for c in coords):
        raise DimensionMismatch("spanning vectors are dependent")
    return PlueckerVector(coords, field)


def skew_matrix_rows(coords: Sequence, field) -> list[list]:
    m = [[field.zero] * N for _ in range(N)]
    for (i, j), c in zip(PAIRS, coords):
        c = field(c)
        m[i][j] = c
        m[j][i] = -c
    return m


def pluecker_split(v: PlueckerVector) -> Subspace:
    """The 2-plane whose Plücker point is ``v``; rows of the skew matrix of v span it."""
    if not v.is_decomposable():
        raise NotDecomposable(f"{v!r} violates a Plücker relation")
    return Subspace(skew_matrix_rows(v.coords, v.field), N, v.field)


def lines_incident(a: Subspace, b: Subspace) -> bool:
    """Whether two lines of P⁴ meet, via the vanishing of the ∧⁴ wedge."""
    pa = wedge2(*_plane_rows(a))
    pb = wedge2(*_plane_rows(b))
    return all(x == 0 for x in wedge22(pa, pb))


class SkewForm:
    """Alternating bilinear form on the 5-space, ω(u, v) = uᵀ Ω v."""

    __slots__ = ("omega",)

    def __init__(self, omega: Mat):
        if omega.shape != (N, N):
            raise DimensionMismatch("skew form must be 5×5")
        for i in range(N):
            if omega[i, i] != 0:
                raise ValueError("skew form has nonzero diagonal")
            for j in range(i + 1, N):
                if omega[i, j] != -omega[j, i]:
                    raise ValueError("matrix is not antisymmetric")
        self.omega = omega

    @property
    def field(self):
        return self.omega.field

    def pair(self, u: Sequence, v: Sequence):
        f = self.field
        om = self.omega.rows
        return sum((f(u[i]) * om[i][j] * f(v[j]) for i in range(N) for j in range(N) if om[i][j] != 0), f.zero)

    def covector_at(self, u: Sequence) -> tuple:
        """The linear form w ↦ ω(u, w)."""
        f = self.field
        om = self.omega.rows
        return tuple(sum((f(u[i]) * om[i][j] for i in range(N)), f.zero) for j in range(N))

    def rank(self) -> int:
        return self.omega.rank()

    def kernel(self) -> Subspace:
        return self.omega.kernel()

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.omega == other.omega

    def __repr__(self):
        return f"SkewForm({self.omega.to_json()})"


def hyperplane_to_skew(h: Sequence, field=None) -> SkewForm:
    """Skew form whose pairing on (a, b) equals h evaluated on a ∧ b."""
    field = common_field(h, default=field)
    return SkewForm(Mat(skew_matrix_rows(h, field), field))


def restricted_gram(f: SkewForm, v: Subspace) -> Mat:
    rows = v.basis.rows
    return Mat([[f.pair(a, b) for b in rows] for a in rows], f.field, ncols=len(rows))


def skew_restrict(f: SkewForm, v: Subspace) -> tuple[int, Subspace]:
    """Rank of ω on ``v`` and its radical, as a subspace of the ambient space."""
    if v.dim == 0:
        return 0, v
    gram = restricted_gram(f, v)
    _, rank, ker = rref_kernel(gram)
    basis = v.basis.rows
    vecs = [[sum((c * basis[k][j] for k, c in enumerate(coef)), f.field.zero) for j in range(N)]
            for coef in ker.basis.rows]
    return rank, Subspace(vecs, N, f.field)


def evaluate_covector(h: Sequence, p: Sequence):
    total = None
    for c, x in zip(h, p):
        if c != 0:
            term = x * c
            total = term if total is None else total + term
    return total if total is not None else 0 * p[0]


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*p([0-4])([0-4])\s*")


def parse_covector(spec, field=QQ) -> tuple:
    """A covector given as 10 numbers or an expression such as ``"p12 - p03"``."""
    if isinstance(spec, str) and "p" in spec:
        coeffs = [field.zero] * len(PAIRS)
        pos = 0
        text = spec.strip()
        while pos < len(text):
            m = _TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse covector expression {spec!r}")
            sign, num, i, j = m.groups()
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"p{i}{j} is not a Plücker coordinate")
            c = field(num or 1) * (-1 if sign == "-" else 1)
            if i > j:
                i, j, c = j, i, -c
            coeffs[PAIR_INDEX[i, j]] += c
            pos = m.end()
        return tuple(coeffs)
    if isinstance(spec, str):
        spec = spec.split(",")
    vals = [field(x) for x in spec]
    if len(vals) != len(PAIRS):
        raise DimensionMismatch(f"covector needs {len(PAIRS)} entries, got {len(vals)}")
    return tuple(vals)


# -- Schubert cycles for the flag <e0> ⊂ <e0,e1> ⊂ <e0,e1,e2> ⊂ <e0,..,e3> --

@dataclass(frozen=True)
class SchubertDatum:
    label: tuple[int, int]
    dim: int
    deg: int
    # (k, m): the line meets the k-dimensional flag piece in at least m dimensions
    conditions: tuple[tuple[int, int], ...]

    @property
    def name(self) -> str:
        return f"sigma{self.label[0]}{self.label[1]}"

    def flag_piece(self, k: int, field=QQ) -> Subspace:
        return Subspace.coordinate(range(k), N, field)

    def contains(self, plane: Subspace) -> bool:
        return all(plane.meet(self.flag_piece(k, plane.field)).dim >= m for k, m in self.conditions)


_SCHUBERT = (
    SchubertDatum((1, 0), 5, 5, ((3, 1),)),
    SchubertDatum((2, 0), 4, 3, ((2, 1),)),
    SchubertDatum((1, 1), 4, 2, ((4, 2),)),
    SchubertDatum((2, 1), 3, 2, ((2, 1), (4, 2))),
    SchubertDatum((3, 0), 3, 1, ((1, 1),)),
    SchubertDatum((2, 2), 2, 1, ((3, 2),)),
    SchubertDatum((3, 1), 2, 1, ((1, 1), (4, 2))),
    SchubertDatum((3, 2), 1, 1, ((1, 1), (3, 2))),
)


def schubert_table() -> list[SchubertDatum]:
    return list(_SCHUBERT)


def schubert_lookup(label) -> SchubertDatum:
    if isinstance(label, str):
        digits = re.sub(r"[^0-9]", "", label)
        label = (int(digits[0]), int(digits[1]))
    for d in _SCHUBERT:
        if d.label == tuple(label):
            return d
    raise KeyError(f"no Schubert cycle labeled {label}")


def seeded_rng(*parts) -> random.Random:
    """RNG keyed by ``parts``; string seeding keeps streams identical across processes."""
    if len(parts) == 1 and isinstance(parts[0], random.Random):
        return parts[0]
    return random.Random("/".join(str(p) for p in parts))


def random_vector(rng: random.Random, support: int, field=QQ, bound: int = 9) -> list:
    """Random vector supported on the first ``support`` coordinates with small integer entries."""
    return [field(rng.randint(-bound, bound)) if i < support else field.zero for i in range(N)]


def schubert_sample(d: SchubertDatum, seed, field=QQ) -> Subspace:
    """A random plane in the cycle: one vector from each constrained flag piece."""
    rng = seeded_rng(seed)
    first = d.conditions[0][0]
    second = next((k for k, m in d.conditions if m == 2), N)
    if d.conditions[0][1] == 2:
        first = second
    while True:
        a = random_vector(rng, first, field)
        b = random_vector(rng, second, field)
        plane = Subspace([a, b], N, field)
        if plane.dim == 2 and d.contains(plane):
            return plane


def random_subspace(rng: random.Random, k: int, field=QQ, bound: int = 9) -> Subspace:
    while True:
        s = Subspace([random_vector(rng, N, field, bound) for _ in range(k)], N, field)
        if s.dim == k:
            return s


def random_gl(rng: random.Random, field=QQ, bound: int = 3) -> Mat:
    while True:
        g = Mat([random_vector(rng, N, field, bound) for _ in range(N)], field)
        if g.rank() == N:
            return g


