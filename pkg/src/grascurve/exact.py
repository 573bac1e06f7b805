"""Exact scalars and dense linear algebra over QQ and prime fields GF(p).

Rationals are ``gmpy2.mpq`` values (exact, GMP-backed).  Prime-field
elements are :class:`GFElement` instances carrying their modulus, so the
same elimination code runs over either field through ordinary operators.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq, mpz
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BadReduction, DimensionMismatch, FieldMismatch

__all__ = [
    "QQ",
    "GF",
    "GFElement",
    "RationalField",
    "PrimeField",
    "field_of",
    "parse_scalar",
    "format_scalar",
    "Mat",
    "rref_kernel",
    "Subspace",
    "subspace_meet",
    "subspace_sum",
]


_MPQ = type(mpq(0))
_RATIONAL_TYPES = (_MPQ, type(mpz(0)), Fraction)


class GFElement:
    """Element of GF(p), stored as its canonical representative in [0, p)."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, _RATIONAL_TYPES) and other.denominator == 1:
            return int(other.numerator)
        raise FieldMismatch(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return GFElement(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return GFElement(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return GFElement(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return GFElement(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "GFElement":
        if self.v == 0:
            raise ZeroDivisionError(f"zero has no inverse in GF({self.p})")
        return GFElement(pow(self.v, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        o = GFElement(self._coerce(other), self.p)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GFElement(self._coerce(other), self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GFElement(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        try:
            return (self.v - self._coerce(other)) % self.p == 0
        except FieldMismatch:
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"GF{self.p}({self.v})"


class RationalField:
    name = "QQ"
    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, x):
        if type(x) is _MPQ:
            return x
        if isinstance(x, GFElement):
            raise FieldMismatch("cannot lift a GF(p) element to QQ")
        if isinstance(x, str):
            return mpq(Fraction(x.strip()))
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        return mpq(x)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or p >= 2**31 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime below 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def __call__(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element used as GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, _RATIONAL_TYPES):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise BadReduction(f"{x} is not {self.p}-integral")
            return GFElement(num * pow(den, -1, self.p), self.p)
        return GFElement(int(x), self.p)

    def elements(self):
        return [GFElement(v, self.p) for v in range(self.p)]

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (GF, (self.p,))


QQ = RationalField()


def _rational_field():
    return QQ


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_of(x):
    if isinstance(x, GFElement):
        return GF(x.p)
    if isinstance(x, (int,) + _RATIONAL_TYPES):
        return QQ
    raise FieldMismatch(f"not a field scalar: {x!r}")


def common_field(values: Iterable, default=None):
    """The single field all ``values`` live in; plain ints defer to the others."""
    field = None
    for x in values:
        if isinstance(x, GFElement):
            f = GF(x.p)
        elif isinstance(x, _RATIONAL_TYPES) and x.denominator != 1:
            f = QQ
        elif isinstance(x, (int,) + _RATIONAL_TYPES):
            continue
        else:
            raise FieldMismatch(f"not a field scalar: {x!r}")
        if field is None:
            field = f
        elif field is not f:
            raise FieldMismatch(f"{field!r} vs {f!r}")
    return field if field is not None else (default if default is not None else QQ)


def parse_scalar(s, field=QQ):
    """Parse ``"num/den"`` strings (or ints) into ``field``."""
    return field(s)


def format_scalar(x) -> str:
    if isinstance(x, GFElement):
        return str(x.v)
    x = QQ(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Mat:
    """Immutable dense matrix over QQ or GF(p)."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Iterable[Sequence], field=None, ncols: int | None = None):
        raw = [list(r) for r in rows]
        if raw:
            ncols_seen = len(raw[0])
            if any(len(r) != ncols_seen for r in raw):
                raise DimensionMismatch("ragged matrix rows")
            if ncols is not None and ncols != ncols_seen:
                raise DimensionMismatch("declared column count disagrees with rows")
            ncols = ncols_seen
        elif ncols is None:
            ncols = 0
        inferred = common_field((x for r in raw for x in r), default=field)
        if field is not None and inferred is not field:
            raise FieldMismatch(f"entries live in {inferred!r}, matrix declared over {field!r}")
        field = inferred
        self.field = field
        self.rows = tuple(tuple(field(x) for x in r) for r in raw)
        self.nrows = len(self.rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Mat":
        return cls([[field.one if i == j else field.zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, m: int, n: int, field=QQ) -> "Mat":
        return cls([[field.zero] * n for _ in range(m)], field, ncols=n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field is other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Mat[{self.field!r}]({body})"

    def _check_field(self, other: "Mat"):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                   self.field, ncols=self.nrows)

    T = property(transpose)

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        zero = self.field.zero
        out = [[sum((a * b for a, b in zip(r, c)), zero) for c in cols] for r in self.rows]
        return Mat(out, self.field, ncols=other.ncols)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field,
                   ncols=self.ncols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows], self.field, ncols=self.ncols)

    def scale(self, c) -> "Mat":
        c = self.field(c)
        return Mat([[c * a for a in r] for r in self.rows], self.field, ncols=self.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack with different column counts")
        return Mat(self.rows + other.rows, self.field, ncols=self.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v`` for a plain sequence ``v``."""
        zero = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, v)), zero) for r in self.rows)

    def rref(self) -> tuple["Mat", list[int]]:
        rows, pivots = _rref_rows([list(r) for r in self.rows], self.ncols)
        return Mat(rows, self.field, ncols=self.ncols), pivots

    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self.rows], self.ncols)[1])

    def kernel(self) -> "Subspace":
        return rref_kernel(self)[2]

    def to_json(self):
        return [[format_scalar(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data, field=QQ) -> "Mat":
        return cls([[field(x) for x in r] for r in data], field)


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form, pivoting on the leftmost column, first nonzero row."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c] if not isinstance(pr[c], GFElement) else pr[c].inverse()
        if pr[c] != 1:
            pr = rows[r] = [x * inv for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    ri = rows[i]
                    rows[i] = [a - f * b for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref_kernel(m: Mat) -> tuple[Mat, int, "Subspace"]:
    """Return ``(rref, rank, kernel)`` of ``m``.

    The kernel basis is the standard one read off the free columns, which is
    already in RREF after sorting, so the returned Subspace is canonical.
    """
    if m.nrows == 0 and m.ncols == 0:
        raise DimensionMismatch("rref_kernel of an empty matrix")
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    field = m.field
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    kernel_rows = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        kernel_rows.append(v)
    rref = Mat(rows, field, ncols=m.ncols)
    return rref, len(pivots), Subspace(kernel_rows, m.ncols, field)


class Subspace:
    """Linear subspace of ``field^ambient_dim`` held by its RREF basis.

    Two Subspaces spanning the same space compare equal.
    """

    __slots__ = ("ambient_dim", "field", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int | None = None, field=None):
        vectors = [list(v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise DimensionMismatch("ambient dimension needed for an empty span")
            ambient_dim = len(vectors[0])
        if any(len(v) != ambient_dim for v in vectors):
            raise DimensionMismatch("vector length differs from ambient dimension")
        m = Mat(vectors, field, ncols=ambient_dim)
        rows, pivots = _rref_rows([list(r) for r in m.rows], ambient_dim)
        self.ambient_dim = ambient_dim
        self.field = m.field
        self.basis = Mat(rows, m.field, ncols=ambient_dim)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int, field=QQ) -> "Subspace":
        return cls([], n, field)

    @classmethod
    def full(cls, n: int, field=QQ) -> "Subspace":
        return cls(Mat.identity(n, field).rows, n, field)

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int = 5, field=QQ) -> "Subspace":
        """Span of standard basis vectors ``e_i`` for ``i`` in ``indices``."""
        return cls([[field.one if j == i else field.zero for j in range(n)] for i in indices], n, field)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple]:
        return list(self.basis.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.field is other.field
            and self.basis.rows == other.basis.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.basis.to_json()})"

    def _check(self, other: "Subspace"):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        # reduce v against the RREF basis
        w = [self.field(x) for x in v]
        for row, pc in zip(self.basis.rows, self.pivots):
            f = w[pc]
            if f != 0:
                w = [a - f * b for a, b in zip(w, row)]
        return all(x == 0 for x in w)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis.rows)

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the RREF basis (read at the pivot columns)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(self.field(v[pc]) for pc in self.pivots)

    def annihilator(self) -> "Subspace":
        """Vectors ``c`` with ``<c, v> = 0`` for all ``v`` in the space."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.field)
        return rref_kernel(self.basis)[2]

    def complement_basis(self) -> list[tuple]:
        """Standard basis vectors completing the RREF basis (the non-pivot columns)."""
        f = self.field
        return [tuple(f.one if j == c else f.zero for j in range(self.ambient_dim))
                for c in range(self.ambient_dim) if c not in self.pivots]

    def meet(self, other: "Subspace") -> "Subspace":
        return subspace_meet(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def to_json(self):
        return self.basis.to_json()


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace(a.basis.rows + b.basis.rows, a.ambient_dim, a.field)


def subspace_meet(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    ann = Subspace(a.annihilator().basis.rows + b.annihilator().basis.rows, a.ambient_dim, a.field)
    if ann.dim == 0:
        return Subspace.full(a.ambient_dim, a.field)
    return rref_kernel(ann.basis)[2]
