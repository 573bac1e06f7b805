"""Homogeneous binary forms in (s, t) and polynomial matrices over them.

A form of degree d is stored by its d+1 coefficients in ascending powers
of t: index i holds the coefficient of s^(d-i) t^i.  Forms are never
dehomogenized in the public API, so the point (1:0) is not special.
"""

from __future__ import annotations

import itertools
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import DegenerateFamily, DimensionMismatch, FieldMismatch, NotLocallyFree
from .exact import QQ, GFElement, Mat, Subspace, _rref_rows, common_field, format_scalar, rref_kernel

__all__ = [
    "BinForm",
    "PolyMat",
    "SplittingType",
    "forms_gcd",
    "minimal_basis",
    "graded_kernel_splitting",
    "split_cohomology",
]


class BinForm:
    __slots__ = ("deg", "coeffs", "field")

    def __init__(self, coeffs: Sequence, deg: int | None = None, field=None):
        coeffs = list(coeffs)
        if deg is None:
            deg = len(coeffs) - 1
        field = common_field(coeffs, default=field)
        if deg < 0:
            if any(c != 0 for c in coeffs):
                raise DimensionMismatch("a form of negative degree must be zero")
            coeffs = []
        elif not coeffs:
            coeffs = [field.zero] * (deg + 1)
        elif len(coeffs) != deg + 1:
            raise DimensionMismatch(f"degree {deg} needs {deg + 1} coefficients, got {len(coeffs)}")
        self.deg = deg
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)

    @classmethod
    def _raw(cls, coeffs: tuple, deg: int, field) -> "BinForm":
        """Trusted constructor: coefficients already live in ``field``."""
        f = object.__new__(cls)
        f.deg = deg
        f.coeffs = coeffs
        f.field = field
        return f

    @classmethod
    def zero(cls, deg: int, field=QQ) -> "BinForm":
        return cls([], deg, field)

    @classmethod
    def const(cls, c, field=None) -> "BinForm":
        return cls([c], 0, field)

    @classmethod
    def monomial(cls, a: int, b: int, c=1, field=QQ) -> "BinForm":
        """``c * s^a t^b``."""
        coeffs = [field.zero] * (a + b + 1)
        coeffs[b] = field(c)
        return cls(coeffs, a + b, field)

    @classmethod
    def linear(cls, cs, ct, field=None) -> "BinForm":
        """``cs * s + ct * t``."""
        return cls([cs, ct], 1, field)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, BinForm):
            if self.is_zero() and other.is_zero():
                return self.deg == other.deg
            return self.deg == other.deg and self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.deg, self.coeffs))

    def _same_field(self, other: "BinForm"):
        if self.field is not other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        if not isinstance(other, BinForm):
            if other == 0:
                return self
            return NotImplemented
        self._same_field(other)
        if self.deg != other.deg:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise DimensionMismatch(f"adding forms of degree {self.deg} and {other.deg}")
        return BinForm._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.deg, self.field)

    def __radd__(self, other):
        if other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return BinForm._raw(tuple(-a for a in self.coeffs), self.deg, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinForm):
            self._same_field(other)
            deg = self.deg + other.deg
            if deg < 0 or self.is_zero() or other.is_zero():
                return BinForm.zero(deg, self.field)
            out = [self.field.zero] * (deg + 1)
            for i, a in enumerate(self.coeffs):
                if a != 0:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return BinForm._raw(tuple(out), deg, self.field)
        c = self.field(other)
        return BinForm._raw(tuple(c * a for a in self.coeffs), self.deg, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BinForm":
        out = BinForm.const(self.field.one, self.field)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, s, t):
        if self.deg < 0:
            return self.field.zero
        coeffs = self.coeffs
        acc = coeffs[0]
        tp = 1
        for c in coeffs[1:]:
            tp = tp * t
            acc = acc * s + (c * tp if c != 0 else 0)
        return self.field(acc) if self.deg == 0 or isinstance(acc, int) else acc

    def substitute(self, a, b, c, d) -> "BinForm":
        """f(a*s + b*t, c*s + d*t)."""
        x = BinForm([a, b], 1, self.field)
        y = BinForm([c, d], 1, self.field)
        out = BinForm.zero(self.deg, self.field)
        for i, coef in enumerate(self.coeffs):
            if coef != 0:
                out = out + (x ** (self.deg - i)) * (y ** i) * coef
        return out

    def t_valuation(self) -> int:
        """Largest m with t^m dividing the form (the multiplicity of the root (1:0))."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.deg + 1

    def monic(self) -> "BinForm":
        """Scaled so the first nonzero coefficient is 1."""
        for c in self.coeffs:
            if c != 0:
                return self * (self.field.one / c)
        return self

    def divexact(self, other: "BinForm") -> "BinForm":
        q, r = _form_divmod(self, other)
        if not r.is_zero():
            raise ValueError("form is not divisible")
        return q

    def __repr__(self):
        if self.is_zero():
            return f"0[deg {self.deg}]"
        d = self.deg
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(x for x in (_pw("s", d - i), _pw("t", i)) if x)
            terms.append(f"{format_scalar(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)

    def to_json(self):
        return {"deg": self.deg, "coeffs": [format_scalar(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, field=QQ) -> "BinForm":
        if isinstance(data, (int, str)):
            return cls([field(data)], 0, field)
        return cls([field(c) for c in data["coeffs"]], int(data["deg"]), field)


def _pw(x, k):
    return "" if k == 0 else (x if k == 1 else f"{x}^{k}")


# -- univariate helpers on dehomogenized forms (ascending powers of s) --

def _dehom(f: BinForm) -> tuple[int, list]:
    m = f.t_valuation()
    rest = f.coeffs[m:]
    return m, list(reversed(rest))


def _hom(u: list, deg: int, field) -> BinForm:
    coeffs = [field.zero] * (deg + 1)
    for k, c in enumerate(u):
        coeffs[deg - k] = c
    return BinForm(coeffs, deg, field)


def _trim(u: list) -> list:
    while u and u[-1] == 0:
        u.pop()
    return u


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[i + k] -= c * bi
        a.pop()
        _trim(a)
    return q, a


def _ugcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _form_divmod(f: BinForm, g: BinForm) -> tuple[BinForm, BinForm]:
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return BinForm.zero(f.deg - g.deg, f.field), BinForm.zero(f.deg, f.field)
    mf, uf = _dehom(f)
    mg, ug = _dehom(g)
    if mf < mg:
        return BinForm.zero(f.deg - g.deg, f.field), f
    q, r = _udivmod(uf, ug)
    qdeg = f.deg - g.deg
    qf = _hom(q, qdeg - (mf - mg), f.field) * BinForm.monomial(0, mf - mg, 1, f.field)
    rem = f - qf * g
    return qf, rem


_CERT_PRIME = 2**31 - 1


def _modp_gcd_degree(forms: list[BinForm], p: int) -> int | None:
    """Degree of the gcd of the reductions mod p, or None if reduction is unusable.

    A common factor over QQ survives reduction with its degree intact, so
    a constant gcd mod p certifies that the forms are coprime over QQ.
    """
    acc = None
    for f in forms:
        try:
            red = [int(c.numerator) * pow(int(c.denominator), -1, p) % p for c in f.coeffs]
        except ValueError:
            return None
        m = next((i for i, c in enumerate(red) if c), None)
        if m is None:
            continue
        u = red[m:][::-1]
        if acc is None:
            acc = (m, u)
            continue
        m0, a = acc
        b = u
        while b:
            inv = pow(b[-1], -1, p)
            a = a[:]
            while len(a) >= len(b):
                c = a[-1] * inv % p
                k = len(a) - len(b)
                for i, bi in enumerate(b):
                    a[i + k] = (a[i + k] - c * bi) % p
                a.pop()
                while a and a[-1] == 0:
                    a.pop()
            a, b = b, a
        acc = (min(m0, m), a)
        if acc[0] == 0 and len(a) == 1:
            return 0
    if acc is None:
        return None
    return acc[0] + len(acc[1]) - 1


def forms_gcd(forms: Iterable[BinForm]) -> BinForm | None:
    """Monic gcd of the nonzero forms; ``None`` if every form is zero."""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return None
    if forms[0].field is QQ and _modp_gcd_degree(forms, _CERT_PRIME) == 0:
        return BinForm._raw((QQ.one,), 0, QQ)
    result = None
    for f in forms:
        if f.is_zero():
            continue
        if result is None:
            result = f.monic()
            continue
        m1, u1 = _dehom(result)
        m2, u2 = _dehom(f)
        g = _ugcd(u1, u2)
        m = min(m1, m2)
        result = (_hom(g, len(g) - 1, f.field) * BinForm.monomial(0, m, 1, f.field)).monic()
        if result.deg == 0:
            break
    return result


def _int_divisors(n: int, limit: int = 10**12) -> list[int] | None:
    n = abs(n)
    if n > limit:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def find_linear_factor_root(f: BinForm):
    """A root (s0, t0) of ``f`` in P^1 over its own field, or None if none is found.

    Over QQ this is the rational-root test; over GF(p) a scan of P^1(F_p)
    for p up to 10^5.  ``None`` means no root was found, not that none exists
    (huge integer coefficients are skipped).
    """
    field = f.field
    if f.deg <= 0 or f.is_zero():
        return None
    if f.coeffs[0] == 0:
        return (field.one, field.zero)
    if f.coeffs[-1] == 0:
        return (field.zero, field.one)
    if field is QQ:
        den = 1
        for c in f.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in f.coeffs]
        # dehomogenized at t = 1: constant term is coeffs[-1], leading is coeffs[0]
        lead, const = ints[0], ints[-1]
        num_divs = _int_divisors(const)
        den_divs = _int_divisors(lead)
        if num_divs is None or den_divs is None:
            return None
        for b in den_divs:
            for a in num_divs:
                for sgn in (1, -1):
                    s0 = QQ(sgn * a) / b
                    if f(s0, QQ.one) == 0:
                        return (s0, QQ.one)
        return None
    p = field.p
    if p > 10**5:
        return None
    for v in range(p):
        s0 = GFElement(v, p)
        if f(s0, field.one) == 0:
            return (s0, field.one)
    return None


class SplittingType(tuple):
    """Degrees of the line-bundle summands of a bundle on P^1, nonincreasing."""

    def __new__(cls, degrees: Iterable[int] = ()):
        return super().__new__(cls, sorted((int(d) for d in degrees), reverse=True))

    def __repr__(self):
        return "{" + ",".join(str(d) for d in self) + "}"

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)


class PolyMat:
    """Matrix of binary forms.  Rows need not share a degree unless a caller asks."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows: Iterable[Sequence[BinForm]], field=None):
        rows = [tuple(r) for r in rows]
        if not rows:
            raise DimensionMismatch("empty polynomial matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged polynomial matrix")
        fields = {id(f.field): f.field for r in rows for f in r}
        if len(fields) > 1:
            raise FieldMismatch("entries over different fields")
        self.field = next(iter(fields.values())) if fields else (field or QQ)
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def from_homogeneous_rows(cls, rows: Sequence[Sequence], degrees: Sequence[int], field=QQ) -> "PolyMat":
        """Rows of forms where zero entries may be given as plain 0."""
        out = []
        for r, d in zip(rows, degrees):
            out.append([e if isinstance(e, BinForm) else (BinForm.zero(d, field) if e == 0 else
                                                          BinForm.const(e, field) * BinForm.monomial(d, 0, 1, field))
                        for e in r])
        return cls(out, field)

    def row_degree(self, i: int) -> int:
        degs = {f.deg for f in self.rows[i] if not f.is_zero()}
        if len(degs) > 1:
            raise DimensionMismatch(f"row {i} is not homogeneous")
        if not degs:
            return max(f.deg for f in self.rows[i])
        return degs.pop()

    @property
    def row_degrees(self) -> tuple[int, ...]:
        return tuple(self.row_degree(i) for i in range(self.nrows))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMat) and self.rows == other.rows

    def __repr__(self):
        return "PolyMat[" + "; ".join(", ".join(repr(f) for f in r) for r in self.rows) + "]"

    def evaluate(self, s, t) -> Mat:
        return Mat([[f(s, t) for f in r] for r in self.rows], self.field, ncols=self.ncols)

    def coefficient_vectors(self, i: int) -> list[tuple]:
        """Row i written as sum_k s^(d-k) t^k * v_k; returns the constant vectors v_k."""
        d = self.row_degree(i)
        row = self.rows[i]
        return [tuple(f.coeffs[k] if not f.is_zero() else self.field.zero for f in row) for k in range(d + 1)]

    def maximal_minors(self) -> dict[tuple[int, ...], BinForm]:
        r = self.nrows
        return {cols: form_det([[self.rows[i][c] for c in cols] for i in range(r)])
                for cols in itertools.combinations(range(self.ncols), r)}

    def to_json(self):
        return {"rows": [[f.to_json() for f in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data, field=QQ) -> "PolyMat":
        rows = data["rows"] if isinstance(data, dict) else data
        return cls([[BinForm.from_json(e, field) for e in r] for r in rows], field)


def form_det(m: Sequence[Sequence[BinForm]]) -> BinForm:
    """Determinant by Laplace expansion along the first row (small sizes only)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * form_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _vanishing_linear_form(s0, t0, field) -> BinForm:
    """The linear form t0*s - s0*t, zero exactly at (s0:t0)."""
    return BinForm([t0, -s0], 1, field)


def _unit_linear_form(s0, t0, field) -> BinForm:
    """A linear form taking the value 1 at (s0, t0)."""
    if s0 != 0:
        return BinForm([field.one / s0, field.zero], 1, field)
    return BinForm([field.zero, field.one / t0], 1, field)


def _flatten(row: Sequence[BinForm], deg: int, field) -> list:
    out = []
    for f in row:
        out.extend(f.coeffs if not f.is_zero() else [field.zero] * (deg + 1))
    return out


def _unflatten(vec: Sequence, n: int, deg: int, field) -> list[BinForm]:
    return [BinForm(list(vec[j * (deg + 1):(j + 1) * (deg + 1)]), deg, field) for j in range(n)]


def _saturate_linear(rows: list[list[BinForm]], degs: list[int], field) -> tuple[list[list[BinForm]], list[int]]:
    """Minimal basis of the saturation by degree-by-degree linear algebra.

    A vector v of degree D lies in the rational row span iff every
    (r+1)-minor of [rows; v] vanishes; those minors are linear in v.
    """
    r = len(rows)
    n = len(rows[0])
    minors = PolyMat(rows).maximal_minors()
    chosen: list[list[BinForm]] = []
    chosen_degs: list[int] = []
    for D in range(0, sum(degs) + 1):
        nunk = n * (D + 1)
        eqs = []
        for S in itertools.combinations(range(n), r + 1):
            # expansion of det [rows; v] along v restricted to columns S
            acc = None
            for pos, l in enumerate(S):
                rest = tuple(c for c in S if c != l)
                delta = minors[rest]
                sign = -1 if (r + pos) % 2 else 1
                acc_l = (l, delta, sign)
                acc = [acc_l] if acc is None else acc + [acc_l]
            out_deg = D + sum(degs)
            for k in range(out_deg + 1):
                row = [field.zero] * nunk
                for l, delta, sign in acc:
                    if delta.is_zero():
                        continue
                    for i in range(D + 1):
                        j = k - i
                        if 0 <= j <= delta.deg:
                            row[l * (D + 1) + i] += sign * delta.coeffs[j]
                if any(x != 0 for x in row):
                    eqs.append(row)
        space = rref_kernel(Mat(eqs, field, ncols=nunk))[2] if eqs else Subspace.full(nunk, field)
        if space.dim == 0:
            continue
        old = []
        for row, e in zip(chosen, chosen_degs):
            for a in range(D - e + 1):
                mono = BinForm.monomial(D - e - a, a, 1, field)
                old.append(_flatten([f * mono for f in row], D, field))
        span_rows, _ = _rref_rows([list(v) for v in old], nunk) if old else ([], [])
        current = Subspace(span_rows, nunk, field) if span_rows else Subspace.zero(nunk, field)
        for v in space.basis.rows:
            if not current.contains(v):
                chosen.append(_unflatten(v, n, D, field))
                chosen_degs.append(D)
                current = current + Subspace([v], nunk, field)
        if len(chosen) == r:
            break
    if len(chosen) != r:
        raise DegenerateFamily("saturation did not produce a full basis")
    return chosen, chosen_degs


def _normalize_rows(rows: list[list[BinForm]], degs: list[int], field) -> tuple[list[list[BinForm]], list[int]]:
    """Sort by degree and reduce each row against multiples of the earlier rows."""
    order = sorted(range(len(rows)), key=lambda i: (degs[i], i))
    rows = [rows[i] for i in order]
    degs = [degs[i] for i in order]
    n = len(rows[0])
    out: list[list[BinForm]] = []
    for i, (row, d) in enumerate(zip(rows, degs)):
        reducers = []
        for prev, e in zip(out, degs[:i]):
            for a in range(d - e + 1):
                mono = BinForm.monomial(d - e - a, a, 1, field)
                reducers.append(_flatten([f * mono for f in prev], d, field))
        vec = _flatten(row, d, field)
        if reducers:
            red, pivots = _rref_rows(reducers, n * (d + 1))
            for rr, pc in zip(red, pivots):
                c = vec[pc]
                if c != 0:
                    vec = [a - c * b for a, b in zip(vec, rr)]
        lead = next((c for c in vec if c != 0), None)
        if lead is not None and lead != 1:
            vec = [c / lead for c in vec]
        out.append(_unflatten(vec, n, d, field))
    return out, degs


def minimal_basis(m: PolyMat) -> tuple[PolyMat, SplittingType]:
    """Minimal basis of the rational row space of a row-homogeneous matrix.

    Wherever all maximal minors vanish at a point (s0:t0), a constant
    combination of the evaluated rows is zero; the highest-degree row in that
    combination is replaced by the combination divided by the linear form
    vanishing at the point.  Points defined only over an extension fall back
    to degree-by-degree saturation.  Rows come back sorted by degree, each
    reduced against multiples of the lower ones.
    """
    field = m.field
    degs = list(m.row_degrees)
    rows = [[f if not f.is_zero() else BinForm.zero(d, field) for f in r] for r, d in zip(m.rows, degs)]
    g = forms_gcd(m.maximal_minors().values())
    if g is None:
        raise DegenerateFamily("matrix does not have full row rank")
    while g.deg > 0:
        root = find_linear_factor_root(g)
        if root is None:
            rows, degs = _saturate_linear(rows, degs, field)
            break
        s0, t0 = root
        ev = PolyMat(rows).evaluate(s0, t0)
        left = rref_kernel(ev.transpose())[2]
        k = left.basis.rows[0]
        support = [i for i in range(len(rows)) if k[i] != 0]
        j = max(support, key=lambda i: (degs[i], -i))
        unit = _unit_linear_form(s0, t0, field)
        phi = _vanishing_linear_form(s0, t0, field)
        combo = [BinForm.zero(degs[j], field) for _ in range(m.ncols)]
        for i in support:
            lift = unit ** (degs[j] - degs[i]) * k[i]
            combo = [c + lift * f for c, f in zip(combo, rows[i])]
        rows[j] = [c.divexact(phi) for c in combo]
        degs[j] -= 1
        g = g.divexact(phi).monic()
    rows, degs = _normalize_rows(rows, degs, field)
    return PolyMat(rows, field), SplittingType(degs)


def graded_kernel_splitting(m: PolyMat, source_degs: Sequence[int], target_degs: Sequence[int]) -> SplittingType:
    """Splitting type of the kernel of  (+) O(source) -> (+) O(target)  on P^1.

    ``m`` has one row per target and one column per source.  The kernel
    degrees are read off the Hilbert function h(j) = dim H^0(K(j)), obtained
    by exact linear algebra on each graded piece.
    """
    source_degs = [int(x) for x in source_degs]
    target_degs = [int(x) for x in target_degs]
    field = m.field
    if not source_degs:
        return SplittingType()
    if not target_degs:
        return SplittingType(source_degs)
    if m.nrows != len(target_degs) or m.ncols != len(source_degs):
        raise DimensionMismatch(f"matrix {m.nrows}x{m.ncols} vs {len(target_degs)} targets, {len(source_degs)} sources")
    for j, tj in enumerate(target_degs):
        for i, si in enumerate(source_degs):
            f = m.rows[j][i]
            if not f.is_zero() and f.deg != tj - si:
                raise DimensionMismatch(f"entry ({j},{i}) has degree {f.deg}, expected {tj - si}")
    if len(target_degs) > len(source_degs):
        raise NotLocallyFree("more targets than sources: the map cannot be surjective")
    g = forms_gcd(m.maximal_minors().values())
    if g is None or g.deg > 0:
        raise NotLocallyFree("maximal minors share a zero: the map is not surjective everywhere")
    rank = len(source_degs) - len(target_degs)

    def h(j: int) -> int:
        src_dims = [max(j + d + 1, 0) for d in source_degs]
        tgt_dims = [max(j + d + 1, 0) for d in target_degs]
        ncols = sum(src_dims)
        if ncols == 0:
            return 0
        nrows = sum(tgt_dims)
        if nrows == 0:
            return ncols
        a = [[field.zero] * ncols for _ in range(nrows)]
        col0 = 0
        for i, sd in enumerate(src_dims):
            row0 = 0
            for jj, td in enumerate(tgt_dims):
                f = m.rows[jj][i]
                if td and not f.is_zero():
                    for b in range(sd):  # source monomial s^(sd-1-b) t^b
                        for k, c in enumerate(f.coeffs):
                            if c != 0:
                                a[row0 + b + k][col0 + b] += c
                row0 += td
            col0 += sd
        return ncols - len(_rref_rows(a, ncols)[1])

    bound = max(abs(x) for x in source_degs + target_degs) + sum(map(abs, source_degs)) + sum(map(abs, target_degs)) + 1
    degrees: list[int] = []
    j = -max(source_degs) - 1
    prev_h = h(j - 1)
    prev_delta = 0
    cur = prev_h
    while j <= bound:
        cur = h(j)
        delta = cur - prev_h
        degrees.extend([-j] * (delta - prev_delta))
        prev_h, prev_delta = cur, delta
        if delta == rank:
            break
        j += 1
    if len(degrees) != rank:
        raise NotLocallyFree("kernel degrees did not stabilize within the probing range")
    return SplittingType(degrees)


def split_cohomology(t: Iterable[int]) -> tuple[int, int]:
    """(h^0, h^1) of the direct sum of O(d) over the degrees in ``t``."""
    h0 = sum(d + 1 for d in t if d >= 0)
    h1 = sum(-d - 1 for d in t if d <= -2)
    return h0, h1
