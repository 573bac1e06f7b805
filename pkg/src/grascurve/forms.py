"""Homogeneous polynomials in a fixed list of variables, graded-lex ordered."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch
from .exact import QQ, Mat, common_field, format_scalar


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given degree, graded-lex descending (x0^d first)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


def eval_monomials(point: Sequence, degree: int, field) -> list:
    """Values of all degree-``degree`` monomials at ``point``, in graded-lex order."""
    n = len(point)
    powers = [[field.one] for _ in range(n)]
    for i in range(n):
        for _ in range(degree):
            powers[i].append(powers[i][-1] * point[i])
    out = []
    for e in monomials(n, degree):
        v = field.one
        for i, k in enumerate(e):
            if k:
                v = v * powers[i][k]
        out.append(v)
    return out


class HomForm:
    """A homogeneous form stored as a coefficient vector over ``monomials(nvars, degree)``."""

    __slots__ = ("nvars", "degree", "coeffs", "field", "names")

    def __init__(self, nvars: int, degree: int, coeffs: Sequence, field=None, names: Sequence[str] | None = None):
        mons = monomials(nvars, degree)
        if len(coeffs) != len(mons):
            raise DimensionMismatch(f"{len(mons)} coefficients expected, got {len(coeffs)}")
        field = common_field(coeffs, default=field)
        self.nvars = nvars
        self.degree = degree
        self.field = field
        self.coeffs = tuple(field(c) for c in coeffs)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(nvars))

    @classmethod
    def from_terms(cls, nvars: int, terms: dict, field=QQ, names=None) -> "HomForm":
        """Build from {exponent tuple: coefficient}."""
        degs = {sum(e) for e in terms}
        if len(degs) != 1:
            raise DimensionMismatch("terms of mixed degree")
        degree = degs.pop()
        index = {e: k for k, e in enumerate(monomials(nvars, degree))}
        coeffs = [field.zero] * len(index)
        for e, c in terms.items():
            coeffs[index[tuple(e)]] += field(c)
        return cls(nvars, degree, coeffs, field, names)

    @classmethod
    def variable(cls, nvars: int, i: int, field=QQ, names=None) -> "HomForm":
        e = [0] * nvars
        e[i] = 1
        return cls.from_terms(nvars, {tuple(e): 1}, field, names)

    def terms(self) -> dict:
        return {e: c for e, c in zip(monomials(self.nvars, self.degree), self.coeffs) if c != 0}

    def __call__(self, point: Sequence):
        vals = eval_monomials([self.field(x) for x in point], self.degree, self.field)
        return sum((c * v for c, v in zip(self.coeffs, vals) if c != 0), self.field.zero)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, HomForm) and self.nvars == other.nvars and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.nvars, self.degree, self.coeffs))

    def __add__(self, other: "HomForm") -> "HomForm":
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise DimensionMismatch("adding forms of different shape")
        return HomForm(self.nvars, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)],
                       self.field, self.names)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HomForm":
        c = self.field(c)
        return HomForm(self.nvars, self.degree, [c * a for a in self.coeffs], self.field, self.names)

    def __mul__(self, other):
        if not isinstance(other, HomForm):
            return self.scale(other)
        terms: dict = {}
        for e1, c1 in self.terms().items():
            for e2, c2 in other.terms().items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, self.field.zero) + c1 * c2
        if not terms:
            return HomForm(self.nvars, self.degree + other.degree,
                           [self.field.zero] * len(monomials(self.nvars, self.degree + other.degree)),
                           self.field, self.names)
        return HomForm.from_terms(self.nvars, terms, self.field, self.names)

    __rmul__ = __mul__

    def linear_substitute(self, images: Sequence["HomForm"]) -> "HomForm":
        """Replace variable i by the linear form ``images[i]``."""
        if len(images) != self.nvars:
            raise DimensionMismatch("one image per variable needed")
        target = images[0]
        out = HomForm(target.nvars, self.degree, [self.field.zero] * len(monomials(target.nvars, self.degree)),
                      self.field, target.names)
        for e, c in self.terms().items():
            term = None
            for i, k in enumerate(e):
                for _ in range(k):
                    term = images[i] if term is None else term * images[i]
            out = out + term.scale(c)
        return out

    def gram(self) -> Mat:
        """Symmetric matrix of a quadratic form (characteristic not 2)."""
        if self.degree != 2:
            raise DimensionMismatch("gram matrix needs a quadratic form")
        f = self.field
        g = [[f.zero] * self.nvars for _ in range(self.nvars)]
        half = f.one / f(2)
        for e, c in self.terms().items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                g[i][i] += c
            else:
                g[i][j] += c * half
                g[j][i] += c * half
        return Mat(g, f)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms().items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k
            )
            coef = format_scalar(c)
            if mono:
                parts.append(mono if coef == "1" else f"-{mono}" if coef == "-1" else f"{coef}*{mono}")
            else:
                parts.append(coef)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {"degree": self.degree, "vars": list(self.names),
                "coeffs": [format_scalar(c) for c in self.coeffs]}
