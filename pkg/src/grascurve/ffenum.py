"""Exhaustive counts over GF(p) of subspaces, lines and planes in a section.

Every point of a Grassmannian Gr(k, n)(F_p) is visited once through its
RREF representative.  Representatives are generated in numpy batches per
pivot pattern, tested with vectorized arithmetic mod p, and any witness
handed back is re-checked with the exact GF(p) code.
"""

from __future__ import annotations

import itertools
from math import gcd
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch
from .exact import GF, QQ, Mat, Subspace
from .forms import HomForm, monomials
from .grassmann import N, schubert_lookup, skew_restrict
from .sections import SectionModel, incidence_space

DEFAULT_BUDGET = 10 ** 8
CHUNK = 1 << 16


# -- object kinds --

@dataclass(frozen=True)
class Lines:
    """Pencils (V1 ⊂ V3) lying in the section.

    strategy "vertex" sums |Gr(2, k)| over points, "planes" sums the radical
    of each V3, "flags" tests every pair explicitly.
    """
    strategy: str = "vertex"


@dataclass(frozen=True)
class Planes31:
    """Flags V1 ⊂ V4 with every line through V1 in V4 lying in the section."""
    strategy: str = "vertex"


@dataclass(frozen=True)
class Planes22:
    """3-spaces all of whose lines lie in the section."""


@dataclass(frozen=True)
class Subspaces:
    """k-spaces isotropic for every form; with no hyperplanes, all of Gr(k, 5)."""
    k: int


@dataclass(frozen=True)
class SkewRank:
    """k-spaces on which the first form restricts with the given rank."""
    k: int
    rank: int


@dataclass(frozen=True)
class CovectorRank:
    """k-spaces on which the covectors, restricted to ∧²V, span a space of the given rank."""
    k: int
    rank: int


@dataclass(frozen=True)
class Schubert:
    """Lines of the section lying in a Schubert cycle of the standard flag."""
    label: tuple


OBJECT_NAMES = ("lines", "planes31", "planes22", "subspaces", "skew-rank", "covector-rank", "schubert")


def parse_object(name: str, k: int | None = None, rank: int | None = None, label=None, strategy=None):
    """Build an object kind from CLI-style arguments."""
    name = name.lower()
    if name == "lines":
        return Lines(strategy or "vertex")
    if name == "planes31":
        return Planes31(strategy or "vertex")
    if name == "planes22":
        return Planes22()
    if name == "subspaces":
        return Subspaces(2 if k is None else k)
    if name == "skew-rank":
        return SkewRank(4 if k is None else k, 2 if rank is None else rank)
    if name == "covector-rank":
        return CovectorRank(4 if k is None else k, 3 if rank is None else rank)
    if name == "schubert":
        return Schubert(schubert_lookup(label or "sigma11").label)
    raise KeyError(f"unknown object {name!r}; expected one of {', '.join(OBJECT_NAMES)}")


@dataclass(frozen=True)
class EnumSpec:
    p: int
    object: object
    section: SectionModel = dc_field(compare=False)

    def __post_init__(self):
        sec = self.section
        if sec.field is not GF(self.p):
            sec = sec.reduce(self.p)
            object.__setattr__(self, "section", sec)


@dataclass
class EnumResult:
    count: int
    witnesses: list | None = None
    tests: int = 0

    def to_json(self):
        out = {"count": self.count}
        if self.witnesses is not None:
            out["witnesses"] = [_witness_json(w) for w in self.witnesses]
        return out


# -- RREF representatives --

def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def pivot_patterns(k: int, n: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def _free_slots(pivots: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Positions (row, col) of the free entries of an RREF matrix with these pivots."""
    return [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivots]


def pattern_size(pivots: Sequence[int], n: int, p: int) -> int:
    return p ** len(_free_slots(pivots, n))


def rref_batches(pivots: Sequence[int], n: int, p: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """All RREF matrices with the given pivot columns, as int64 arrays (M, k, n)."""
    k = len(pivots)
    slots = _free_slots(pivots, n)
    total = p ** len(slots)
    base = np.zeros((k, n), dtype=np.int64)
    for i, c in enumerate(pivots):
        base[i, c] = 1
    rows = np.array([s[0] for s in slots], dtype=np.int64)
    cols = np.array([s[1] for s in slots], dtype=np.int64)
    weights = p ** np.arange(len(slots), dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        out = np.broadcast_to(base, (len(idx), k, n)).copy()
        if slots:
            digits = (idx[:, None] // weights[None, :]) % p
            out[:, rows, cols] = digits
        yield out


def iter_subspaces(k: int, p: int, n: int = N) -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_p^n, as an exact Subspace."""
    F = GF(p)
    for piv in pivot_patterns(k, n):
        for batch in rref_batches(piv, n, p):
            for m in batch:
                yield Subspace([[F(int(x)) for x in r] for r in m], n, F)


# -- batched linear algebra mod p --

def batch_rank(a: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of matrices (M, r, c)."""
    a = a % p
    m, r, c = a.shape
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(x, -1, p) for x in range(1, p)]
    rank = np.zeros(m, dtype=np.int64)
    ar = np.arange(m)
    rows = np.arange(r)
    for j in range(c):
        live = (a[:, :, j] != 0) & (rows[None, :] >= rank[:, None])
        has = live.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(live, axis=1)
        sel = ar[has]
        pr, rk = piv[has], rank[has]
        prow = a[sel, pr].copy()
        a[sel, pr] = a[sel, rk]
        prow = (prow * inv[prow[:, j]][:, None]) % p
        a[sel, rk] = prow
        factors = a[sel, :, j].copy()
        factors[np.arange(len(sel)), rk] = 0
        a[sel] = (a[sel] - factors[:, :, None] * prow[:, None, :]) % p
        rank[has] += 1
    return rank


def _omegas(sec: SectionModel) -> np.ndarray:
    return np.array([[[int(f.omega[i, j]) for j in range(N)] for i in range(N)] for f in sec.forms],
                    dtype=np.int64).reshape(len(sec.forms), N, N)


def _grams(b: np.ndarray, om: np.ndarray, p: int) -> np.ndarray:
    """Restricted forms b Ω_h bᵀ mod p, shape (M, m, k, k)."""
    return np.einsum("bik,hkl,bjl->bhij", b, om, b) % p


# -- per-object membership --

def _upper_pairs(k):
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def _test_batch(obj, b: np.ndarray, om: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Multiplicity of each representative in the count, and the number of membership tests."""
    m = len(b)
    if isinstance(obj, (Subspaces, Planes22)):
        if not len(om):
            return np.ones(m, dtype=np.int64), m
        g = _grams(b, om, p)
        return (g.reshape(m, -1) == 0).all(axis=1).astype(np.int64), m
    if isinstance(obj, SkewRank):
        g = _grams(b, om[:1], p)[:, 0]
        return (batch_rank(g, p) == obj.rank).astype(np.int64), m
    if isinstance(obj, CovectorRank):
        g = _grams(b, om, p)
        pairs = _upper_pairs(b.shape[1])
        mat = np.stack([g[:, :, i, j] for i, j in pairs], axis=2)
        return (batch_rank(mat, p) == obj.rank).astype(np.int64), m
    if isinstance(obj, (Lines, Planes31)) and obj.strategy == "vertex":
        # b holds points; W = kernel of the covectors ω_h(v, ·)
        v = b[:, 0, :]
        cov = np.einsum("bi,hij->bhj", v, om) % p if len(om) else np.zeros((m, 1, N), dtype=np.int64)
        kdim = N - batch_rank(cov, p) - 1
        sub = 2 if isinstance(obj, Lines) else 3
        table = np.array([gaussian_binomial(x, sub, p) for x in range(N)], dtype=object)
        return np.array(table[kdim], dtype=np.int64), m
    if isinstance(obj, (Lines, Planes31)) and obj.strategy == "planes":
        # b holds V3 (lines) or V4 (planes31); count points of the common radical
        k = b.shape[1]
        if not len(om):
            d = np.full(m, k, dtype=np.int64)
        else:
            g = _grams(b, om, p).reshape(m, -1, k)
            d = k - batch_rank(g, p)
        return (p ** d - 1) // (p - 1), m
    if isinstance(obj, Lines) and obj.strategy == "flags":
        coeffs = _projective_points(3, p)
        total = np.zeros(m, dtype=np.int64)
        for c in coeffs:
            v = np.einsum("i,bij->bj", c, b) % p
            if not len(om):
                total += 1
                continue
            vals = np.einsum("bi,hij,bkj->bhk", v, om, b) % p
            total += (vals.reshape(m, -1) == 0).all(axis=1)
        return total, m * len(coeffs)
    if isinstance(obj, Schubert):
        datum = schubert_lookup(obj.label)
        ok = np.ones(m, dtype=bool)
        for k, need in datum.conditions:
            tail = b[:, :, k:]
            meet = 2 - batch_rank(tail, p) if tail.shape[2] else np.full(m, 2)
            ok &= meet >= need
        if len(om):
            g = _grams(b, om, p)
            ok &= (g.reshape(m, -1) == 0).all(axis=1)
        return ok.astype(np.int64), m
    raise KeyError(f"unsupported object {obj!r}")


def _object_rank(obj) -> int:
    """Dimension of the subspaces enumerated for this object."""
    if isinstance(obj, (Lines, Planes31)):
        if obj.strategy == "vertex":
            return 1
        if obj.strategy in ("planes", "flags"):
            if isinstance(obj, Planes31) and obj.strategy == "flags":
                raise KeyError("planes31 supports the vertex and planes strategies")
            return 3 if isinstance(obj, Lines) else 4
        raise KeyError(f"unknown strategy {obj.strategy!r}")
    if isinstance(obj, Planes22):
        return 3
    if isinstance(obj, Schubert):
        return 2
    k = obj.k
    if not 0 <= k <= N:
        raise DimensionMismatch(f"subspace dimension {k} outside 0..{N}")
    return k


def _projective_points(n: int, p: int) -> list[np.ndarray]:
    return [m[0] for piv in pivot_patterns(1, n) for batch in rref_batches(piv, n, p) for m in batch]


def planned_tests(spec: EnumSpec) -> int:
    k = _object_rank(spec.object)
    base = gaussian_binomial(N, k, spec.p)
    if isinstance(spec.object, Lines) and spec.object.strategy == "flags":
        base *= spec.p ** 2 + spec.p + 1
    return base


# -- witnesses --

@dataclass(frozen=True)
class Witness:
    kind: str
    parts: tuple  # exact Subspaces over GF(p)

    def to_json(self):
        return {"kind": self.kind, **{name: s.to_json() for name, s in zip(_PART_NAMES[self.kind], self.parts)}}


_PART_NAMES = {
    "line": ("vertex", "plane"),
    "plane31": ("vertex", "space"),
    "subspace": ("space",),
}


def _witness_json(w):
    return w.to_json()


def _exact(m: np.ndarray, F) -> Subspace:
    return Subspace([[F(int(x)) for x in r] for r in m], N, F)


def _extensions(base: Subspace, big: Subspace, extra: int, p: int) -> list[Subspace]:
    """All subspaces S with base ⊆ S ⊆ big and dim S = dim base + extra."""
    F = big.field
    comp = []
    acc = base
    for r in big.basis.rows:
        if not acc.contains(r):
            comp.append(r)
            acc = acc + Subspace([r], N, F)
    out = []
    if extra > len(comp):
        return out
    for piv in pivot_patterns(extra, len(comp)):
        for batch in rref_batches(piv, len(comp), p):
            for c in batch:
                vecs = [[sum((F(int(c[i, j])) * comp[j][t] for j in range(len(comp))), F.zero) for t in range(N)]
                        for i in range(extra)]
                out.append(base + Subspace(vecs, N, F))
    return out


def _witnesses_from(obj, b: np.ndarray, mult: np.ndarray, sec: SectionModel, p: int, limit: int) -> list[Witness]:
    F = GF(p)
    out: list[Witness] = []
    for idx in np.nonzero(mult)[0]:
        if len(out) >= limit:
            break
        s = _exact(b[idx], F)
        if isinstance(obj, (Lines, Planes31)):
            extra = 2 if isinstance(obj, Lines) else 3
            kind = "line" if isinstance(obj, Lines) else "plane31"
            if obj.strategy == "vertex":
                w = incidence_space(s.basis.rows[0], sec) if len(sec) else Subspace.full(N, F)
                for big in _extensions(s, w, extra, p):
                    out.append(Witness(kind, (s, big)))
            else:
                rad = s
                for f in sec.forms:
                    rad = rad.meet(skew_restrict(f, s)[1])
                for pt in _extensions(Subspace.zero(N, F), rad, 1, p):
                    out.append(Witness(kind, (pt, s)))
        else:
            out.append(Witness("subspace", (s,)))
    return out[:limit]


def verify_witness(obj, w: Witness, sec: SectionModel) -> bool:
    """Exact GF(p) re-check of one witness."""
    if isinstance(obj, (Lines, Planes31)):
        v, big = w.parts
        if v.dim != 1 or big.dim != (3 if isinstance(obj, Lines) else 4) or not big.contains_subspace(v):
            return False
        return all(sec.contains_line([v.basis.rows[0], u]) for u in big.basis.rows)
    (s,) = w.parts
    rows = s.basis.rows
    if isinstance(obj, (Subspaces, Planes22)):
        return s.dim == _object_rank(obj) and all(
            f.pair(rows[i], rows[j]) == 0 for f in sec.forms for i, j in _upper_pairs(len(rows)))
    if isinstance(obj, SkewRank):
        return skew_restrict(sec.forms[0], s)[0] == obj.rank
    if isinstance(obj, CovectorRank):
        m = Mat([[f.pair(rows[i], rows[j]) for i, j in _upper_pairs(len(rows))] for f in sec.forms], sec.field,
                ncols=len(_upper_pairs(len(rows))))
        return m.rank() == obj.rank
    if isinstance(obj, Schubert):
        return schubert_lookup(obj.label).contains(s) and sec.contains_line(s)
    raise KeyError(f"unsupported object {obj!r}")


# -- driver --

def _run_pattern(args) -> tuple[int, list]:
    obj, piv, p, om_list, hyperplanes, want = args
    om = np.array(om_list, dtype=np.int64).reshape(len(om_list), N, N)
    sec = SectionModel(hyperplanes, "enum", GF(p)) if want else None
    count = 0
    found: list[Witness] = []
    for b in rref_batches(piv, N, p):
        mult, _ = _test_batch(obj, b, om, p)
        count += int(mult.sum())
        if want and len(found) < want:
            found += _witnesses_from(obj, b, mult, sec, p, want - len(found))
    return count, found


def enumerate_count(spec: EnumSpec, witnesses: bool = False, budget: int = DEFAULT_BUDGET, jobs: int = 1,
                    max_witnesses: int = 100) -> EnumResult:
    """Exact number of objects in the section over GF(p)."""
    obj, p, sec = spec.object, spec.p, spec.section
    tests = planned_tests(spec)
    if tests > budget:
        raise BudgetExceeded(f"{tests} membership tests exceed the budget of {budget}")
    k = _object_rank(obj)
    om = _omegas(sec).tolist()
    hyperplanes = [[int(c) for c in h] for h in sec.hyperplanes]
    want = max_witnesses if witnesses else 0
    tasks = [(obj, piv, p, om, hyperplanes, want) for piv in pivot_patterns(k, N)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_pattern, tasks))
    else:
        results = [_run_pattern(t) for t in tasks]
    count = sum(c for c, _ in results)
    found = None
    if witnesses:
        found = [w for _, ws in results for w in ws][:max_witnesses]
        bad = [w for w in found if not verify_witness(obj, w, sec)]
        if bad:
            raise AssertionError(f"witness failed exact re-verification: {bad[0].to_json()}")
    return EnumResult(count, found, tests)


def locus_poly_check(make_spec: Callable[[int], EnumSpec], predicted: Callable[[int], int],
                     primes: Sequence[int], **kwargs) -> dict:
    """Compare counts with a predicted polynomial in p; on mismatch report a witness."""
    rows = []
    counterexample = None
    for p in primes:
        spec = make_spec(p)
        res = enumerate_count(spec, **kwargs)
        want = predicted(p)
        rows.append({"p": p, "count": res.count, "predicted": want})
        if res.count != want and counterexample is None:
            wit = enumerate_count(spec, witnesses=True, max_witnesses=1).witnesses
            counterexample = {"p": p, "count": res.count, "predicted": want,
                              "witness": wit[0].to_json() if wit else None}
    return {"ok": counterexample is None, "rows": rows, "counterexample": counterexample}


# -- point counts of projective varieties --

def _primitive_coeffs(f: HomForm) -> list:
    """Coefficients scaled to coprime integers when rational; the zero locus is unchanged."""
    if f.field is not QQ:
        return list(f.coeffs)
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def count_projective_zeros(forms: Sequence[HomForm], p: int, budget: int = DEFAULT_BUDGET) -> int:
    """Number of points of P^{n-1}(F_p) on which every form vanishes."""
    if not forms:
        raise DimensionMismatch("at least one form is needed")
    n = forms[0].nvars
    if any(f.nvars != n for f in forms):
        raise DimensionMismatch("forms in different numbers of variables")
    F = GF(p)
    if gaussian_binomial(n, 1, p) > budget:
        raise BudgetExceeded("point count exceeds the budget")
    prepared = []
    for f in forms:
        coeffs = np.array([int(F(c)) for c in _primitive_coeffs(f)], dtype=np.int64)
        exps = np.array(monomials(n, f.degree), dtype=np.int64)
        prepared.append((coeffs, exps))
    total = 0
    for piv in pivot_patterns(1, n):
        for b in rref_batches(piv, n, p):
            pts = b[:, 0, :]
            ok = np.ones(len(pts), dtype=bool)
            for coeffs, exps in prepared:
                val = np.zeros(len(pts), dtype=np.int64)
                for c, e in zip(coeffs, exps):
                    if c == 0:
                        continue
                    term = np.full(len(pts), c, dtype=np.int64)
                    for i, k in enumerate(e):
                        for _ in range(k):
                            term = (term * pts[:, i]) % p
                    val = (val + term) % p
                ok &= val == 0
            total += int(ok.sum())
    return total


def fibers_over_fourspace(v4: Subspace, sec: SectionModel) -> dict:
    """Plane flags of the section over V4: vertices v ∈ V4 with every ω_h(v, V4) = 0,
    and 3-spaces of V4 isotropic for every form.  Exact, over a prime field."""
    if v4.dim != 4:
        raise DimensionMismatch("expected a 4-dimensional subspace")
    p = sec.field.p
    common = v4
    for f in sec.forms:
        common = common.meet(skew_restrict(f, v4)[1])
    points = _extensions(Subspace.zero(N, sec.field), common, 1, p)
    planes = [s for s in _extensions(Subspace.zero(N, sec.field), v4, 3, p)
              if all(f.pair(a, b) == 0 for f in sec.forms for a, b in itertools.combinations(s.basis.rows, 2))]
    return {"kernel": common, "points": points, "planes": planes}
