"""Motivic May spectral sequence pages as presented algebras over M2.

Every page is a commutative algebra over M2 = F2[tau] given by generators with
May degrees (m, s, f, w) and homogeneous relations; tau has degree
(0, 0, 0, -1).  A multidegree slice (m, s, f) is a graded M2-module.  Setting
tau = 1 is injective on each weight of the free polynomial algebra, so the
weight-w part of a slice is

    V(w) / R(w),   V(w) = span of monomials of weight >= w,
                   R(w) = span of relation multiples of weight >= w,

computed by F2 row reduction.  Homology of a page differential is done the
same way, weight by weight, and tau-torsion is read off from the ranks of
tau-multiplication between weights.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .gf2 import Echelon
from .polynomial import Monomial, Polynomial, parse
from .tau_algebra import (
    TAU_LOWERS,
    MayDegree,
    TauModuleDecomposition,
    decomposition_from_ranks,
)
from . import may_data

TAU_DEGREE = MayDegree(0, 0, 0, -1)

Exps = tuple[int, ...]


class NotADifferentialError(ValueError):
    pass


@dataclass(frozen=True)
class MayGenerator:
    name: str
    degree: MayDegree


class PresentedAlgebra:
    """Commutative M2-algebra on named generators modulo homogeneous relations."""

    def __init__(self, name: str, generators: Sequence[MayGenerator], relations: Iterable[Polynomial | str] = ()) -> None:
        self.name = name
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {name}")
        for g in self.generators:
            if g.degree.m < 1 or g.degree.f < 1:
                raise ValueError(f"generator {g.name} must have positive May and Adams filtration")
        self.names = tuple(names)
        self.position = {n: i for i, n in enumerate(names)}
        self.degrees = {g.name: g.degree for g in self.generators}
        rels = []
        for r in relations:
            p = self.parse(r) if isinstance(r, str) else r
            if not p.is_zero():
                self.degree_of(p)
                rels.append(p)
        self.relations = tuple(rels)

    def __repr__(self) -> str:
        return f"PresentedAlgebra({self.name!r}, {len(self.generators)} generators, {len(self.relations)} relations)"

    def parse(self, text: str) -> Polynomial:
        return parse(text, self.names)

    def monomial_degree(self, m: Monomial) -> MayDegree:
        deg = m.degree({n: (d.m, d.s, d.f, d.w) for n, d in self.degrees.items()}, (0, 0, 0, -1))
        return MayDegree(*deg)

    def degree_of(self, p: Polynomial) -> MayDegree | None:
        degs = {self.monomial_degree(m) for m in p.terms}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous polynomial {p} in {self.name}: {sorted(degs, key=str)}")
        return degs.pop() if degs else None

    def exps(self, m: Monomial) -> tuple[Exps, int]:
        v = [0] * len(self.names)
        for n, k in m.powers:
            v[self.position[n]] = k
        return tuple(v), m.tau_exp

    def monomial(self, exps: Exps, tau_exp: int = 0) -> Monomial:
        return Monomial.of(((self.names[i], k) for i, k in enumerate(exps) if k), tau_exp)

    def with_relations(self, extra: Iterable[Polynomial | str], name: str | None = None) -> "PresentedAlgebra":
        return PresentedAlgebra(name or self.name, self.generators, list(self.relations) + list(extra))

    # -- text format -----------------------------------------------------

    def to_text(self, differentials: Sequence["PageDifferential"] = ()) -> str:
        lines = [f"algebra {self.name}"]
        for g in self.generators:
            d = g.degree
            lines.append(f"gen {g.name} {d.m} {d.s} {d.f} {d.w}")
        for r in self.relations:
            lines.append(f"rel {r}")
        for dr in differentials:
            for n in self.names:
                if n in dr.values:
                    lines.append(f"d {dr.r} {n} = {dr.values[n]}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PageDifferential:
    """d_r given on generators (missing generators are cycles)."""

    r: int
    values: Mapping[str, Polynomial]

    @property
    def shift(self) -> MayDegree:
        return MayDegree(-(self.r - 1), -1, 1, 0)

    def validate(self, alg: PresentedAlgebra) -> None:
        for n, v in self.values.items():
            if n not in alg.degrees:
                raise ValueError(f"differential on unknown generator {n}")
            deg = alg.degree_of(v)
            want = alg.degrees[n] + self.shift
            if deg is not None and deg != want:
                raise ValueError(f"d{self.r}({n}) = {v} has degree {deg}, expected {want}")


def load_page(text: str) -> tuple[PresentedAlgebra, dict[int, PageDifferential]]:
    """Parse the line-oriented algebra format."""
    name = "custom"
    gens: list[MayGenerator] = []
    rels: list[tuple[int, str]] = []
    diffs: dict[int, dict[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "algebra":
                name = rest
            elif head == "gen":
                n, m, s, f, w = rest.split()
                gens.append(MayGenerator(n, MayDegree(int(m), int(s), int(f), int(w))))
            elif head == "rel":
                rels.append((lineno, rest))
            elif head == "d":
                mt = re.fullmatch(r"(\d+)\s+(\S+)\s*=\s*(.+)", rest)
                if not mt:
                    raise ValueError("expected 'd <r> <generator> = <polynomial>'")
                diffs.setdefault(int(mt.group(1)), {})[mt.group(2)] = mt.group(3)
            else:
                raise ValueError(f"unknown record {head!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    alg = PresentedAlgebra(name, gens)
    parsed = []
    for lineno, r in rels:
        try:
            p = alg.parse(r)
            alg.degree_of(p)
            parsed.append(p)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    alg = PresentedAlgebra(name, gens, parsed)
    out = {}
    for r, vals in diffs.items():
        d = PageDifferential(r, {n: alg.parse(v) for n, v in vals.items()})
        d.validate(alg)
        out[r] = d
    return alg, out


def builtin_page(name: str) -> tuple[PresentedAlgebra, PageDifferential | None]:
    """One of ``gr-dga``, ``E2``, ``E4``, ``Einf`` with its outgoing differential."""
    texts = {"gr-dga": may_data.GRADED_DGA, "E2": may_data.E2, "E4": may_data.E4, "Einf": may_data.EINF}
    alg, diffs = load_page(texts[name])
    d = next(iter(diffs.values()), None)
    return alg, d


# -- Leibniz rule ---------------------------------------------------------


def extend_leibniz(d: PageDifferential, p: Polynomial) -> Polynomial:
    """d(xy) = d(x) y + x d(y), d(tau) = 0; in characteristic 2, d(x^k) = k x^(k-1) d(x)."""
    out = Polynomial()
    for m in p.terms:
        for n, k in m.powers:
            if k % 2 == 0 or n not in d.values:
                continue
            rest = Polynomial([Monomial.of([(nn, kk - (nn == n)) for nn, kk in m.powers], m.tau_exp)])
            out = out + rest * d.values[n]
    return out


# -- slices ---------------------------------------------------------------


class _Space:
    """A multidegree slice: monomials with weights and relation multiples."""

    def __init__(self, mons: list[Exps], weights: list[int], rels: list[tuple[int, int]]) -> None:
        self.mons = mons
        self.weights = weights
        self.index = {e: i for i, e in enumerate(mons)}
        self.rels = sorted(rels, key=lambda r: -r[0])  # (weight, vector), decreasing weight
        self._rel_echelons: dict[int, Echelon] = {}

    def __len__(self) -> int:
        return len(self.mons)

    def rel_echelon(self, w: int) -> Echelon:
        e = self._rel_echelons.get(w)
        if e is None:
            e = Echelon()
            for rw, v in self.rels:
                if rw < w:
                    break
                e.add(v)
            self._rel_echelons[w] = e
        return e

    def span(self, w: int) -> list[int]:
        return [i for i, wi in enumerate(self.weights) if wi >= w]

    def dim(self, w: int) -> int:
        return len(self.span(w)) - len(self.rel_echelon(w))

    def breakpoints(self) -> set[int]:
        return set(self.weights) | {rw for rw, _ in self.rels}


class MonomialIndex:
    """All monomials of a presented algebra, grouped by (m, s, f), within bounds."""

    def __init__(self, alg: PresentedAlgebra, max_m: int, max_s: int, min_s: int = 0) -> None:
        self.alg = alg
        self.max_m, self.max_s = max_m, max_s
        degs = [alg.degrees[n] for n in alg.names]
        groups: dict[tuple[int, int, int], list[tuple[Exps, int]]] = {}
        n = len(degs)
        exps = [0] * n

        def rec(i: int, m: int, s: int, f: int, w: int) -> None:
            if i == n:
                groups.setdefault((m, s, f), []).append((tuple(exps), w))
                return
            d = degs[i]
            k = 0
            while m + k * d.m <= max_m and s + k * d.s <= max_s:
                exps[i] = k
                rec(i + 1, m + k * d.m, s + k * d.s, f + k * d.f, w + k * d.w)
                k += 1
            exps[i] = 0

        rec(0, 0, 0, 0, 0)
        self.groups = groups
        self._spaces: dict[tuple[int, int, int], _Space] = {}
        self._rel_data = []
        for r in alg.relations:
            deg = alg.degree_of(r)
            terms = [alg.exps(m) for m in r.terms]
            self._rel_data.append((deg, terms))

    def contains(self, m: int, s: int) -> bool:
        return 0 <= m <= self.max_m and 0 <= s <= self.max_s

    def space(self, m: int, s: int, f: int) -> _Space:
        key = (m, s, f)
        sp = self._spaces.get(key)
        if sp is not None:
            return sp
        if not self.contains(m, s):
            raise ValueError(f"slice {key} outside the enumerated range")
        entries = self.groups.get(key, [])
        mons = [e for e, _ in entries]
        weights = [w for _, w in entries]
        index = {e: i for i, e in enumerate(mons)}
        rels = []
        for deg, terms in self._rel_data:
            sub = self.groups.get((m - deg.m, s - deg.s, f - deg.f), [])
            for e2, w2 in sub:
                v = 0
                for e, _ in terms:
                    v ^= 1 << index[tuple(a + b for a, b in zip(e, e2))]
                rels.append((deg.w + w2, v))
        sp = _Space(mons, weights, rels)
        self._spaces[key] = sp
        return sp


@dataclass(frozen=True)
class DegreeSlice:
    """A slice of a presented algebra as a graded M2-module."""

    algebra: str
    degree: tuple[int, int, int]
    basis: Mapping[int, tuple[tuple[int, Monomial], ...]]  # weight -> (tau exponent, monomial)
    decomposition: TauModuleDecomposition

    def dim(self, w: int) -> int:
        return self.decomposition.dim_at(w)

    @property
    def rank(self) -> int:
        return len(self.decomposition.free)


def _slice_decomposition(sp: _Space, tau_rank, dims_at) -> TauModuleDecomposition:
    bps = sorted(sp.breakpoints())
    if not bps:
        return TauModuleDecomposition()
    lo, hi = bps[0], bps[-1]
    dims = {w: dims_at(w) for w in range(lo, hi + 1)}
    return decomposition_from_ranks(dims, tau_rank, lo, hi, TAU_LOWERS)


def slice_basis(alg: PresentedAlgebra, m: int, s: int, f: int, max_extra_tau: int | None = None,
                index: MonomialIndex | None = None) -> DegreeSlice:
    """Quotient basis of the presented algebra in multidegree (m, s, f).

    Weights are enumerated exactly over the range where the slice changes;
    ``max_extra_tau`` optionally caps how far below the lowest monomial weight
    the per-weight basis is listed (the decomposition is exact regardless).
    """
    index = index or MonomialIndex(alg, m, s)
    sp = index.space(m, s, f)

    def tau_rank(w: int, k: int) -> int:
        e = sp.rel_echelon(w - k).copy()
        return sum(1 for i in sp.span(w) if e.add(1 << i))

    dec = _slice_decomposition(sp, tau_rank, sp.dim)
    basis: dict[int, tuple[tuple[int, Monomial], ...]] = {}
    if sp.mons:
        lo = min(sp.weights)
        stop = lo - (1 if max_extra_tau is None else max_extra_tau)
        for w in range(max(sp.weights), stop - 1, -1):
            e = sp.rel_echelon(w).copy()
            chosen = []
            for i in sorted(sp.span(w), key=lambda i: (sp.weights[i] - w, i)):
                if e.add(1 << i):
                    chosen.append((sp.weights[i] - w, alg.monomial(sp.mons[i])))
            if chosen:
                basis[w] = tuple(chosen)
    return DegreeSlice(alg.name, (m, s, f), basis, dec)


# -- differentials on slices ---------------------------------------------


class _DiffData:
    def __init__(self, alg: PresentedAlgebra, d: PageDifferential) -> None:
        self.alg = alg
        self.d = d
        self.values = {alg.position[n]: [alg.exps(t) for t in v.terms] for n, v in d.values.items()}
        self.shift = d.shift

    def image(self, exps: Exps) -> list[Exps]:
        """Leibniz image of a monomial, as exponent vectors (tau implicit)."""
        out: list[Exps] = []
        for i, k in enumerate(exps):
            if k % 2 == 0 or i not in self.values:
                continue
            for e, _ in self.values[i]:
                v = list(exps)
                v[i] -= 1
                out.append(tuple(a + b for a, b in zip(v, e)))
        return out


def _image_vectors(dd: _DiffData, src: _Space, tgt: _Space) -> list[int]:
    out = []
    idx = tgt.index
    for e in src.mons:
        v = 0
        for t in dd.image(e):
            v ^= 1 << idx[t]
        out.append(v)
    return out


@dataclass
class SliceHomology:
    """Homology of a page differential in one multidegree."""

    degree: tuple[int, int, int]
    _dims: dict[int, int] = field(repr=False)
    _ctx: object = field(repr=False, default=None)

    def dim(self, w: int) -> int:
        if not self._dims:
            return 0
        bps = sorted(self._dims)
        if w > bps[-1]:
            return 0
        for b in bps:
            if b >= w:
                return self._dims[b]
        return 0

    @property
    def weights(self) -> tuple[int, int] | None:
        return (min(self._dims), max(self._dims)) if self._dims else None

    @property
    def is_zero(self) -> bool:
        return not any(self._dims.values())

    @cached_property
    def decomposition(self) -> TauModuleDecomposition:
        return self._ctx.decomposition()


class _HomologyAt:
    def __init__(self, X: _Space, Y: _Space | None, W: _Space | None, dX: list[int], dW: list[int]) -> None:
        self.X, self.Y, self.W, self.dX, self.dW = X, Y, W, dX, dW
        bps = X.breakpoints()
        if Y is not None:
            bps |= {rw for rw, _ in Y.rels}
        if W is not None:
            bps |= set(W.weights)
        top = max(X.weights) if X.weights else None
        self.breakpoints = sorted(b for b in bps if top is not None and b <= top)

    def _kernel(self, w: int) -> list[int]:
        """Vectors x in V_X(w) with d x in R_Y(w), as bitsets over X monomials."""
        X, Y = self.X, self.Y
        span = X.span(w)
        if Y is None:
            return [1 << i for i in span]
        e = Y.rel_echelon(w).copy()
        out = []
        for i in span:
            r, tag = e.reduce(self.dX[i], 1 << i)
            if r:
                e.pivots[r.bit_length() - 1] = (r, tag)
            else:
                out.append(tag)
        return out

    def _boundaries(self, w: int) -> Echelon:
        e = self.X.rel_echelon(w).copy()
        if self.W is not None:
            for j in self.W.span(w):
                e.add(self.dW[j])
        return e

    def dim(self, w: int) -> int:
        ker = self._kernel(w)
        b = self._boundaries(w)
        return sum(1 for v in ker if b.add(v))

    def dims(self) -> dict[int, int]:
        return {w: self.dim(w) for w in self.breakpoints}

    def tau_rank(self, w: int, k: int) -> int:
        b = self._boundaries(w - k)
        return sum(1 for v in self._kernel(w) if b.add(v))

    def decomposition(self) -> TauModuleDecomposition:
        if not self.breakpoints:
            return TauModuleDecomposition()
        lo, hi = self.breakpoints[0], self.breakpoints[-1]
        dims = {w: self.dim(w) for w in range(lo, hi + 1)}
        return decomposition_from_ranks(dims, self.tau_rank, lo, hi, TAU_LOWERS)

    def well_defined(self) -> bool:
        """Relation multiples of X map into the relations of Y."""
        if self.Y is None:
            return True
        for rw, v in self.X.rels:
            img = 0
            for i in _bits(v):
                img ^= self.dX[i]
            if not self.Y.rel_echelon(rw).contains(img):
                return False
        return True


def _bits(v: int) -> Iterator[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class Page:
    """A presented algebra with its outgoing differential, over a bounded range."""

    def __init__(self, alg: PresentedAlgebra, d: PageDifferential | None, max_m: int, max_s: int) -> None:
        self.alg, self.d = alg, d
        self.max_m, self.max_s = max_m, max_s
        r = d.r if d else 1
        if d is not None:
            d.validate(alg)
        # sources of incoming differentials sit at (m + r - 1, s + 1)
        self.index = MonomialIndex(alg, max_m + r - 1, max_s + 1)
        self.dd = _DiffData(alg, d) if d else None

    def space(self, m: int, s: int, f: int) -> _Space:
        return self.index.space(m, s, f)

    def slices(self) -> list[tuple[int, int, int]]:
        return sorted(k for k in self.index.groups if k[0] <= self.max_m and k[1] <= self.max_s)

    def _at(self, m: int, s: int, f: int) -> _HomologyAt:
        X = self.space(m, s, f)
        Y = W = None
        dX: list[int] = []
        dW: list[int] = []
        if self.dd is not None:
            sh = self.dd.shift
            tm, ts, tf = m + sh.m, s + sh.s, f + sh.f
            if self.index.contains(tm, ts):
                Y = self.space(tm, ts, tf)
                dX = _image_vectors(self.dd, X, Y)
            else:
                Y = _Space([], [], [])
                dX = [0] * len(X)
            sm, ss, sf = m - sh.m, s - sh.s, f - sh.f
            if self.index.contains(sm, ss):
                W = self.space(sm, ss, sf)
                dW = _image_vectors(self.dd, W, X)
        return _HomologyAt(X, Y, W, dX, dW)

    def homology_at(self, m: int, s: int, f: int) -> SliceHomology:
        h = self._at(m, s, f)
        return SliceHomology((m, s, f), h.dims(), h)

    def check_d_squared(self) -> list[str]:
        """Generators x with d(d(x)) not in the relation ideal."""
        if self.d is None:
            return []
        bad = []
        for n, v in self.d.values.items():
            dd = extend_leibniz(self.d, v)
            if dd.is_zero():
                continue
            deg = self.alg.degree_of(dd)
            if not self.index.contains(deg.m, deg.s):
                continue
            sp = self.space(deg.m, deg.s, deg.f)
            vec = 0
            for t in dd.terms:
                vec ^= 1 << sp.index[self.alg.exps(t)[0]]
            if not sp.rel_echelon(deg.w).contains(vec):
                bad.append(n)
        return bad


    def check_d_squared_slices(self) -> list[tuple[int, int, int]]:
        """Slices where d∘d on some monomial basis element lands outside the relations."""
        if self.dd is None:
            return []
        bad = []
        for key in self.slices():
            h = self._at(*key)
            if h.W is None or h.Y is None:
                continue
            for j, v in enumerate(h.dW):
                img = 0
                for i in _bits(v):
                    img ^= h.dX[i]
                if img and not h.Y.rel_echelon(h.W.weights[j]).contains(img):
                    bad.append(key)
                    break
        return bad


def page_homology(alg: PresentedAlgebra, d: PageDifferential | None, max_s: int, max_m: int) -> dict[tuple[int, int, int], SliceHomology]:
    """Homology of (alg, d) in every slice with s <= max_s and m <= max_m."""
    page = Page(alg, d, max_m, max_s)
    bad = page.check_d_squared()
    if bad:
        raise NotADifferentialError(f"d∘d is nonzero on {bad}")
    return {k: page.homology_at(*k) for k in page.slices()}


@dataclass(frozen=True)
class WellDefinedReport:
    failures: tuple[tuple[str, str], ...]  # (relation, its image)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_well_defined(alg: PresentedAlgebra, d: PageDifferential) -> WellDefinedReport:
    """Every relation must map into the relation ideal."""
    failures = []
    for r in alg.relations:
        img = extend_leibniz(d, r)
        if img.is_zero():
            continue
        deg = alg.degree_of(img)
        index = MonomialIndex(alg, deg.m, deg.s)
        sp = index.space(deg.m, deg.s, deg.f)
        vec = 0
        for t in img.terms:
            vec ^= 1 << sp.index[alg.exps(t)[0]]
        if not sp.rel_echelon(deg.w).contains(vec):
            failures.append((str(r), str(img)))
    return WellDefinedReport(tuple(failures))


@dataclass(frozen=True)
class Mismatch:
    degree: tuple[int, int, int]
    weight: int
    computed: int
    expected: int


@dataclass(frozen=True)
class ComparisonReport:
    slices: int
    mismatches: tuple[Mismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_presentation(computed: Mapping[tuple[int, int, int], SliceHomology], expected: PresentedAlgebra,
                         max_s: int, max_m: int) -> ComparisonReport:
    """Per slice and weight, compare F2-dimensions with the presented algebra."""
    index = MonomialIndex(expected, max_m, max_s)
    keys = {k for k in computed if k[0] <= max_m and k[1] <= max_s}
    keys |= {k for k in index.groups if k[0] <= max_m and k[1] <= max_s}
    bad = []
    for k in sorted(keys):
        h = computed.get(k)
        sp = index.space(*k) if index.contains(k[0], k[1]) and k in index.groups else None
        ws = set()
        if h is not None and h.weights:
            ws |= set(range(h.weights[0] - 1, h.weights[1] + 2))
        if sp is not None and sp.mons:
            bps = sp.breakpoints()
            ws |= set(range(min(bps) - 1, max(bps) + 2))
        for w in sorted(ws):
            a = h.dim(w) if h is not None else 0
            b = sp.dim(w) if sp is not None else 0
            if a != b:
                bad.append(Mismatch(k, w, a, b))
    return ComparisonReport(len(keys), tuple(bad))


def einf_slice_sum(pages: Mapping[tuple[int, int, int], SliceHomology], s: int, f: int, w: int) -> int:
    """Sum over May filtration of E-infinity dimensions at (s, f, w)."""
    return sum(h.dim(w) for (m, s2, f2), h in pages.items() if s2 == s and f2 == f)


def _vector(page: "Page", p: Polynomial) -> tuple[MayDegree, int]:
    deg = page.alg.degree_of(p)
    sp = page.space(deg.m, deg.s, deg.f)
    v = 0
    for t in p.terms:
        v ^= 1 << sp.index[page.alg.exps(t)[0]]
    return deg, v


def is_cycle(page: "Page", p: Polynomial | str) -> bool:
    """Whether d(p) lies in the relation ideal."""
    p = page.alg.parse(p) if isinstance(p, str) else p
    if p.is_zero():
        return True
    deg, v = _vector(page, p)
    h = page._at(deg.m, deg.s, deg.f)
    return any(x == v for x in h._kernel(deg.w)) or _in_span(h._kernel(deg.w), v)


def is_boundary(page: "Page", p: Polynomial | str) -> bool:
    """Whether p is d of something plus a relation multiple."""
    p = page.alg.parse(p) if isinstance(p, str) else p
    if p.is_zero():
        return True
    deg, v = _vector(page, p)
    return page._at(deg.m, deg.s, deg.f)._boundaries(deg.w).contains(v)


def _in_span(vectors: Iterable[int], v: int) -> bool:
    e = Echelon()
    for x in vectors:
        e.add(x)
    return e.contains(v)


def differential_room(pages: Mapping[tuple[int, int, int], SliceHomology], r: int) -> list[tuple[tuple[int, int, int], int]]:
    """Slices where a d_r could be nonzero: source and target share a weight.

    Returns ((m, s, f), weight) for each source slice whose target
    (m - (r - 1), s - 1, f + 1) is nonzero in the same weight.
    """
    out = []
    for (m, s, f), h in pages.items():
        tgt = pages.get((m - (r - 1), s - 1, f + 1))
        if tgt is None or h.is_zero or tgt.is_zero:
            continue
        lo = min(h.weights[0], tgt.weights[0]) - 1
        hi = max(h.weights[1], tgt.weights[1])
        for w in range(lo, hi + 1):
            if h.dim(w) and tgt.dim(w):
                out.append(((m, s, f), w))
                break
    return out


def check_free_over(alg: PresentedAlgebra, elements: Sequence[str], max_s: int, max_m: int) -> list[Mismatch]:
    """Test freeness over M2[elements] by counting dimensions.

    With B = alg / (elements), a free module has, in every slice and weight,
    dimension equal to the sum of B's dimensions shifted by all monomials in
    the elements.  Returns the slices where the counts differ.
    """
    quotient = alg.with_relations(elements, name=f"{alg.name}/({', '.join(elements)})")
    full = MonomialIndex(alg, max_m, max_s)
    base = MonomialIndex(quotient, max_m, max_s)
    degs = [alg.degrees[n] for n in elements]

    shifts: list[MayDegree] = []

    def rec(i: int, acc: MayDegree) -> None:
        if acc.m > max_m or acc.s > max_s:
            return
        if i == len(degs):
            shifts.append(acc)
            return
        k = 0
        while True:
            d = acc + degs[i].scale(k)
            if d.m > max_m or d.s > max_s:
                break
            rec(i + 1, d)
            k += 1

    rec(0, MayDegree(0, 0, 0, 0))
    bad = []
    for key in sorted(full.groups):
        m, s, f = key
        sp = full.space(*key)
        bps = sp.breakpoints()
        for w in range(min(bps) - 1, max(bps) + 1):
            want = 0
            for sh in shifts:
                k2 = (m - sh.m, s - sh.s, f - sh.f)
                if k2 in base.groups:
                    want += base.space(*k2).dim(w - sh.w)
            got = sp.dim(w)
            if got != want:
                bad.append(Mismatch(key, w, got, want))
    return bad


def collapse_tau(alg: PresentedAlgebra, d: PageDifferential | None = None) -> tuple[PresentedAlgebra, PageDifferential | None]:
    """The classical page: all weights zero and tau set to 1."""

    def drop(p: Polynomial) -> Polynomial:
        return Polynomial(Monomial(0, m.powers) for m in p.terms)

    gens = [MayGenerator(g.name, MayDegree(g.degree.m, g.degree.s, g.degree.f, 0)) for g in alg.generators]
    cl = PresentedAlgebra(f"{alg.name}-classical", gens, [drop(r) for r in alg.relations])
    cd = PageDifferential(d.r, {n: drop(v) for n, v in d.values.items()}) if d else None
    return cl, cd
