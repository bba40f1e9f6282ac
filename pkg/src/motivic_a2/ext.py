"""Ext over A(2): dual cochain complexes, Yoneda and Massey products.

Hom_{A(2)}(F_f, M2) in internal degree t is free over M2 on the duals of the
generators of F_f in that degree.  The dual of g_j has weight w_j and tau
lowers weight, so the weight-w slice is the F2-span of the g_j with
w_j >= w.  An Ext element is stored as ``(f, t, w, vector)`` where the vector
is a bitset over the generators of F_f in degree t; multiplying by tau^k keeps
the vector and lowers w by k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .gf2 import Echelon, bits
from .resolution import Pair, RangeError, Resolution, _WeightedEchelon
from .tau_algebra import TAU_LOWERS, GradedTauMatrix, TauModuleDecomposition, homology_at


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ExtElement:
    f: int
    t: int
    w: int
    vec: int

    @property
    def s(self) -> int:
        return self.t - self.f

    @property
    def degree(self) -> tuple[int, int, int]:
        return (self.s, self.f, self.w)

    def tau(self, k: int = 1) -> "ExtElement":
        return ExtElement(self.f, self.t, self.w - k, self.vec)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        if (self.f, self.t, self.w) != (other.f, other.t, other.w):
            raise ValueError(f"cannot add elements of degrees {self.degree} and {other.degree}")
        return ExtElement(self.f, self.t, self.w, self.vec ^ other.vec)


@dataclass
class _Cochains:
    """C^f in internal degree t with its incoming and outgoing differentials."""

    f: int
    t: int
    gens: list[int]
    weights: list[int]
    delta_in: list[int]  # per generator of C^{f-1}: bitset over positions here
    in_weights: list[int]
    delta_out: list[int]  # per position here: bitset over C^{f+1} positions
    out_weights: list[int]
    boundaries: _WeightedEchelon = field(repr=False)
    cycles: list[tuple[int, int]] = field(repr=False)  # (birth weight, vector), decreasing birth

    def mask(self, w: int) -> int:
        return sum(1 << p for p, wp in enumerate(self.weights) if wp >= w)


class Ext:
    """Ext_{A(2)}(M2, M2) read off a resolution."""

    def __init__(self, res: Resolution) -> None:
        self.res = res
        self._cochains: dict[tuple[int, int], _Cochains] = {}
        self._lifts: dict[ExtElement, ChainMap] = {}

    @classmethod
    def compute(cls, max_t: int, max_f: int, classical: bool = False) -> "Ext":
        return cls(Resolution(max_t, max_f + 1, classical).extend(max_t))

    @property
    def max_f(self) -> int:
        return self.res.max_f - 1

    @property
    def max_t(self) -> int:
        return self.res.done_t

    def in_range(self, s: int, f: int) -> bool:
        return 0 <= f <= self.max_f and s + f <= self.max_t

    def _need(self, f: int, t: int, outgoing: bool = False) -> None:
        top = self.max_f if outgoing else self.res.max_f
        if f < 0 or f > top or t < 0 or t > self.max_t:
            raise RangeError(f"(s, f) = ({t - f}, {f}) is outside the computed range")

    # -- cochain complexes -----------------------------------------------

    def cochains(self, f: int, t: int) -> _Cochains:
        key = (f, t)
        c = self._cochains.get(key)
        if c is not None:
            return c
        self._need(f, t)
        res = self.res
        gens = res.gens_at(f, t)
        pos = {g: p for p, g in enumerate(gens)}
        weights = [res.gens[f][g][1] for g in gens]
        prev = res.gens_at(f - 1, t) if f > 0 else []
        prev_pos = {g: p for p, g in enumerate(prev)}
        delta_in = [0] * len(prev)
        for j in gens:
            for k, g in res.d[f][j]:
                if k == 0:
                    delta_in[prev_pos[g]] ^= 1 << pos[j]
        in_weights = [res.gens[f - 1][g][1] for g in prev]
        delta_out: list[int] = []
        out_weights: list[int] = []
        if f < res.max_f:
            nxt = res.gens_at(f + 1, t)
            out_weights = [res.gens[f + 1][g][1] for g in nxt]
            delta_out = [0] * len(gens)
            for q, j in enumerate(nxt):
                for k, g in res.d[f + 1][j]:
                    if k == 0:
                        delta_out[pos[g]] ^= 1 << q
        # Boundaries of weight >= w come from sources of weight >= w:
        # add sources by decreasing weight, keyed by negated weight.
        bnd = _WeightedEchelon()
        for i in sorted(range(len(prev)), key=lambda i: -in_weights[i]):
            bnd.add_weighted(delta_in[i], 1 << i, -in_weights[i])
        cycles = []
        if True:
            ech = Echelon()
            for p in sorted(range(len(gens)), key=lambda p: (-weights[p], p)):
                img = delta_out[p] if delta_out else 0
                r, tag = ech.reduce(img, 1 << p)
                if r:
                    ech.pivots[r.bit_length() - 1] = (r, tag)
                else:
                    cycles.append((weights[p], tag))
        c = _Cochains(f, t, gens, weights, delta_in, in_weights, delta_out, out_weights, bnd, cycles)
        self._cochains[key] = c
        return c

    def is_cocycle(self, x: ExtElement) -> bool:
        c = self.cochains(x.f, x.t)
        if x.vec & ~c.mask(x.w):
            return False
        acc = 0
        for p in bits(x.vec):
            acc ^= c.delta_out[p]
        return acc == 0

    def is_zero(self, x: ExtElement) -> bool:
        c = self.cochains(x.f, x.t)
        return c.boundaries.solve(x.vec, -x.w) is not None

    def equal(self, x: ExtElement, y: ExtElement) -> bool:
        return self.is_zero(x + y)

    def zero(self, s: int, f: int, w: int) -> ExtElement:
        return ExtElement(f, s + f, w, 0)

    def coboundary_preimage(self, x: ExtElement) -> int:
        """U in C^{f-1} of weight w with delta U = x, as a bitset over C^{f-1} positions."""
        c = self.cochains(x.f, x.t)
        tag = c.boundaries.solve(x.vec, -x.w)
        if tag is None:
            raise PreconditionError(f"class in degree {x.degree} is not zero")
        return tag

    # -- chart -----------------------------------------------------------

    def basis(self, s: int, f: int, w: int) -> list[ExtElement]:
        """An F2-basis of Ext^{s,f,w} (cocycles modulo coboundaries)."""
        t = s + f
        self._need(f, t, outgoing=True)
        c = self.cochains(f, t)
        ech = Echelon()
        # boundaries of weight >= w
        for lead, (v, _) in c.boundaries.pivots.items():
            if -c.boundaries.weights[lead] >= w:
                ech.add(v)
        out = []
        for birth, v in c.cycles:
            if birth >= w and ech.add(v):
                out.append(ExtElement(f, t, w, v))
        return out

    def dim(self, s: int, f: int, w: int) -> int:
        return len(self.basis(s, f, w))

    def coordinates(self, x: ExtElement, basis: list[ExtElement]) -> int | None:
        """Bitset of basis elements summing to x modulo coboundaries, or None."""
        c = self.cochains(x.f, x.t)
        ech = _WeightedEchelon()
        for lead, (v, _) in c.boundaries.pivots.items():
            if -c.boundaries.weights[lead] >= x.w:
                ech.add_weighted(v, 0, 0)
        for i, b in enumerate(basis):
            ech.add_weighted(b.vec, 1 << i, 0)
        return ech.solve(x.vec, 0)

    def module(self, s: int, f: int) -> TauModuleDecomposition:
        """Ext^{s,f,*} as an M2-module, via Smith normal form over F2[tau]."""
        t = s + f
        self._need(f, t, outgoing=True)
        c = self.cochains(f, t)
        lab = [((f, g), w) for g, w in zip(c.gens, c.weights)]
        prev = [((f - 1, i), w) for i, w in enumerate(c.in_weights)]
        nxt = [((f + 1, q), w) for q, w in enumerate(c.out_weights)]
        d_in = GradedTauMatrix.from_columns(lab, prev, c.delta_in, TAU_LOWERS)
        d_out = GradedTauMatrix.from_columns(nxt, lab, c.delta_out, TAU_LOWERS)
        return homology_at(d_in, d_out)

    def _boundary_echelon(self, c: _Cochains, w: int) -> Echelon:
        ech = Echelon()
        for lead, (v, _) in c.boundaries.pivots.items():
            if -c.boundaries.weights[lead] >= w:
                ech.add(v)
        return ech

    def tau_order(self, x: ExtElement, limit: int) -> int | None:
        """Least k <= limit with tau^k x = 0, or None if there is none."""
        for k in range(limit + 1):
            if self.is_zero(x.tau(k)):
                return k
        return None

    def generators(self, s: int, f: int) -> list[tuple[ExtElement, int | None]]:
        """Minimal M2-generators of Ext^{s,f,*} with their tau-orders (None if free).

        Within a weight, generators killed by tau^k are picked before those of
        larger order, so the cyclic submodules they generate are independent.
        """
        dec = self.module(s, f)
        limit = max((k for _, k in dec.torsion), default=0)
        weights = sorted(set(dec.free) | {w for w, _ in dec.torsion}, reverse=True)
        c = self.cochains(f, s + f)
        out: list[tuple[ExtElement, int | None]] = []
        for w in weights:
            basis = self.basis(s, f, w)
            ech = self._boundary_echelon(c, w)
            for y in self.basis(s, f, w + 1):
                ech.add(y.vec)
            orders: list[int | None] = [*range(1, limit + 1), None]
            for k in orders:
                cands = basis if k is None else self._tau_kernel(c, basis, w - k)
                for x in cands:
                    if ech.add(x.vec):
                        out.append((x, k))
        return out

    def _tau_kernel(self, c: _Cochains, basis: list[ExtElement], w: int) -> list[ExtElement]:
        """Basis of the span of ``basis`` elements that vanish at weight ``w``."""
        ech = self._boundary_echelon(c, w)
        out = []
        for i, b in enumerate(basis):
            r, tag = ech.reduce(b.vec, 1 << i)
            if r:
                ech.pivots[r.bit_length() - 1] = (r, tag)
            else:
                vec = 0
                for j in bits(tag):
                    vec ^= basis[j].vec
                out.append(ExtElement(b.f, b.t, b.w, vec))
        return out

    def chart(self, max_s: int | None = None) -> dict[tuple[int, int], TauModuleDecomposition]:
        out = {}
        for f in range(self.max_f + 1):
            for t in range(f, self.max_t + 1):
                s = t - f
                if max_s is not None and s > max_s:
                    continue
                m = self.module(s, f)
                if not m.is_zero:
                    out[(s, f)] = m
        return out

    # -- products --------------------------------------------------------

    def lift(self, x: ExtElement) -> "ChainMap":
        cm = self._lifts.get(x)
        if cm is None:
            if not self.is_cocycle(x):
                raise ValueError(f"not a cocycle in degree {x.degree}")
            cm = ChainMap(self.res, x)
            self._lifts[x] = cm
        return cm

    def evaluate(self, cochain: int, f: int, t: int, element: Iterable[Pair]) -> int:
        """Value (0 or 1) of a cochain on C^f(t) applied to an element of F_f."""
        gens = self.cochains(f, t).gens
        supp = {gens[p] for p in bits(cochain)}
        n = 0
        for k, g in element:
            if k == 0 and g in supp:
                n ^= 1
        return n

    def multiply(self, x: ExtElement, y: ExtElement) -> ExtElement:
        """Yoneda product: lift x to a chain map and compose with y's cocycle."""
        if x.vec == 0 or y.vec == 0:
            return ExtElement(x.f + y.f, x.t + y.t, x.w + y.w, 0)
        f, t, w = x.f + y.f, x.t + y.t, x.w + y.w
        self._need(f, t)
        phi = self.lift(x)
        target = self.cochains(f, t)
        out = 0
        for p, g in enumerate(target.gens):
            if target.weights[p] < w:
                continue
            if self.evaluate(y.vec, y.f, y.t, phi.at(y.f, g)):
                out |= 1 << p
        return ExtElement(f, t, w, out)

    def massey(self, a: ExtElement, b: ExtElement, c: ExtElement) -> "MasseyProduct":
        """Triple Massey product <a, b, c> with its indeterminacy."""
        ab = self.multiply(a, b)
        if not self.is_zero(ab):
            raise PreconditionError(f"a*b is nonzero in degree {ab.degree}")
        bc = self.multiply(b, c)
        if not self.is_zero(bc):
            raise PreconditionError(f"b*c is nonzero in degree {bc.degree}")
        res = self.res
        f = a.f + b.f + c.f - 1
        t, w = a.t + b.t + c.t, a.w + b.w + c.w
        self._need(f, t)
        U = self.coboundary_preimage(ab)  # on C^{fa+fb-1}(ta+tb)
        V = self.coboundary_preimage(bc)  # on C^{fb+fc-1}(tb+tc)
        B, C = self.lift(b), self.lift(c)
        H = NullHomotopy(self, B, C, V, b.f + c.f - 1, b.t + c.t, b.w + c.w)
        target = self.cochains(f, t)
        out = 0
        for p, g in enumerate(target.gens):
            if target.weights[p] < w:
                continue
            v = self.evaluate(a.vec, a.f, a.t, H.at(a.f, g))
            v ^= self.evaluate(U, a.f + b.f - 1, a.t + b.t, C.at(a.f + b.f - 1, g))
            if v:
                out |= 1 << p
        rep = ExtElement(f, t, w, out)
        assert self.is_cocycle(rep)
        indet = self._indeterminacy(a, b, c)
        return MasseyProduct(rep, indet)

    def _indeterminacy(self, a: ExtElement, b: ExtElement, c: ExtElement) -> list[ExtElement]:
        left = self.basis(b.s + c.s + 1, b.f + c.f - 1, b.w + c.w) if b.f + c.f - 1 >= 0 else []
        right = self.basis(a.s + b.s + 1, a.f + b.f - 1, a.w + b.w) if a.f + b.f - 1 >= 0 else []
        span = Echelon()
        c0 = None
        out = []
        for y in left:
            p = self.multiply(a, y)
            out.append(p)
        for x in right:
            out.append(self.multiply(x, c))
        if not out:
            return []
        c0 = self.cochains(out[0].f, out[0].t)
        for lead, (v, _) in c0.boundaries.pivots.items():
            if -c0.boundaries.weights[lead] >= out[0].w:
                span.add(v)
        return [p for p in out if span.add(p.vec)]


@dataclass(frozen=True)
class MasseyProduct:
    representative: ExtElement
    indeterminacy: list[ExtElement]

    @property
    def zero_indeterminacy(self) -> bool:
        return not self.indeterminacy


class ChainMap:
    """Lift of a cocycle x on F_{f_x} to maps F_{f_x + k} -> F_k, built lazily."""

    def __init__(self, res: Resolution, x: ExtElement) -> None:
        self.res = res
        self.x = x
        gens = res.gens_at(x.f, x.t)
        self.support = {gens[p] for p in bits(x.vec)}
        self._memo: dict[tuple[int, int], dict[Pair, None]] = {}

    def at(self, k: int, g: int) -> dict[Pair, None]:
        """Image of generator g of F_{f_x + k} in F_k."""
        key = (k, g)
        memo = self._memo
        if key in memo:
            return memo[key]
        res, x = self.res, self.x
        tg, wg = res.gens[x.f + k][g]
        if k == 0:
            out = {(0, 0): None} if g in self.support else {}
            if out:
                assert wg >= x.w
        else:
            y = self.apply(k - 1, res.d[x.f + k][g])
            out = res.lift(k, tg - x.t, wg - x.w, y) if y else {}
        memo[key] = out
        return out

    def apply(self, k: int, element: Iterable[Pair]) -> dict[Pair, None]:
        """Image under the level-k map of an element of F_{f_x + k}."""
        acc: dict[Pair, None] = {}
        res = self.res
        for b, h in element:
            img = self.at(k, h)
            if not img:
                continue
            for p in (res.times(b, img) if b else img):
                if p in acc:
                    del acc[p]
                else:
                    acc[p] = None
        return acc


class NullHomotopy:
    """H_n: F_{n+m} -> F_n with d H + H d = B C, where m = f_b + f_c - 1.

    The base map is determined by the cochain V with delta V = b C.
    """

    def __init__(self, ext: Ext, B: ChainMap, C: ChainMap, V: int, m: int, t: int, w: int) -> None:
        self.ext = ext
        self.res = ext.res
        self.B, self.C = B, C
        self.m, self.t, self.w = m, t, w
        gens = self.res.gens_at(m, t)
        self.support = {gens[p] for p in bits(V)}
        self._memo: dict[tuple[int, int], dict[Pair, None]] = {}

    def at(self, n: int, g: int) -> dict[Pair, None]:
        key = (n, g)
        if key in self._memo:
            return self._memo[key]
        res = self.res
        tg, wg = res.gens[n + self.m][g]
        if n == 0:
            out = {(0, 0): None} if (tg == self.t and g in self.support) else {}
        else:
            # B_{n-1} C_{n-1+f_b} (g) + H_{n-1}(d g)
            fb = self.B.x.f
            cg = self.C.at(n - 1 + fb, g)
            acc = self.B.apply(n - 1, cg) if cg else {}
            for p in self.apply(n - 1, res.d[n + self.m][g]):
                if p in acc:
                    del acc[p]
                else:
                    acc[p] = None
            out = res.lift(n, tg - self.t, wg - self.w, acc) if acc else {}
        self._memo[key] = out
        return out

    def apply(self, n: int, element: Iterable[Pair]) -> dict[Pair, None]:
        acc: dict[Pair, None] = {}
        for b, h in element:
            img = self.at(n, h)
            if not img:
                continue
            for p in (self.res.times(b, img) if b else img):
                if p in acc:
                    del acc[p]
                else:
                    acc[p] = None
        return acc
