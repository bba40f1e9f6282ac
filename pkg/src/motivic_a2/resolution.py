"""Minimal free resolution of M2 over A(2).

A free A(2)-module in internal degree t has F2-basis tau^e * b_k * g, with
b_k running over the M2-basis of A(2).  Because tau only shifts weight, the
weight-w slice is the tau=1 span of the basis elements b_k g of weight <= w.
Kernels, images and preimages are therefore computed once per internal
degree by elimination in increasing weight, and every slice is read off as a
prefix.
"""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass, field
from pathlib import Path

from .gf2 import Echelon, bits
from .steenrod import A2Tables, a2_tables

FORMAT_TAG = "motivic-a2-resolution/1"

Pair = tuple[int, int]  # (A(2) basis index, generator index)


class RangeError(ValueError):
    """A request falls outside the computed range of a resolution."""


@dataclass
class _Slice:
    """F_f in internal degree t: weight-ordered basis of pairs."""

    pairs: list[Pair]
    index: dict[Pair, int]
    weights: list[int]


@dataclass
class Resolution:
    max_t: int
    max_f: int
    classical: bool = False
    tables: A2Tables = field(init=False, repr=False)
    gens: list[list[tuple[int, int]]] = field(init=False, repr=False)
    d: list[list[tuple[Pair, ...]]] = field(init=False, repr=False)
    done_t: int = field(init=False, default=-1)

    def __post_init__(self) -> None:
        self.tables = a2_tables(self.classical)
        self.gens = [[(0, 0)]] + [[] for _ in range(self.max_f)]
        self.d = [[()]] + [[] for _ in range(self.max_f)]
        self._slices: dict[tuple[int, int], _Slice] = {}
        self._solvers: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        self._gens_at: dict[tuple[int, int], list[int]] = {}

    # -- bookkeeping -----------------------------------------------------

    def gens_at(self, f: int, t: int) -> list[int]:
        key = (f, t)
        if key not in self._gens_at:
            self._gens_at[key] = [i for i, (tg, _) in enumerate(self.gens[f]) if tg == t]
        return self._gens_at[key]

    def _check_range(self, f: int, t: int) -> None:
        if f < 0 or f > self.max_f or t > self.done_t:
            raise RangeError(f"(f, t) = ({f}, {t}) outside computed range f<={self.max_f}, t<={self.done_t}")

    def slice(self, f: int, t: int) -> _Slice:
        self._check_range(f, t)
        key = (f, t)
        s = self._slices.get(key)
        if s is None:
            s = self._build_slice(f, t, len(self.gens[f]))
            self._slices[key] = s
        return s

    def _build_slice(self, f: int, t: int, ngens: int) -> _Slice:
        tb = self.tables
        items = []
        for g in range(ngens):
            tg, wg = self.gens[f][g]
            if tg > t:
                continue
            for k in tb.by_degree.get(t - tg, ()):
                items.append((tb.weight[k] + wg, g, k))
        items.sort()
        pairs = [(k, g) for _, g, k in items]
        return _Slice(pairs, {p: i for i, p in enumerate(pairs)}, [w for w, _, _ in items])

    def times(self, k: int, element: tuple[Pair, ...] | frozenset) -> dict[Pair, None]:
        """b_k * element, as a set of pairs (dict used as an ordered set)."""
        mult = self.tables.mult[k]
        acc: dict[Pair, None] = {}
        for k2, g in element:
            for k3 in bits(mult[k2]):
                p = (k3, g)
                if p in acc:
                    del acc[p]
                else:
                    acc[p] = None
        return acc

    def boundary_vector(self, f: int, t: int, pair: Pair, target: _Slice) -> int:
        """d(b_k g) for g in F_f, as a bitset over ``target`` (F_{f-1} in degree t)."""
        k, g = pair
        v = 0
        idx = target.index
        for p in self.times(k, self.d[f][g]):
            v ^= 1 << idx[p]
        return v

    # -- construction ----------------------------------------------------

    def extend(self, max_t: int | None = None) -> "Resolution":
        """Compute all generators in internal degrees up to ``max_t``."""
        if max_t is None:
            max_t = self.max_t
        self.max_t = max(self.max_t, max_t)
        for t in range(self.done_t + 1, max_t + 1):
            for f in range(1, self.max_f + 1):
                self._step(f, t)
            self.done_t = t
        return self

    def _kernel_of_target(self, f: int, t: int, tgt: _Slice) -> list[tuple[int, int]]:
        """Weight-ordered kernel basis of d_{f-1} on F_{f-1}(t) as (birth weight, bitset)."""
        if f == 1:
            if t == 0:
                return []
            return [(w, 1 << i) for i, w in enumerate(tgt.weights)]
        lower = self._build_slice(f - 2, t, len(self.gens[f - 2]))
        ech = Echelon()
        out = []
        for i, pair in enumerate(tgt.pairs):
            r, tag = ech.reduce(self.boundary_vector(f - 1, t, pair, lower), 1 << i)
            if r:
                ech.pivots[r.bit_length() - 1] = (r, tag)
            else:
                out.append((tgt.weights[i], tag))
        return out

    def _step(self, f: int, t: int) -> None:
        tgt = self._build_slice(f - 1, t, len(self.gens[f - 1]))
        kernel = self._kernel_of_target(f, t, tgt)
        if not kernel:
            return
        src = self._build_slice(f, t, len(self.gens[f]))
        images = [(src.weights[i], self.boundary_vector(f, t, p, tgt)) for i, p in enumerate(src.pairs)]
        ech = Echelon()
        pos = 0
        new = []
        for birth, vec in kernel:
            while pos < len(images) and images[pos][0] <= birth:
                ech.add(images[pos][1])
                pos += 1
            if ech.add(vec):
                new.append((birth, vec))
        for w, vec in new:
            self.gens[f].append((t, w))
            self.d[f].append(tuple(tgt.pairs[i] for i in bits(vec)))
        if new:
            self._gens_at.pop((f, t), None)

    # -- solving d x = y -------------------------------------------------

    def _solver(self, f: int, t: int) -> Echelon:
        key = (f, t)
        ech = self._solvers.get(key)
        if ech is None:
            src = self.slice(f, t)
            ech = _WeightedEchelon()
            if f == 0:
                for i, w in enumerate(src.weights):
                    if src.pairs[i][0] == 0:
                        ech.add_weighted(1, 1 << i, w)
            else:
                tgt = self.slice(f - 1, t)
                for i, pair in enumerate(src.pairs):
                    ech.add_weighted(self.boundary_vector(f, t, pair, tgt), 1 << i, src.weights[i])
            self._solvers[key] = ech
        return ech

    def lift(self, f: int, t: int, w: int, y: dict[Pair, None] | set) -> dict[Pair, None]:
        """Some x in F_f(t) of weight w with d x = y (y in F_{f-1}), or raise."""
        if not y:
            return {}
        tgt = self.slice(f - 1, t) if f > 0 else None
        if f == 0:
            raise ValueError("use the augmentation to lift into F_0")
        v = 0
        for p in y:
            v ^= 1 << tgt.index[p]
        tag = self._solver(f, t).solve(v, w)
        if tag is None:
            raise ArithmeticError(f"no preimage in F_{f}({t}, w={w}): resolution not exact here")
        src = self.slice(f, t)
        return {src.pairs[i]: None for i in bits(tag)}

    # -- checks ----------------------------------------------------------

    def check_complex(self, f: int, t: int) -> bool:
        """d_{f-1} d_f = 0 on F_f(t)."""
        if f < 2:
            if f == 1:
                return all(
                    not any(k == 0 for k, _ in self.d[1][g]) for g in range(len(self.gens[1]))
                )
            return True
        src, mid = self.slice(f, t), self.slice(f - 1, t)
        low = self.slice(f - 2, t)
        for pair in src.pairs:
            img = {mid.pairs[i]: None for i in bits(self.boundary_vector(f, t, pair, mid))}
            acc = 0
            for p in img:
                acc ^= self.boundary_vector(f - 1, t, p, low)
            if acc:
                return False
        return True

    def exactness_defect(self, f: int, t: int) -> dict[int, int]:
        """Per weight, dim ker d_f - dim im d_{f+1} at F_f(t); empty when exact."""
        mid = self.slice(f, t)
        top = self.slice(f + 1, t)
        if f == 0:
            kern = [] if t == 0 else [(w, 1 << i) for i, w in enumerate(mid.weights)]
        else:
            low = self.slice(f - 1, t)
            kern = []
            ech = Echelon()
            for i, pair in enumerate(mid.pairs):
                r, tag = ech.reduce(self.boundary_vector(f, t, pair, low), 1 << i)
                if r:
                    ech.pivots[r.bit_length() - 1] = (r, tag)
                else:
                    kern.append((mid.weights[i], tag))
        imgs = [(top.weights[i], self.boundary_vector(f + 1, t, p, mid)) for i, p in enumerate(top.pairs)]
        weights = sorted(set(mid.weights) | set(top.weights))
        defect = {}
        for w in weights:
            k = sum(1 for b, _ in kern if b <= w)
            e = Echelon()
            r = sum(1 for wi, v in imgs if wi <= w and e.add(v))
            if k != r:
                defect[w] = k - r
        return defect

    def unit_entries(self, f: int, t: int) -> list[tuple[int, list[int]]]:
        """For each generator g_j of F_f in degree t: generators g_i of F_{f-1} with a unit coefficient."""
        out = []
        for j in self.gens_at(f, t):
            out.append((j, sorted(g for k, g in self.d[f][j] if k == 0)))
        return out

    def num_gens(self, f: int) -> int:
        return len(self.gens[f])

    # -- checkpoints -----------------------------------------------------

    def save(self, path: str | Path) -> None:
        payload = {
            "format": FORMAT_TAG,
            "classical": self.classical,
            "max_t": self.max_t,
            "max_f": self.max_f,
            "done_t": self.done_t,
            "modules": [
                [
                    {"t": t, "w": w, "d": [[self._word(k), self._tau(f, g, k, gi), gi] for k, gi in self.d[f][g]]}
                    for g, (t, w) in enumerate(self.gens[f])
                ]
                for f in range(self.max_f + 1)
            ],
        }
        with gzip.open(path, "wt", encoding="utf-8") as fh:
            json.dump(payload, fh)

    def _word(self, k: int) -> list[list[int]]:
        return sorted([list(word), e] for word, e in self.tables.elements[k].terms.items())

    def _tau(self, f: int, g: int, k: int, gi: int) -> int:
        if f == 0:
            return 0
        return self.gens[f][g][1] - self.tables.weight[k] - self.gens[f - 1][gi][1]

    @classmethod
    def load(cls, path: str | Path) -> "Resolution":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            payload = json.load(fh)
        if payload.get("format") != FORMAT_TAG:
            raise ValueError(f"unknown resolution format {payload.get('format')!r}")
        res = cls(payload["max_t"], payload["max_f"], payload["classical"])
        lookup = {
            tuple(tuple((tuple(wd), e)) for wd, e in res._word_key(k)): k
            for k in range(len(res.tables.elements))
        }
        for f, mod in enumerate(payload["modules"]):
            if f == 0:
                continue
            for g in mod:
                res.gens[f].append((g["t"], g["w"]))
                entries = []
                for word, e, gi in g["d"]:
                    key = tuple(tuple((tuple(wd), ee)) for wd, ee in word)
                    entries.append((lookup[key], gi))
                    if e < 0:
                        raise ValueError("negative tau exponent in checkpoint")
                res.d[f].append(tuple(entries))
        res.done_t = payload["done_t"]
        return res

    def _word_key(self, k: int) -> list[tuple[list[int], int]]:
        return sorted((list(word), e) for word, e in self.tables.elements[k].terms.items())


class _WeightedEchelon(Echelon):
    """Echelon whose pivots remember the weight of the input they came from.

    Inputs are added in non-decreasing weight, so the pivots of weight <= w
    form an echelon basis of the weight-w slice of the image.
    """

    __slots__ = ("weights",)

    def __init__(self) -> None:
        super().__init__()
        self.weights: dict[int, int] = {}

    def add_weighted(self, v: int, tag: int, w: int) -> None:
        v, tag = self.reduce(v, tag)
        if v:
            lead = v.bit_length() - 1
            self.pivots[lead] = (v, tag)
            self.weights[lead] = w

    def solve(self, v: int, w: int) -> int | None:
        tag = 0
        pivots, weights = self.pivots, self.weights
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None or weights[lead] > w:
                return None
            v ^= p[0]
            tag ^= p[1]
        return tag
