"""Motivic Steenrod algebra arithmetic restricted to A(2).

Elements are F2[tau]-combinations of admissible monomials Sq^{a1}...Sq^{ak}
(a_i >= 2 a_{i+1}).  Because every element is homogeneous in (t, w), each
admissible monomial occurs with a single power of tau, stored as an exponent.

With ``classical=True`` all weights are zero, tau never appears and the same
code computes in the classical Steenrod algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .gf2 import Echelon, bits
from .tau_algebra import ONE, ZERO, TauScalar

Word = tuple[int, ...]

A2_GENERATORS = (1, 2, 4)
A2_TOP_DEGREE = 23


def sq_weight(a: int, classical: bool = False) -> int:
    return 0 if classical else a // 2


def word_degree(word: Iterable[int], classical: bool = False) -> tuple[int, int]:
    word = tuple(word)
    return sum(word), sum(sq_weight(a, classical) for a in word)


def binom_mod2(n: int, k: int) -> int:
    """C(n, k) mod 2 by Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


def is_admissible(word: Word) -> bool:
    return all(word[i] >= 2 * word[i + 1] for i in range(len(word) - 1))


def adem_tau_exponent(a: int, b: int, c: int) -> int:
    """Power of tau on Sq^{a+b-c} Sq^c in the motivic Adem relation for Sq^a Sq^b."""
    if not (0 < a < 2 * b and 0 <= c <= a // 2):
        raise ValueError(f"Adem relation undefined for (a, b, c) = ({a}, {b}, {c})")
    e = a // 2 + b // 2 - (a + b - c) // 2 - c // 2
    assert e in (0, 1), f"tau exponent {e} out of range for ({a},{b},{c})"
    return e


def _adem_pair(a: int, b: int, classical: bool) -> list[tuple[Word, int]]:
    out = []
    for c in range(a // 2 + 1):
        if binom_mod2(b - 1 - c, a - 2 * c):
            e = 0 if classical else adem_tau_exponent(a, b, c)
            word = (a + b - c, c) if c else (a + b,)
            out.append((word, e))
    return out


def _accumulate(acc: dict[Word, int], word: Word, e: int) -> None:
    old = acc.get(word)
    if old is None:
        acc[word] = e
    else:
        assert old == e, "inhomogeneous accumulation"
        del acc[word]


@lru_cache(maxsize=None)
def _reduce(word: Word, classical: bool) -> tuple[tuple[Word, int], ...]:
    # Leftmost inadmissible pair first.
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a < 2 * b:
            break
    else:
        return ((word, 0),)
    acc: dict[Word, int] = {}
    head, tail = word[:i], word[i + 2:]
    for mid, e in _adem_pair(a, b, classical):
        for w2, e2 in _reduce(head + mid + tail, classical):
            _accumulate(acc, w2, e + e2)
    return tuple(sorted(acc.items()))


class SteenrodElement:
    """Homogeneous element: admissible word -> tau exponent, plus bidegree (t, w)."""

    __slots__ = ("t", "w", "_terms", "classical")

    def __init__(self, t: int, w: int, terms: Mapping[Word, int] | None = None, classical: bool = False) -> None:
        self.t = t
        self.w = w
        self.classical = classical
        self._terms = dict(terms or {})
        for word, e in self._terms.items():
            wt, ww = word_degree(word, classical)
            if wt != t or ww + e != w or e < 0:
                raise ValueError(f"term tau^{e} Sq{word} is not of bidegree ({t},{w})")
            if not is_admissible(word):
                raise ValueError(f"Sq{word} is not admissible")

    @property
    def terms(self) -> Mapping[Word, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "SteenrodElement") -> "SteenrodElement":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.t, self.w) != (other.t, other.w):
            raise ValueError("cannot add elements of different bidegree")
        acc = dict(self._terms)
        for word, e in other._terms.items():
            _accumulate(acc, word, e)
        return SteenrodElement(self.t, self.w, acc, self.classical)

    def __mul__(self, other: "SteenrodElement") -> "SteenrodElement":
        return multiply(self, other)

    def times_tau(self, k: int) -> "SteenrodElement":
        if self.classical:
            return self
        return SteenrodElement(self.t, self.w + k, {w: e + k for w, e in self._terms.items()}, self.classical)

    def at_tau_one(self) -> frozenset[Word]:
        return frozenset(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteenrodElement):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self.t, self.w, self._terms) == (other.t, other.w, other._terms)

    def __hash__(self) -> int:
        return hash((self.t, self.w, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, e in sorted(self._terms.items()):
            coef = "" if e == 0 else ("tau " if e == 1 else f"tau^{e} ")
            mono = "".join(f"Sq{a}" for a in word) or "1"
            parts.append(coef + mono)
        return " + ".join(parts)


def unit(classical: bool = False) -> SteenrodElement:
    return SteenrodElement(0, 0, {(): 0}, classical)


def zero(t: int = 0, w: int = 0, classical: bool = False) -> SteenrodElement:
    return SteenrodElement(t, w, {}, classical)


def adem_rewrite(word: Iterable[int], classical: bool = False) -> SteenrodElement:
    word = tuple(a for a in word if a != 0)
    if any(a < 0 for a in word):
        raise ValueError("negative Steenrod square")
    t, w = word_degree(word, classical)
    return SteenrodElement(t, w, dict(_reduce(word, classical)), classical)


def sq(*indices: int, classical: bool = False) -> SteenrodElement:
    return adem_rewrite(indices, classical)


def multiply(x: SteenrodElement, y: SteenrodElement) -> SteenrodElement:
    if x.classical != y.classical:
        raise ValueError("cannot multiply motivic and classical elements")
    t, w = x.t + y.t, x.w + y.w
    acc: dict[Word, int] = {}
    for wx, ex in x._terms.items():
        for wy, ey in y._terms.items():
            for word, e in _reduce(wx + wy, x.classical):
                _accumulate(acc, word, e + ex + ey)
    return SteenrodElement(t, w, acc, x.classical)


def augmentation(x: SteenrodElement) -> TauScalar:
    e = x._terms.get(())
    return ZERO if e is None else TauScalar(e)


def a2_basis(max_t: int, classical: bool = False) -> dict[tuple[int, int], list[SteenrodElement]]:
    """An M2-basis of A(2) in topological degrees <= max_t, keyed by (t, w).

    Degree t is spanned by Sq^i * (basis in degree t - i), i in {1, 2, 4}.
    Candidates are taken in increasing weight and kept when independent of
    the tau=1 span of those already kept, which for a tau-free algebra is an
    M2-basis.
    """
    if max_t < 0:
        raise ValueError("max_t must be non-negative")
    by_t: dict[int, list[SteenrodElement]] = {0: [unit(classical)]}
    gens = {i: sq(i, classical=classical) for i in A2_GENERATORS}
    for t in range(1, max_t + 1):
        cands = []
        for i in A2_GENERATORS:
            for n, b in enumerate(by_t.get(t - i, [])):
                p = multiply(gens[i], b)
                if not p.is_zero():
                    cands.append(((p.w, i, n), p))
        cands.sort(key=lambda kv: kv[0])
        index: dict[Word, int] = {}
        ech = Echelon()
        kept = []
        for _, p in cands:
            v = 0
            for word in p.at_tau_one():
                v ^= 1 << index.setdefault(word, len(index))
            if ech.add(v):
                kept.append(p)
        if kept:
            by_t[t] = kept
    out: dict[tuple[int, int], list[SteenrodElement]] = {}
    for t in sorted(by_t):
        for b in by_t[t]:
            out.setdefault((t, b.w), []).append(b)
    return out


def total_rank(basis: Mapping[tuple[int, int], list[SteenrodElement]]) -> int:
    return sum(len(v) for v in basis.values())


@dataclass(frozen=True)
class A2Tables:
    """A fixed M2-basis of A(2) with its multiplication table.

    ``mult[i][j]`` is a bitset over basis indices giving b_i * b_j at tau = 1;
    the tau exponents follow from weights.  Index 0 is the unit.
    """

    elements: tuple[SteenrodElement, ...]
    degree: tuple[int, ...]
    weight: tuple[int, ...]
    by_degree: Mapping[int, tuple[int, ...]]
    mult: tuple[tuple[int, ...], ...]
    classical: bool

    @property
    def top_degree(self) -> int:
        return max(self.degree)

    def generator_index(self, i: int) -> int:
        """Basis index of Sq^i for i in (1, 2, 4)."""
        target = sq(i, classical=self.classical)
        for k in self.by_degree.get(i, ()):
            if self.elements[k] == target:
                return k
        raise KeyError(i)

    def express(self, x: SteenrodElement) -> int:
        """Coordinates of ``x`` in the basis as a bitset (tau powers implicit)."""
        if x.is_zero():
            return 0
        ech, index = self._solver(x.t)
        v = 0
        for word in x.at_tau_one():
            if word not in index:
                raise ValueError(f"{x} is not in A(2)")
            v ^= 1 << index[word]
        r, tag = ech.reduce(v)
        if r:
            raise ValueError(f"{x} is not in A(2)")
        return tag

    def _solver(self, t: int) -> tuple[Echelon, dict[Word, int]]:
        cache = _SOLVERS.setdefault(id(self), {})
        if t not in cache:
            index: dict[Word, int] = {}
            ech = Echelon()
            for k in self.by_degree.get(t, ()):
                v = 0
                for word in self.elements[k].at_tau_one():
                    v ^= 1 << index.setdefault(word, len(index))
                ech.add(v, 1 << k)
            cache[t] = (ech, index)
        return cache[t]


_SOLVERS: dict[int, dict[int, tuple[Echelon, dict[Word, int]]]] = {}


@lru_cache(maxsize=2)
def a2_tables(classical: bool = False) -> A2Tables:
    basis = a2_basis(A2_TOP_DEGREE, classical)
    elements = [b for key in sorted(basis) for b in basis[key]]
    degree = tuple(b.t for b in elements)
    weight = tuple(b.w for b in elements)
    by_degree: dict[int, list[int]] = {}
    for k, t in enumerate(degree):
        by_degree.setdefault(t, []).append(k)
    tables = A2Tables(
        tuple(elements), degree, weight, {t: tuple(v) for t, v in by_degree.items()}, (), classical
    )
    n = len(elements)
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            if degree[i] + degree[j] > A2_TOP_DEGREE:
                row.append(0)
                continue
            p = multiply(elements[i], elements[j])
            v = tables.express(p)
            for k in bits(v):
                assert weight[k] <= weight[i] + weight[j]
            row.append(v)
        mult.append(tuple(row))
    object.__setattr__(tables, "mult", tuple(mult))
    return tables
