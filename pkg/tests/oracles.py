"""Independent reference implementations used only by the tests."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from motivic_a2.tau_algebra import TAU_LOWERS, GradedTauMatrix


# -- classical Steenrod algebra, written without the package's rewriting code --

def _choose_odd(n: int, k: int) -> bool:
    if k < 0 or n < 0 or k > n:
        return False
    num = 1
    for i in range(k):
        num = num * (n - i) // (i + 1)
    return num % 2 == 1


@lru_cache(maxsize=None)
def classical_admissible(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Admissible expansion of a classical Steenrod word, by rightmost-first Adem rewriting."""
    word = tuple(a for a in word if a)
    for i in range(len(word) - 2, -1, -1):
        a, b = word[i], word[i + 1]
        if a < 2 * b:
            out: set[tuple[int, ...]] = set()
            for c in range(a // 2 + 1):
                if _choose_odd(b - 1 - c, a - 2 * c):
                    for w in classical_admissible(word[:i] + (a + b - c, c) + word[i + 2:]):
                        out ^= {w}
            return frozenset(out)
    return frozenset({word})


def a2_dimensions_by_adem(max_t: int) -> dict[int, int]:
    """Dimension of A(2) in each degree: span of words in Sq1, Sq2, Sq4 reduced to admissibles."""
    words: dict[int, set[tuple[int, ...]]] = {0: {()}}
    for t in range(1, max_t + 1):
        words[t] = {w + (g,) for g in (1, 2, 4) if t - g >= 0 for w in words[t - g]}
    dims = {}
    for t, ws in words.items():
        index: dict[tuple[int, ...], int] = {}
        pivots: dict[int, int] = {}
        for w in ws:
            v = 0
            for adm in classical_admissible(w):
                v ^= 1 << index.setdefault(adm, len(index))
            while v:
                lead = v.bit_length() - 1
                if lead not in pivots:
                    pivots[lead] = v
                    break
                v ^= pivots[lead]
        dims[t] = len(pivots)
    return dims


def a2_dimensions_by_milnor(max_t: int) -> dict[int, int]:
    """Coefficients of (1 + ... + t^7)(1 + t^3 + t^6 + t^9)(1 + t^7)."""
    dims = {t: 0 for t in range(max_t + 1)}
    for i, j, k in product(range(8), range(4), range(2)):
        t = i + 3 * j + 7 * k
        if t <= max_t:
            dims[t] += 1
    return dims


# -- F2[tau] matrices checked weight by weight --

def present(w: int, w0: int, sign: int) -> bool:
    """Is the weight-w part of a free generator in weight w0 nonzero?"""
    return sign * (w - w0) >= 0


def weight_rank(mat: GradedTauMatrix, w: int) -> int:
    """F2-rank of the matrix restricted to weight w."""
    pivots: dict[int, int] = {}
    r = 0
    for c, col in enumerate(mat.columns):
        if not present(w, mat.cols[c][1], mat.tau_sign):
            continue
        v = col
        while v:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = v
                r += 1
                break
            v ^= pivots[lead]
    return r


def weight_window(*mats: GradedTauMatrix) -> range:
    ws = [l[1] for m in mats for l in m.rows + m.cols]
    if not ws:
        return range(0)
    return range(min(ws) - 2, max(ws) + 3)


def random_matrix(rng: random.Random, n_rows: int, n_cols: int, max_w: int = 5,
                  sign: int = TAU_LOWERS, density: float = 0.5) -> GradedTauMatrix:
    rows = [(i, rng.randint(0, max_w)) for i in range(n_rows)]
    cols = [(j, rng.randint(0, max_w)) for j in range(n_cols)]
    columns = []
    for _, wc in cols:
        v = 0
        for i, (_, wr) in enumerate(rows):
            if sign * (wc - wr) >= 0 and rng.random() < density:
                v |= 1 << i
        columns.append(v)
    return GradedTauMatrix.from_columns(rows, cols, columns, sign)


def random_kernel_columns(rng: random.Random, mat: GradedTauMatrix, count: int) -> list[tuple[int, int]]:
    """Homogeneous kernel elements of ``mat`` as (weight, bitset over its columns)."""
    ws = sorted({w for _, w in mat.cols})
    out = []
    for _ in range(count):
        if not ws:
            break
        w = rng.choice(ws)
        idx = [c for c in range(len(mat.cols)) if present(w, mat.cols[c][1], mat.tau_sign)]
        basis: list[int] = []
        pivots: dict[int, tuple[int, int]] = {}
        for c in idx:
            v, tag = mat.columns[c], 1 << c
            while v:
                lead = v.bit_length() - 1
                if lead not in pivots:
                    pivots[lead] = (v, tag)
                    break
                pv, pt = pivots[lead]
                v ^= pv
                tag ^= pt
            if not v:
                basis.append(tag)
        v = 0
        for b in basis:
            if rng.random() < 0.5:
                v ^= b
        out.append((w, v))
    return out
