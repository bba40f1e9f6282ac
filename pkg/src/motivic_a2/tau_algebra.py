"""Exact linear algebra over the graded ring M2 = F2[tau].

A homogeneous matrix between graded free F2[tau]-modules has, at each
position, either zero or a single power of tau whose exponent is fixed by the
weights of the row and column generators.  Entries are therefore stored as
bits; exponents are recovered from the labels.

Two weight conventions occur.  On the module side tau raises weight by one
(``TAU_RAISES``); after dualizing into M2, and on May spectral sequence pages,
tau lowers weight by one (``TAU_LOWERS``).  Every matrix records which
convention it uses and operations refuse to mix them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .gf2 import bits

TAU_RAISES = 1
TAU_LOWERS = -1

Label = tuple[Hashable, int]


class NotAComplexError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TriDegree:
    s: int
    f: int
    w: int


@dataclass(frozen=True, order=True)
class MayDegree:
    m: int
    s: int
    f: int
    w: int

    def __add__(self, other: "MayDegree") -> "MayDegree":
        return MayDegree(self.m + other.m, self.s + other.s, self.f + other.f, self.w + other.w)

    def __sub__(self, other: "MayDegree") -> "MayDegree":
        return MayDegree(self.m - other.m, self.s - other.s, self.f - other.f, self.w - other.w)

    def scale(self, k: int) -> "MayDegree":
        return MayDegree(self.m * k, self.s * k, self.f * k, self.w * k)


@dataclass(frozen=True)
class TauScalar:
    """Zero, or tau**exponent.  These are the homogeneous elements of F2[tau]."""

    exponent: int | None = None

    def __post_init__(self) -> None:
        if self.exponent is not None and self.exponent < 0:
            raise ValueError("negative tau exponent")

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __add__(self, other: "TauScalar") -> "TauScalar":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.exponent == other.exponent:
            return ZERO
        raise ValueError("sum of tau powers of different degree is not homogeneous")

    def __mul__(self, other: "TauScalar") -> "TauScalar":
        if self.is_zero or other.is_zero:
            return ZERO
        return TauScalar(self.exponent + other.exponent)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return {0: "1", 1: "tau"}.get(self.exponent, f"tau^{self.exponent}")


ZERO = TauScalar(None)
ONE = TauScalar(0)


def tau(e: int) -> TauScalar:
    return TauScalar(e)


class GradedTauMatrix:
    """Homogeneous matrix over F2[tau] stored as one bitset per column.

    ``rows`` and ``cols`` are sequences of ``(id, weight)``.  A nonzero entry at
    ``(r, c)`` is tau**e with ``e = tau_sign * (w(c) - w(r))``, which must be
    non-negative.
    """

    __slots__ = ("rows", "cols", "tau_sign", "columns")

    def __init__(
        self,
        rows: Sequence[Label],
        cols: Sequence[Label],
        entries: Mapping[tuple[int, int], TauScalar] | None = None,
        tau_sign: int = TAU_LOWERS,
    ) -> None:
        if tau_sign not in (TAU_RAISES, TAU_LOWERS):
            raise ValueError("tau_sign must be TAU_RAISES or TAU_LOWERS")
        self.rows = tuple((r[0], int(r[1])) for r in rows)
        self.cols = tuple((c[0], int(c[1])) for c in cols)
        self.tau_sign = tau_sign
        columns = [0] * len(self.cols)
        for (r, c), x in (entries or {}).items():
            if x.is_zero:
                continue
            expected = self._expected(r, c)
            if expected != x.exponent:
                raise ValueError(
                    f"entry ({r},{c}) = {x} is not homogeneous: expected tau^{expected}"
                )
            columns[c] ^= 1 << r
        self.columns = tuple(columns)

    @classmethod
    def from_columns(
        cls,
        rows: Sequence[Label],
        cols: Sequence[Label],
        columns: Sequence[int],
        tau_sign: int = TAU_LOWERS,
    ) -> "GradedTauMatrix":
        m = cls(rows, cols, None, tau_sign)
        if len(columns) != len(m.cols):
            raise ValueError("column count mismatch")
        for c, col in enumerate(columns):
            if col >> len(m.rows):
                raise ValueError("column bitset exceeds row count")
            for r in bits(col):
                if m._expected(r, c) < 0:
                    raise ValueError(f"entry ({r},{c}) would need a negative tau power")
        m.columns = tuple(columns)
        return m

    def _expected(self, r: int, c: int) -> int:
        return self.tau_sign * (self.cols[c][1] - self.rows[r][1])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, r: int, c: int) -> TauScalar:
        if self.columns[c] >> r & 1:
            return TauScalar(self._expected(r, c))
        return ZERO

    def entries(self) -> dict[tuple[int, int], TauScalar]:
        return {(r, c): self.entry(r, c) for c, col in enumerate(self.columns) for r in bits(col)}

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __matmul__(self, other: "GradedTauMatrix") -> "GradedTauMatrix":
        if self.tau_sign != other.tau_sign:
            raise ValueError("cannot compose matrices with different weight conventions")
        if self.cols != other.rows:
            raise ValueError("label mismatch in composition")
        out = []
        for col in other.columns:
            acc = 0
            for k in bits(col):
                acc ^= self.columns[k]
            out.append(acc)
        return GradedTauMatrix.from_columns(self.rows, other.cols, out, self.tau_sign)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedTauMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.tau_sign == other.tau_sign
            and self.columns == other.columns
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.tau_sign, self.columns))

    def __repr__(self) -> str:
        return f"GradedTauMatrix({len(self.rows)}x{len(self.cols)}, nnz={sum(c.bit_count() for c in self.columns)})"

    def to_lists(self) -> list[list[str]]:
        return [[str(self.entry(r, c)) for c in range(len(self.cols))] for r in range(len(self.rows))]

    def row_bitsets(self) -> list[int]:
        rows = [0] * len(self.rows)
        for c, col in enumerate(self.columns):
            for r in bits(col):
                rows[r] |= 1 << c
        return rows


def identity(labels: Sequence[Label], tau_sign: int = TAU_LOWERS) -> GradedTauMatrix:
    return GradedTauMatrix.from_columns(labels, labels, [1 << i for i in range(len(labels))], tau_sign)


@dataclass(frozen=True)
class TauModuleDecomposition:
    """Finitely generated graded F2[tau]-module as free plus tau-torsion summands.

    ``free`` lists generator weights; ``torsion`` lists ``(weight, k)`` for a
    copy of M2/tau^k generated in that weight.
    """

    free: tuple[int, ...] = ()
    torsion: tuple[tuple[int, int], ...] = ()
    tau_sign: int = TAU_LOWERS

    def __post_init__(self) -> None:
        object.__setattr__(self, "free", tuple(sorted(int(w) for w in self.free)))
        tors = tuple(sorted((int(w), int(k)) for w, k in self.torsion))
        for _, k in tors:
            if k < 1:
                raise ValueError("torsion order must be at least 1")
        object.__setattr__(self, "torsion", tors)

    def __add__(self, other: "TauModuleDecomposition") -> "TauModuleDecomposition":
        if self.tau_sign != other.tau_sign:
            raise ValueError("mixed weight conventions")
        return TauModuleDecomposition(self.free + other.free, self.torsion + other.torsion, self.tau_sign)

    @property
    def is_zero(self) -> bool:
        return not self.free and not self.torsion

    def dim_at(self, w: int) -> int:
        """F2-dimension of the weight-``w`` part."""
        s = self.tau_sign
        n = sum(1 for w0 in self.free if s * (w - w0) >= 0)
        n += sum(1 for w0, k in self.torsion if 0 <= s * (w - w0) < k)
        return n

    def weight_span(self) -> tuple[int, int] | None:
        ws = list(self.free) + [w for w, _ in self.torsion]
        ends = [w + self.tau_sign * (k - 1) for w, k in self.torsion]
        ws += ends
        if not ws:
            return None
        return min(ws), max(ws)

    def __str__(self) -> str:
        parts = [f"M2{{{w}}}" for w in self.free]
        parts += [f"M2/tau^{k}{{{w}}}" if k > 1 else f"M2/tau{{{w}}}" for w, k in self.torsion]
        return " + ".join(parts) if parts else "0"


def rank_after_tau_inversion(m: TauModuleDecomposition) -> int:
    return len(m.free)


@dataclass
class _Smith:
    pivots: list[tuple[int, int, int]]  # (row, col, exponent) in discovery order
    p_rows: list[int]  # row r of P as bitset over original rows
    q_cols: list[int]  # column c of Q as bitset over original columns
    qinv_rows: list[int]  # row c of Q^{-1} as bitset over original columns


def _smith(mat: GradedTauMatrix) -> _Smith:
    nr, nc = mat.shape
    s = mat.tau_sign
    rw = [w for _, w in mat.rows]
    cw = [w for _, w in mat.cols]
    # Relabel columns so that a row's lowest set bit is its minimal exponent;
    # ties fall to the lower original column index.
    order = sorted(range(nc), key=lambda c: (s * cw[c], c))
    pos = {c: i for i, c in enumerate(order)}
    rows = [0] * nr
    for c, col in enumerate(mat.columns):
        b = 1 << pos[c]
        for r in bits(col):
            rows[r] |= b
    p_rows = [1 << r for r in range(nr)]
    q_cols = [1 << c for c in range(nc)]
    qinv_rows = [1 << c for c in range(nc)]
    active = set(range(nr))
    pivots = []
    while True:
        best = None
        for r in active:
            v = rows[r]
            if not v:
                continue
            j = (v & -v).bit_length() - 1
            e = s * cw[order[j]] - s * rw[r]
            key = (e, r, order[j])
            if best is None or key < best[0]:
                best = (key, r, j)
        if best is None:
            break
        (e, r, c), _, j = best
        bit = 1 << j
        for r2 in active:
            if r2 != r and rows[r2] & bit:
                rows[r2] ^= rows[r]
                p_rows[r2] ^= p_rows[r]
        rest = rows[r] ^ bit
        for j2 in bits(rest):
            c2 = order[j2]
            q_cols[c2] ^= q_cols[c]
            qinv_rows[c] ^= qinv_rows[c2]
        rows[r] = bit
        active.discard(r)
        pivots.append((r, c, e))
    return _Smith(pivots, p_rows, q_cols, qinv_rows)


@dataclass(frozen=True)
class SmithForm:
    """``row_transform @ mat @ col_transform == diagonal`` with factors on the diagonal."""

    factors: tuple[TauScalar, ...]
    row_transform: GradedTauMatrix
    col_transform: GradedTauMatrix
    diagonal: GradedTauMatrix = field(repr=False)

    def __iter__(self):
        return iter((self.factors, self.row_transform, self.col_transform))


def snf(mat: GradedTauMatrix) -> SmithForm:
    """Smith normal form over F2[tau] with minimal-exponent pivoting."""
    sm = _smith(mat)
    nr, nc = mat.shape
    piv_rows = [r for r, _, _ in sm.pivots]
    piv_cols = [c for _, c, _ in sm.pivots]
    row_order = piv_rows + [r for r in range(nr) if r not in set(piv_rows)]
    col_order = piv_cols + [c for c in range(nc) if c not in set(piv_cols)]
    new_rows = [mat.rows[r] for r in row_order]
    new_cols = [mat.cols[c] for c in col_order]
    # P as a matrix: row i = p_rows[row_order[i]]; stored by columns over new rows.
    p_cols = [0] * nr
    for i, r in enumerate(row_order):
        for k in bits(sm.p_rows[r]):
            p_cols[k] |= 1 << i
    P = GradedTauMatrix.from_columns(new_rows, mat.rows, p_cols, mat.tau_sign)
    Q = GradedTauMatrix.from_columns(mat.cols, new_cols, [sm.q_cols[c] for c in col_order], mat.tau_sign)
    diag = [(1 << i) if i < len(sm.pivots) else 0 for i in range(nc)]
    D = GradedTauMatrix.from_columns(new_rows, new_cols, diag, mat.tau_sign)
    factors = tuple(TauScalar(e) for _, _, e in sm.pivots)
    return SmithForm(factors, P, Q, D)


def _check_complex(d_in: GradedTauMatrix, d_out: GradedTauMatrix) -> None:
    if d_in.tau_sign != d_out.tau_sign:
        raise ValueError("mixed weight conventions")
    if d_out.cols != d_in.rows:
        raise ValueError("label mismatch: columns of d_out must equal rows of d_in")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("not a complex: d_out . d_in != 0")


def homology_at(d_in: GradedTauMatrix, d_out: GradedTauMatrix) -> TauModuleDecomposition:
    """ker(d_out) / im(d_in) as a decomposition into M2 and M2/tau^k summands."""
    _check_complex(d_in, d_out)
    sign = d_in.tau_sign
    sm = _smith(d_out)
    pivot_cols = {c for _, c, _ in sm.pivots}
    kernel = [c for c in range(len(d_out.cols)) if c not in pivot_cols]
    klabels = [d_out.cols[c] for c in kernel]
    # Coordinates of im(d_in) in the kernel basis: rows of Q^{-1} at kernel positions.
    xcols = []
    for col in d_in.columns:
        v = 0
        for i, c in enumerate(kernel):
            if (sm.qinv_rows[c] & col).bit_count() & 1:
                v |= 1 << i
        xcols.append(v)
    X = GradedTauMatrix.from_columns(klabels, d_in.cols, xcols, sign)
    sm2 = _smith(X)
    killed = set()
    torsion = []
    for r, _, e in sm2.pivots:
        killed.add(r)
        if e > 0:
            torsion.append((klabels[r][1], e))
    free = [klabels[r][1] for r in range(len(klabels)) if r not in killed]
    return TauModuleDecomposition(tuple(free), tuple(torsion), sign)


def zero_map(rows: Sequence[Label], cols: Sequence[Label], tau_sign: int = TAU_LOWERS) -> GradedTauMatrix:
    return GradedTauMatrix.from_columns(rows, cols, [0] * len(cols), tau_sign)


def direct_sum(a: GradedTauMatrix, b: GradedTauMatrix) -> GradedTauMatrix:
    if a.tau_sign != b.tau_sign:
        raise ValueError("mixed weight conventions")
    rows = [(("L", i), w) for i, w in ((r[0], r[1]) for r in a.rows)]
    rows += [(("R", i), w) for i, w in ((r[0], r[1]) for r in b.rows)]
    cols = [(("L", i), w) for i, w in ((c[0], c[1]) for c in a.cols)]
    cols += [(("R", i), w) for i, w in ((c[0], c[1]) for c in b.cols)]
    shift = len(a.rows)
    columns = list(a.columns) + [col << shift for col in b.columns]
    return GradedTauMatrix.from_columns(rows, cols, columns, a.tau_sign)


def decomposition_from_ranks(
    dims: Mapping[int, int],
    tau_rank: "callable",
    lo: int,
    hi: int,
    tau_sign: int = TAU_LOWERS,
) -> TauModuleDecomposition:
    """Recover a decomposition from weight dimensions and ranks of tau powers.

    ``tau_rank(w, k)`` is the rank of multiplication by tau^k out of weight
    ``w`` (only called with both ends inside ``[lo, hi]``).  The module must
    vanish beyond the end of the window that tau moves away from, and tau must
    be an isomorphism past the other end.

    A summand generated in weight w and alive after k steps of tau is counted
    by rank(w, k) - rank(w', k + 1), where w' is the weight one step before w.
    """
    s = tau_sign
    # positions increase in the direction tau moves
    p_lo, p_hi = sorted((s * lo, s * hi))

    def rank(p: int, k: int) -> int:
        if p < p_lo:
            return 0
        w = s * p
        return dims.get(w, 0) if k == 0 else tau_rank(w, k)

    free: list[int] = []
    torsion: list[tuple[int, int]] = []
    for p in range(p_lo, p_hi + 1):
        w = s * p
        span = p_hi - p
        born = [rank(p, k) - rank(p - 1, k + 1) for k in range(span + 1)]
        for j in range(1, span + 1):
            torsion += [(w, j)] * (born[j - 1] - born[j])
        free += [w] * born[span]
    return TauModuleDecomposition(tuple(free), tuple(torsion), s)
