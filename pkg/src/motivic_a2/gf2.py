"""GF(2) linear algebra on Python int bitsets.

A vector is an ``int`` whose bit ``i`` is the coefficient of basis element ``i``.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def bits(v: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def from_indices(indices: Iterable[int]) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


class Echelon:
    """Incrementally built echelon basis keyed by leading (highest) bit.

    Each stored vector carries a ``tag`` bitset recording which inputs were
    combined to produce it, so membership tests can also return a preimage.
    Reduction only ever uses vectors added earlier, which makes prefixes of
    the insertion order echelon bases of their own spans.
    """

    __slots__ = ("pivots",)

    def __init__(self) -> None:
        self.pivots: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        pivots = self.pivots
        while v:
            lead = v.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                break
            v ^= p[0]
            tag ^= p[1]
        return v, tag

    def add(self, v: int, tag: int = 0) -> bool:
        """Insert ``v``; return True iff it was independent of the span."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def copy(self) -> "Echelon":
        e = Echelon()
        e.pivots = dict(self.pivots)
        return e


def rank(vectors: Iterable[int]) -> int:
    e = Echelon()
    return sum(1 for v in vectors if e.add(v))


def kernel(columns: list[int]) -> list[int]:
    """Basis of the kernel of the map whose i-th column image is ``columns[i]``.

    Kernel vectors are bitsets over column indices.
    """
    e = Echelon()
    out = []
    for i, c in enumerate(columns):
        r, tag = e.reduce(c, 1 << i)
        if r:
            e.pivots[r.bit_length() - 1] = (r, tag)
        else:
            out.append(tag)
    return out
