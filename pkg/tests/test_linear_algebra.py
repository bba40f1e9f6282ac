from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_a2.gf2 import Echelon, bits, from_indices, kernel, rank
from motivic_a2.tau_algebra import (
    ONE,
    TAU_LOWERS,
    TAU_RAISES,
    ZERO,
    GradedTauMatrix,
    NotAComplexError,
    TauModuleDecomposition,
    decomposition_from_ranks,
    direct_sum,
    homology_at,
    identity,
    snf,
    tau,
    zero_map,
)

from oracles import present, random_kernel_columns, random_matrix, weight_rank, weight_window

vectors = st.lists(st.integers(min_value=0, max_value=2**12 - 1), max_size=10)


def brute_span(vs: list[int]) -> set[int]:
    span = {0}
    for v in vs:
        span |= {x ^ v for x in span}
    return span


@given(vectors)
def test_rank_matches_span_size(vs):
    assert 2 ** rank(vs) == len(brute_span(vs))


@given(vectors)
def test_kernel_vectors_are_in_kernel_and_independent(vs):
    ker = kernel(vs)
    assert len(ker) == len(vs) - rank(vs)
    assert rank(ker) == len(ker)
    for k in ker:
        acc = 0
        for i in bits(k):
            acc ^= vs[i]
        assert acc == 0


@given(vectors, st.integers(min_value=0, max_value=2**12 - 1))
def test_echelon_membership_and_tags(vs, probe):
    e = Echelon()
    for i, v in enumerate(vs):
        e.add(v, 1 << i)
    r, tag = e.reduce(probe)
    assert (r == 0) == (probe in brute_span(vs))
    if r == 0:
        acc = 0
        for i in bits(tag):
            acc ^= vs[i]
        assert acc == probe


def test_bits_roundtrip():
    assert list(bits(from_indices([5, 0, 3]))) == [0, 3, 5]
    assert from_indices([2, 2]) == 0


def test_scalar_arithmetic():
    assert tau(2) * tau(3) == tau(5)
    assert (tau(1) * ZERO).is_zero
    assert ONE == tau(0)


def test_inhomogeneous_entry_rejected():
    rows, cols = [("a", 3)], [("b", 1)]
    GradedTauMatrix(rows, cols, {(0, 0): tau(2)})
    with pytest.raises(ValueError):
        GradedTauMatrix(rows, cols, {(0, 0): tau(1)})
    with pytest.raises(ValueError):
        GradedTauMatrix([("a", 0)], [("b", 1)], {(0, 0): ONE})


def test_snf_single_entry():
    m = GradedTauMatrix([("a", 3)], [("b", 1)], {(0, 0): tau(2)})
    assert snf(m).factors == (tau(2),)


def check_snf(mat: GradedTauMatrix) -> None:
    sf = snf(mat)
    assert sf.row_transform @ mat @ sf.col_transform == sf.diagonal
    # transforms are invertible: bijective in every weight
    for w in weight_window(mat):
        p, q = sf.row_transform, sf.col_transform
        assert weight_rank(p, w) == sum(present(w, x[1], mat.tau_sign) for x in p.cols)
        assert weight_rank(q, w) == sum(present(w, x[1], mat.tau_sign) for x in q.cols)
        # per-weight rank oracle: each diagonal factor contributes wherever its column lives
        diag_rank = sum(present(w, sf.diagonal.cols[i][1], mat.tau_sign) for i in range(len(sf.factors)))
        assert weight_rank(mat, w) == diag_rank
    exps = [f.exponent for f in sf.factors]
    assert all(e >= 0 for e in exps)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.integers(1, 7), st.integers(1, 7),
       st.sampled_from([TAU_LOWERS, TAU_RAISES]))
def test_snf_against_weight_ranks(seed, nr, nc, sign):
    check_snf(random_matrix(random.Random(seed), nr, nc, sign=sign))


def test_snf_edge_shapes():
    check_snf(zero_map([("a", 0), ("b", 2)], [("c", 1)]))
    check_snf(identity([("a", 0), ("b", 4)]))
    check_snf(GradedTauMatrix.from_columns([], [("c", 1)], [0]))


def random_complex(rng: random.Random, sign: int) -> tuple[GradedTauMatrix, GradedTauMatrix]:
    d_out = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 6), sign=sign)
    ker = random_kernel_columns(rng, d_out, rng.randint(0, 5))
    d_in = GradedTauMatrix.from_columns(d_out.cols, [(i, w) for i, (w, _) in enumerate(ker)],
                                        [v for _, v in ker], sign)
    return d_in, d_out


def weight_homology_dim(d_in: GradedTauMatrix, d_out: GradedTauMatrix, w: int) -> int:
    n = sum(present(w, c[1], d_out.tau_sign) for c in d_out.cols)
    return n - weight_rank(d_out, w) - weight_rank(d_in, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.sampled_from([TAU_LOWERS, TAU_RAISES]))
def test_homology_dimensions_per_weight(seed, sign):
    d_in, d_out = random_complex(random.Random(seed), sign)
    h = homology_at(d_in, d_out)
    for w in weight_window(d_in, d_out):
        assert h.dim_at(w) == weight_homology_dim(d_in, d_out, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_decomposition_from_ranks_agrees_with_homology(seed):
    d_in, d_out = random_complex(random.Random(seed), TAU_LOWERS)
    h = homology_at(d_in, d_out)
    window = weight_window(d_in, d_out)
    lo, hi = window[0], window[-1]
    dims = {w: h.dim_at(w) for w in window}

    def tau_rank(w: int, k: int) -> int:
        # rank of tau^k out of weight w, read off the summands
        free = sum(1 for w0 in h.free if present(w, w0, TAU_LOWERS))
        return free + sum(1 for w0, n in h.torsion if 0 <= w0 - w and w0 - w + k < n)

    assert decomposition_from_ranks(dims, tau_rank, lo, hi, TAU_LOWERS) == h


def test_homology_rejects_non_complex():
    a = identity([("x", 0)])
    with pytest.raises(NotAComplexError):
        homology_at(a, a)


def test_homology_of_tau_squared_map():
    # M2{2} --tau^2--> M2{0}: cokernel M2/tau^2
    d_in = GradedTauMatrix([("y", 2)], [("x", 0)], {(0, 0): tau(2)})
    d_out = zero_map([], [("y", 2)])
    assert homology_at(d_in, d_out) == TauModuleDecomposition(torsion=((2, 2),))


def test_decomposition_dims_and_text():
    m = TauModuleDecomposition(free=(3,), torsion=((5, 2),))
    assert [m.dim_at(w) for w in (6, 5, 4, 3, 2)] == [0, 1, 1, 1, 1]
    assert m.weight_span() == (3, 5)
    assert str(m) == "M2{3} + M2/tau^2{5}"
    assert str(TauModuleDecomposition()) == "0"
    with pytest.raises(ValueError):
        TauModuleDecomposition(torsion=((0, 0),))


def test_direct_sum_keeps_blocks():
    a = GradedTauMatrix([("a", 1)], [("b", 0)], {(0, 0): tau(1)})
    s = direct_sum(a, identity([("c", 2)]))
    assert s.shape == (2, 2)
    assert snf(s).factors == (ONE, tau(1))
