from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_a2.ext import Ext, ExtElement, PreconditionError
from motivic_a2.resolution import RangeError, Resolution
from motivic_a2.tau_algebra import TauModuleDecomposition


@pytest.fixture(scope="module")
def classical_ext() -> Ext:
    return Ext.compute(48, 12, classical=True)


@pytest.fixture(scope="module")
def small_res() -> Resolution:
    return Resolution(30, 8).extend()


def test_resolution_is_a_complex(small_res):
    for f in range(small_res.max_f + 1):
        for t in range(small_res.done_t + 1):
            assert small_res.check_complex(f, t), (f, t)


def test_resolution_is_exact(small_res):
    for f in range(small_res.max_f):
        for t in range(small_res.done_t + 1):
            assert small_res.exactness_defect(f, t) == {}, (f, t)


def test_resolution_is_minimal(small_res):
    # coefficients lie in the augmentation ideal: a multiple of a generator carries tau^k, k > 0
    for f in range(1, small_res.max_f + 1):
        for t in range(small_res.done_t + 1):
            for j, units in small_res.unit_entries(f, t):
                for i in units:
                    assert small_res.gens[f][j][1] - small_res.gens[f - 1][i][1] > 0


def test_first_generators_are_sq1_sq2_sq4(small_res):
    assert small_res.gens[1] == [(1, 0), (2, 1), (4, 2)]


def test_checkpoint_roundtrip(small_res, tmp_path):
    path = tmp_path / "res.json.gz"
    small_res.save(path)
    back = Resolution.load(path)
    assert back.gens == small_res.gens
    assert back.d == small_res.d
    assert back.done_t == small_res.done_t
    e1, e2 = Ext(small_res), Ext(back)
    assert e1.module(23, 5) == e2.module(23, 5)


def test_checkpoint_rejects_unknown_format(tmp_path):
    import gzip

    path = tmp_path / "bad.json.gz"
    with gzip.open(path, "wt") as fh:
        fh.write('{"format": "something-else"}')
    with pytest.raises(ValueError):
        Resolution.load(path)


def test_range_errors(small_res):
    with pytest.raises(RangeError):
        small_res.slice(3, 31)
    ext = Ext(small_res)
    with pytest.raises(RangeError):
        ext.module(40, 2)
    assert not ext.in_range(30, 1)
    assert ext.in_range(22, 7)


@pytest.mark.parametrize(
    "s, f, expected",
    [
        (0, 0, TauModuleDecomposition(free=(0,))),
        (3, 3, TauModuleDecomposition(free=(3,))),
        (4, 4, TauModuleDecomposition(torsion=((4, 1),))),
        (8, 3, TauModuleDecomposition(free=(5,))),
        (11, 3, TauModuleDecomposition(torsion=((7, 1),))),
        (20, 4, TauModuleDecomposition(free=(12,))),
        (23, 5, TauModuleDecomposition(torsion=((14, 2),))),
        (5, 1, TauModuleDecomposition()),
    ],
)
def test_chart_values(small_ext, s, f, expected):
    assert small_ext.module(s, f) == expected


def test_tau_order_three_at_35_9(small_ext):
    assert small_ext.module(35, 9) == TauModuleDecomposition(torsion=((21, 3),))


def test_h0_tower(small_ext):
    for f in range(small_ext.max_f + 1):
        assert small_ext.module(0, f) == TauModuleDecomposition(free=(0,))


def test_inverting_tau_recovers_classical_ext(small_ext, classical_ext):
    for f in range(small_ext.max_f + 1):
        for s in range(small_ext.max_t - f + 1):
            mot = small_ext.module(s, f)
            cl = classical_ext.module(s, f)
            assert len(mot.free) == len(cl.free) + len(cl.torsion), (s, f)


def test_dimensions_match_module(small_ext):
    for (s, f), m in small_ext.chart(max_s=30).items():
        lo, hi = m.weight_span()
        for w in range(lo - 1, hi + 2):
            assert small_ext.dim(s, f, w) == m.dim_at(w), (s, f, w)


def test_generators_match_decomposition(small_ext):
    for (s, f), m in small_ext.chart(max_s=40).items():
        gens = small_ext.generators(s, f)
        got = sorted((x.w, k or 0) for x, k in gens)
        want = sorted([(w, 0) for w in m.free] + list(m.torsion))
        assert got == want, (s, f)
        for x, k in gens:
            limit = max((j for _, j in m.torsion), default=0) + 1
            assert small_ext.tau_order(x, limit) == k


def basis_elements(ext: Ext, s: int, f: int) -> list[ExtElement]:
    m = ext.module(s, f)
    span = m.weight_span()
    if span is None:
        return []
    return [x for w in range(span[0], span[1] + 1) for x in ext.basis(s, f, w)]


low_degrees = st.tuples(st.integers(0, 10), st.integers(0, 3))


@settings(max_examples=40, deadline=None)
@given(low_degrees, low_degrees, st.data())
def test_products_commute(small_ext, a, b, data):
    xs, ys = basis_elements(small_ext, *a), basis_elements(small_ext, *b)
    if not xs or not ys:
        return
    x, y = data.draw(st.sampled_from(xs)), data.draw(st.sampled_from(ys))
    assert small_ext.equal(small_ext.multiply(x, y), small_ext.multiply(y, x))


@settings(max_examples=30, deadline=None)
@given(low_degrees, low_degrees, low_degrees, st.data())
def test_products_associate(small_ext, a, b, c, data):
    picks = [basis_elements(small_ext, *d) for d in (a, b, c)]
    if not all(picks):
        return
    x, y, z = (data.draw(st.sampled_from(p)) for p in picks)
    left = small_ext.multiply(small_ext.multiply(x, y), z)
    right = small_ext.multiply(x, small_ext.multiply(y, z))
    assert small_ext.equal(left, right)


def test_tau_commutes_with_products(small_ext):
    h1 = small_ext.basis(1, 1, 1)[0]
    h2 = small_ext.basis(3, 1, 2)[0]
    p = small_ext.multiply(h1.tau(), h2)
    assert small_ext.equal(p, small_ext.multiply(h1, h2).tau())


def test_massey_requires_vanishing_products(small_ext):
    h0 = small_ext.basis(0, 1, 0)[0]
    with pytest.raises(PreconditionError):
        small_ext.massey(h0, h0, h0)


def test_massey_h0_h1_h0(small_ext):
    h0 = small_ext.basis(0, 1, 0)[0]
    h1 = small_ext.basis(1, 1, 1)[0]
    p = small_ext.massey(h0, h1, h0)
    assert p.representative.degree == (2, 2, 1)
    tau_h1sq = small_ext.multiply(h1, h1).tau()
    assert small_ext.equal(p.representative, tau_h1sq)
    assert p.zero_indeterminacy
