from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_a2.may import (
    NotADifferentialError,
    Page,
    builtin_page,
    check_free_over,
    check_well_defined,
    collapse_tau,
    compare_presentation,
    differential_room,
    extend_leibniz,
    is_boundary,
    is_cycle,
    load_page,
    page_homology,
    slice_basis,
)
from motivic_a2.polynomial import Monomial, Polynomial
from motivic_a2.tau_algebra import TauModuleDecomposition

PAGES = ("gr-dga", "E2", "E4", "Einf")


@pytest.fixture(scope="module")
def e4_homology():
    alg, d = builtin_page("E4")
    return page_homology(alg, d, 36, 24)


@pytest.mark.parametrize("name", PAGES)
def test_text_format_roundtrip(name):
    alg, d = builtin_page(name)
    text = alg.to_text([d] if d else [])
    alg2, diffs = load_page(text)
    assert alg2.to_text(list(diffs.values())) == text
    assert alg2.relations == alg.relations
    assert alg2.degrees == alg.degrees


@pytest.mark.parametrize(
    "text, message",
    [
        ("gen x 1 0 1\n", "line 1"),
        ("gen x 1 0 1 0\nfoo bar\n", "line 2: unknown record"),
        ("gen x 1 0 1 0\ngen y 1 1 1 1\nrel x + y\n", "line 3"),
        ("gen x 1 0 1 0\n\nrel x z\n", "line 3"),
        ("gen x 1 0 1 0\nd 2 x\n", "line 2"),
    ],
)
def test_parse_errors_name_the_line(text, message):
    with pytest.raises(ValueError, match=message):
        load_page(text)


def test_differential_degree_is_checked():
    with pytest.raises(ValueError, match="expected"):
        load_page("gen x 1 0 1 0\ngen y 2 2 1 1\nd 1 y = x\n")
    with pytest.raises(ValueError, match="unknown generator"):
        load_page("gen x 1 0 1 0\nd 1 z = x\n")


def test_generators_need_positive_filtrations():
    with pytest.raises(ValueError):
        load_page("gen x 0 0 1 0\n")


gr_monomials = st.lists(
    st.tuples(st.sampled_from(["h10", "h11", "h12", "h20", "h21", "h30"]), st.integers(1, 3)),
    min_size=1, max_size=4, unique_by=lambda p: p[0],
).map(lambda ps: Polynomial([Monomial.of(ps)]))


@settings(max_examples=100, deadline=None)
@given(gr_monomials, gr_monomials)
def test_leibniz_rule(p, q):
    _, d = builtin_page("gr-dga")
    assert extend_leibniz(d, p * q) == extend_leibniz(d, p) * q + p * extend_leibniz(d, q)


@settings(max_examples=100, deadline=None)
@given(gr_monomials)
def test_d_squared_vanishes_on_the_dga(p):
    _, d = builtin_page("gr-dga")
    assert extend_leibniz(d, extend_leibniz(d, p)).is_zero()


@pytest.mark.parametrize("name", ["gr-dga", "E2", "E4"])
def test_d_squared_on_small_range(name):
    alg, d = builtin_page(name)
    page = Page(alg, d, 16, 24)
    assert page.check_d_squared() == []
    assert page.check_d_squared_slices() == []


def test_broken_differential_is_detected():
    text = builtin_page("gr-dga")[0].to_text() + "d 1 h20 = h10 h11\nd 1 h21 = h11 h12\nd 1 h30 = h10 h21\n"
    alg, diffs = load_page(text)
    page = Page(alg, diffs[1], 6, 8)
    assert page.check_d_squared() == ["h30"]
    assert page.check_d_squared_slices()
    with pytest.raises(NotADifferentialError):
        page_homology(alg, diffs[1], 8, 6)


@pytest.mark.parametrize("name", ["E2", "E4"])
def test_differentials_respect_relations(name):
    alg, d = builtin_page(name)
    assert check_well_defined(alg, d).ok


def test_ill_defined_differential_is_reported():
    alg, _ = builtin_page("E2")
    text = alg.to_text() + "d 2 h0(1) = h0 h2^2\n"
    alg2, diffs = load_page(text)
    assert not check_well_defined(alg2, diffs[2]).ok


def test_e2_from_dga_small_range():
    dga, d1 = builtin_page("gr-dga")
    e2, _ = builtin_page("E2")
    rep = compare_presentation(page_homology(dga, d1, 20, 16), e2, 20, 16)
    assert rep.ok, rep.mismatches[:5]
    assert rep.slices > 0


def test_comparison_reports_mismatch():
    dga, d1 = builtin_page("gr-dga")
    e2, _ = builtin_page("E2")
    wrong = e2.with_relations(["h0^3"])
    rep = compare_presentation(page_homology(dga, d1, 6, 6), wrong, 6, 6)
    assert not rep.ok
    assert any(m.degree == (3, 0, 3) for m in rep.mismatches)


def test_three_stem_relation_on_e2():
    alg, d = builtin_page("E2")
    page = Page(alg, d, 10, 10)
    assert is_cycle(page, "h0^2 h2") and is_cycle(page, "tau h1^3")
    assert is_boundary(page, "h0^2 h2 + tau h1^3")
    assert not is_boundary(page, "h0^2 h2")
    assert not is_cycle(page, "b20")


def test_tau_orders_on_e_infinity(e4_homology):
    assert e4_homology[(9, 23, 5)].decomposition == TauModuleDecomposition(torsion=((14, 2),))
    assert e4_homology[(17, 35, 9)].decomposition == TauModuleDecomposition(torsion=((21, 3),))


def test_e_infinity_from_e4_small_range(e4_homology):
    einf, _ = builtin_page("Einf")
    assert compare_presentation(e4_homology, einf, 36, 24).ok


def test_no_room_for_d6_in_small_range(e4_homology):
    assert differential_room(e4_homology, 6) == []


def test_slice_decomposition_of_presentation():
    einf, _ = builtin_page("Einf")
    assert slice_basis(einf, 1, 0, 1).decomposition == TauModuleDecomposition(free=(0,))
    assert slice_basis(einf, 3, 3, 3).decomposition == TauModuleDecomposition(free=(3,))
    assert slice_basis(einf, 5, 11, 3).decomposition == TauModuleDecomposition(torsion=((7, 1),))


@pytest.mark.parametrize("name, elements", [("E4", ["P", "D"]), ("Einf", ["P", "D2"])])
def test_freeness(name, elements):
    alg, _ = builtin_page(name)
    assert check_free_over(alg, elements, 40, 30) == []


def test_collapse_sets_tau_to_one():
    alg, d = collapse_tau(*builtin_page("E2"))
    assert all(g.degree.w == 0 for g in alg.generators)
    assert str(d.values["b20"]) == "h0^2 h2 + h1^3"
