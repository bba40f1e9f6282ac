from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_a2 import mmf
from motivic_a2.charts import ChartDifferential, ChartDocument, parse, serialize
from motivic_a2.mmf import (
    AnssClass,
    AnssDifferential,
    ChartDataError,
    HopfAlgebroidSignature,
    ParityError,
    TwoExtension,
    apply_differentials,
    assemble_pi,
    assign_weight,
    classical_pi,
    classicalize,
    differential_tau_power,
    extension_tau_power,
    extensions,
    product_tau_power,
)


@pytest.fixture(scope="module")
def einf() -> ChartDocument:
    return mmf.bundled_einf()


@pytest.mark.parametrize("s, f, w", [(3, 1, 2), (0, 0, 0), (25, 1, 13), (20, 4, 12)])
def test_assign_weight(s, f, w):
    assert assign_weight(s, f) == w


@given(st.integers(0, 200), st.integers(0, 60))
def test_weight_parity(s, f):
    if (s + f) % 2:
        with pytest.raises(ParityError):
            assign_weight(s, f)
    else:
        assert 2 * assign_weight(s, f) == s + f


def test_signature_weights_are_half_degrees():
    sig = HopfAlgebroidSignature()
    assert sig.bidegree("a6") == (12, 6)
    assert sig.bidegree("t") == (6, 3)
    assert sig.weights_are_half_degrees()


@pytest.mark.parametrize("r, k", [(3, 1), (5, 2), (7, 3), (23, 11)])
def test_differential_tau_power(r, k):
    assert differential_tau_power(r) == k


@pytest.mark.parametrize("r", [2, 4, 1, 0])
def test_differential_length_must_be_odd(r):
    with pytest.raises(ValueError):
        differential_tau_power(r)


@given(st.integers(0, 100), st.integers(0, 30), st.integers(1, 12))
def test_differential_power_matches_weight_drop(s, f, k):
    r = 2 * k + 1
    if (s + f) % 2:
        return
    # target sits at (s - 1, f + r); its weight exceeds the source weight by k
    assert assign_weight(s - 1, f + r) - assign_weight(s, f) == differential_tau_power(r)


def test_extension_tau_power():
    assert extension_tau_power(2, "2", 3) == 1  # 4 nu = tau eta^3
    assert extension_tau_power(13, "nu", 17) == 2  # nu e[25,1] = tau^2 eps kappabar
    assert extension_tau_power(0, "eta", 1) == 0
    with pytest.raises(ChartDataError):
        extension_tau_power(3, "2", 2)


def test_product_tau_power_for_eps_kappa():
    # eps at (8,2), kappa at (14,2), eta^2 kappabar at (22,6)
    assert product_tau_power(assign_weight(8, 2), assign_weight(14, 2), assign_weight(22, 6)) == 1
    with pytest.raises(ChartDataError):
        product_tau_power(5, 8, 12)


def test_d3_into_h1_fourth_power():
    chart = parse("class a 5 1 3 inf\nclass h1^4 4 4 4 inf\ndiff 3 a h1^4\n")
    out = apply_differentials(chart)
    assert "a" not in out
    assert out["h1^4"].tau_order == 1
    assert out.diffs == ()


def test_d5_into_h2g():
    chart = parse("class D 24 0 12 inf\nclass h2g 23 5 14 inf\ndiff 5 D h2g\n")
    assert apply_differentials(chart)["h2g"].tau_order == 2


def test_no_differentials_leaves_chart_unchanged(einf):
    assert apply_differentials(einf) == einf
    assert apply_differentials(einf, []) == einf


def test_differentials_into_a_row_hit_the_top_first():
    chart = parse("class x 120 24 72 inf order2=3\n"
                  "class a 121 19 70 inf\nclass b 121 11 66 inf\nclass c 121 1 61 inf\n"
                  "diff 13 b x\ndiff 5 a x\ndiff 23 c x\n")
    out = apply_differentials(chart)
    assert out["x"].level_orders() == (11, 6, 2)
    assert str(assemble_pi(out, 120)) == "pi(120) = Z/8[tau]/(tau^11, 2tau^6, 4tau^2){w=72}"


@pytest.mark.parametrize(
    "text, match",
    [
        ("class a 5 1 3 inf\ndiff 3 a b\n", "unknown"),
        ("class a 5 1 3 inf\nclass b 4 2 3 inf\ndiff 3 a b\n", "cannot hit"),
        ("class a 5 1 3 inf\nclass b 4 4 4 inf\ndiff 4 a b\n", "odd"),
        ("class a 5 1 3 inf\nclass b 4 4 4 inf order2=inf\ndiff 3 a b\n", "2-torsion rows"),
        ("class a 5 1 3 inf\nclass c 5 1 3 inf\nclass b 4 4 4 inf\ndiff 3 a b\ndiff 3 c b\n", "already hit"),
    ],
)
def test_bad_differentials(text, match):
    with pytest.raises(ValueError, match=match):
        apply_differentials(parse(text))


def test_level_orders_must_not_increase():
    chart = parse("class x 10 4 7 inf order2=2\nclass a 11 1 6 inf\ndiff 3 a x\n")
    # the top level (2x) is hit first, leaving x free above a torsion 2x: allowed
    assert apply_differentials(chart)["x"].level_orders() == (None, 1)
    with pytest.raises(ChartDataError):
        assemble_pi(parse("class x 10 2 6 1 order2=2 levels=1,3\n"), 10)


def test_e2_data_reproduces_e_infinity(einf):
    assert apply_differentials(mmf.bundled_e2()) == einf
    assert mmf.bundled_text("mmf_e2.chart") == mmf.e2_text(einf)


def test_dataset_weights_and_extensions(einf):
    for c in einf.classes:
        AnssClass.from_chart(c)
    for c in mmf.bundled_e2().classes:
        AnssClass.from_chart(c)
    for d in mmf.bundled_e2().diffs:
        AnssDifferential(d.r, d.src, d.dst).validate(mmf.bundled_e2())
    exts = extensions(einf, styles=("solid", "dashed", "exotic"))
    assert len(exts) == len([ln for ln in einf.lines if ln.kind in ("2", "eta", "nu")])
    solid = {(ln.src, ln.dst) for ln in einf.lines if ln.style == "solid"}
    assert all(e.tau_power == 0 for e in exts if (e.src, e.dst) in solid)


def test_wrong_weight_rejected():
    with pytest.raises(ChartDataError):
        AnssClass.from_chart(parse("class a 3 1 3 inf")["a"])


def test_dataset_spot_fields(einf):
    nu = einf["e[3,1]"]
    assert (nu.w, nu.order2, nu.label) == (2, 2, "nu")
    four_nu = [e for e in extensions(einf) if e.src == "e[3,1]"]
    assert [(e.kind, e.dst, e.tau_power) for e in four_nu] == [("2", "e[3,3]", 1)]
    assert einf["e[20,4]"].order2 == 3 and einf["e[20,4]"].tau_order is None
    assert einf["e[40,8]"].level_orders() == (None, None, 2)
    assert einf["e[120,24]"].level_orders() == (11, 6, 2)
    assert einf["e[120,0]"].copies == 6


@pytest.mark.parametrize(
    "stem, text",
    [
        (0, "pi(0) = Z2[tau]{w=0}"),
        (3, "pi(3) = Z/8[x,y]/(4x = tau y){w=2,3}"),
        (20, "pi(20) = Z/8[tau]{w=12}"),
        (40, "pi(40) = Z/8[tau]/(4tau^2){w=24}"),
        (120, "pi(120) = Z2[tau]^6{w=60} + Z/8[tau]/(tau^11, 2tau^6, 4tau^2){w=72}"),
        (170, "pi(170) = Z/8[x,y,z]/(tau^2 x, tau^6 y, tau^11 z, 2x = tau^4 y, 2y = tau^6 z){w=88,92,98}"),
    ],
)
def test_assemble(einf, stem, text):
    assert str(assemble_pi(einf, stem)) == text


def test_stem_three_extension(einf):
    pi = assemble_pi(einf, 3)
    assert pi.relations == [TwoExtension("e[3,1]", 2, "e[3,3]", 1)]


def test_stem_120_structure(einf):
    pi = assemble_pi(einf, 120)
    assert pi.free_rank == 6
    assert ("e[120,24]", 72) in pi.generators


def test_empty_stem(einf):
    assert str(assemble_pi(einf, 5)) == "pi(5) = 0"


def test_cycle_of_extensions_rejected():
    chart = parse("class a 4 0 2 inf\nclass b 4 2 3 inf\nline 2 a b exotic\nline 2 b a exotic\n")
    with pytest.raises(ChartDataError):
        assemble_pi(chart, 4, [mmf.ExoticExtension("2", "a", "b", 1), mmf.ExoticExtension("2", "b", "a", 0)])


def test_extension_leaving_stem_rejected():
    chart = parse("class a 4 0 2 inf\nclass b 5 1 3 inf\nline 2 a b exotic\n")
    with pytest.raises(ChartDataError):
        assemble_pi(chart, 4)


@pytest.mark.parametrize("stem, text", [(3, "pi(3) = Z/8"), (40, "pi(40) = Z/4"), (0, "pi(0) = Z2"),
                                        (23, "pi(23) = 0"), (120, "pi(120) = Z2^6")])
def test_classical_groups(einf, stem, text):
    assert classical_pi(einf, stem) == text


def test_classicalize_keeps_exactly_the_tau_free_part(einf):
    cl = classicalize(einf)
    for c in cl.classes:
        assert all(k is None for k in c.level_orders())
    dropped = {c.id for c in einf.classes} - {c.id for c in cl.classes}
    assert all(all(k is not None for k in einf[cid].level_orders()) for cid in dropped)
    assert not [t for t in cl.towers if t.direction == "h1"]
    assert classicalize(ChartDocument()) == ChartDocument()
    assert classicalize(apply_differentials(mmf.bundled_e2())) == cl


def test_classicalize_drops_h1_torsion_tower():
    chart = parse("class h1^4 4 4 4 1\nclass e 3 3 3 inf\ntower e h1\n")
    cl = classicalize(chart)
    assert [c.id for c in cl.classes] == ["e"]
    assert cl.towers == ()


def test_e2_reconstruction_needs_room():
    with pytest.raises(ChartDataError):
        mmf.e2_from_einf(parse("class x 3 1 2 1\n"))


def test_e2_text_roundtrip(einf):
    text = mmf.e2_text(einf)
    assert serialize(parse(text)) == serialize(mmf.bundled_e2())
    assert all(isinstance(d, ChartDifferential) for d in parse(text).diffs)
