from __future__ import annotations

import pytest

from motivic_a2.polynomial import ParseError, parse
from motivic_a2.ring import (
    GENERATOR_DEGREES,
    HIDDEN_EXTENSIONS,
    MASSEY_DEFINITIONS,
    MASSEY_PRODUCTS,
    MULTIPLICATION_TABLE,
    RELATIONS,
    ExtRing,
)

relations = [(g, r) for g, rs in RELATIONS.items() for r in rs]


@pytest.mark.parametrize("name", list(GENERATOR_DEGREES))
def test_generator_found_at_degree(ring, name):
    x = ring.generator(name)
    assert x.degree == GENERATOR_DEGREES[name]
    assert not ring.ext.is_zero(x)
    assert ring.check_annihilators(name)


@pytest.mark.parametrize("group, relation", relations)
def test_relation(ring, group, relation):
    assert ring.fits(relation)
    check = ring.verify_relation(relation)
    assert check, check.witness


@pytest.mark.parametrize("row, col, product", MULTIPLICATION_TABLE)
def test_multiplication_table(ring, row, col, product):
    rel = f"{row} {col} = {product}"
    assert ring.fits(rel)
    assert ring.verify_relation(rel)


@pytest.mark.parametrize("label, relation, expected", HIDDEN_EXTENSIONS)
def test_hidden_extension(ring, label, relation, expected):
    assert ring.fits(relation)
    assert bool(ring.verify_relation(relation)) == expected


@pytest.mark.parametrize("a, b, c, value", MASSEY_PRODUCTS)
def test_massey_product(ring, a, b, c, value):
    chk = ring.check_massey(a, b, c, value)
    assert chk.holds
    assert chk.indeterminacy_dim == 0


@pytest.mark.parametrize("name", list(MASSEY_DEFINITIONS))
def test_massey_defined_generators(ring, name):
    chk = ring.check_massey(*MASSEY_DEFINITIONS[name], name)
    assert chk.holds and chk.indeterminacy_dim == 0


def test_generators_are_not_tau_multiples(ring):
    for name, (s, f, w) in GENERATOR_DEGREES.items():
        x = ring.generator(name)
        assert all(not ring.ext.equal(x, y.tau()) for y in ring.ext.basis(s, f, w + 1)), name


def test_false_relation_is_rejected(ring):
    assert not ring.verify_relation("h0 h2 = 0")
    assert not ring.verify_relation("h1^4 = 0")
    assert ring.verify_relation("tau h1^4 = 0")


def test_inhomogeneous_relation_raises(ring):
    with pytest.raises(ValueError):
        ring.verify_relation("h0 + h1")


def test_fits_respects_range():
    small = ExtRing.compute(20, 4)
    assert small.fits("h0 h1")
    assert not small.fits("h2 g = 0")


def test_parse_normalizes_notation():
    names = tuple(GENERATOR_DEGREES)
    assert parse("τh₁³ + h₀²h₂", names) == parse("tau h1^3 + h0^2 h2", names)
    assert parse("Δh1 − τ g", names) == parse("Dh1 + tau g", names)
    with pytest.raises(ParseError):
        parse("h7", names)
