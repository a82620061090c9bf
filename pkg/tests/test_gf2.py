"""Field arithmetic checked against coefficient-list reference code."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rdcss.gf2 import (
    PRIMITIVE_EXPONENTS,
    FieldElement,
    FieldPoly,
    default_primitive,
    element_power,
    is_primitive,
    mul,
    power_masks,
)

from oracles import field_power_mask


@pytest.mark.parametrize("p", sorted(PRIMITIVE_EXPONENTS))
def test_table_polynomials_are_primitive(p):
    assert is_primitive(default_primitive(p))


def test_table_covers_degrees_2_to_24():
    assert sorted(PRIMITIVE_EXPONENTS) == list(range(2, 25))
    for p, exps in PRIMITIVE_EXPONENTS.items():
        assert max(exps) == p and 0 in exps


@pytest.mark.parametrize("p", range(2, 9))
def test_power_masks_match_reference(p):
    exps = PRIMITIVE_EXPONENTS[p]
    got = list(power_masks(default_primitive(p)))
    want = [field_power_mask(i, exps, p) for i in range((1 << p) - 1)]
    assert got == want


@pytest.mark.parametrize("p", range(2, 11))
def test_power_masks_hit_every_nonzero_point_once(p):
    seen = list(power_masks(default_primitive(p)))
    assert len(seen) == (1 << p) - 1
    assert set(seen) == set(range(1, 1 << p))


def test_element_power_anchors_p6():
    poly = default_primitive(6)
    # Multiplicative identity sits on the last coordinate: the F axis.
    assert element_power(0, poly).mask == 1 << 5
    assert element_power(9, poly).mask == (1 << 1) | (1 << 2)  # BC
    assert element_power(18, poly).mask == 0b111100  # CDEF
    # Exponents reduce modulo 2^6 - 1.
    assert element_power(63, poly) == element_power(0, poly)
    assert element_power(-1, poly) == element_power(62, poly)


@pytest.mark.parametrize("p", range(2, 9))
def test_element_power_agrees_with_power_masks(p):
    poly = default_primitive(p)
    for i, mask in enumerate(power_masks(poly)):
        assert element_power(i, poly).mask == mask


@given(st.integers(min_value=2, max_value=8), st.data())
def test_mul_adds_exponents(p, data):
    poly = default_primitive(p)
    order = (1 << p) - 1
    i = data.draw(st.integers(min_value=0, max_value=order - 1))
    j = data.draw(st.integers(min_value=0, max_value=order - 1))
    a, b = element_power(i, poly), element_power(j, poly)
    assert mul(a, b, poly) == element_power(i + j, poly)
    assert mul(a, b, poly) == mul(b, a, poly)


@given(st.integers(min_value=2, max_value=8), st.data())
def test_frobenius_is_additive(p, data):
    poly = default_primitive(p)
    draw_mask = st.integers(min_value=0, max_value=(1 << p) - 1)
    a = FieldElement.from_mask(data.draw(draw_mask), p)
    b = FieldElement.from_mask(data.draw(draw_mask), p)
    sq = lambda e: mul(e, e, poly)
    summed = FieldElement.from_mask(a.mask ^ b.mask, p)
    assert sq(summed).mask == sq(a).mask ^ sq(b).mask


def test_mul_identity_and_width_check():
    poly = default_primitive(4)
    one = element_power(0, poly)
    for mask in range(1, 16):
        e = FieldElement.from_mask(mask, 4)
        assert mul(e, one, poly) == e
    with pytest.raises(ValueError, match="width"):
        mul(FieldElement.from_mask(1, 3), one, poly)


def test_is_primitive_rejects_irreducible_non_primitive():
    # x^4 + x^3 + x^2 + x + 1 divides x^5 + 1: irreducible, order 5 != 15.
    assert not is_primitive(FieldPoly.from_mask(0b11111))


def test_is_primitive_rejects_reducible():
    assert not is_primitive(FieldPoly.from_mask(0b101))  # (x + 1)^2
    assert not is_primitive(FieldPoly.from_mask(0b10001))  # (x + 1)^4
    assert not is_primitive(FieldPoly.from_mask(0b111111))  # divisible by x + 1


def test_field_poly_validation():
    with pytest.raises(ValueError, match="degree"):
        FieldPoly(0, (1,))
    with pytest.raises(ValueError, match="count"):
        FieldPoly(2, (1, 1))
    with pytest.raises(ValueError, match="0 or 1"):
        FieldPoly(2, (1, 2, 1))
    with pytest.raises(ValueError, match="monic"):
        FieldPoly(2, (1, 1, 0))
    with pytest.raises(ValueError, match="mask"):
        FieldPoly.from_mask(1)


def test_field_poly_round_trip_and_str():
    poly = default_primitive(6)
    assert poly.mask == 0b1000011
    assert FieldPoly.from_mask(poly.mask) == poly
    assert str(poly) == "x^6 + x + 1"
    assert str(FieldPoly.from_mask(0b111)) == "x^2 + x + 1"


def test_field_element_validation():
    with pytest.raises(ValueError):
        FieldElement(())
    with pytest.raises(ValueError):
        FieldElement((0, 2))
    e = FieldElement.from_mask(0b101, 4)
    assert e.coords == (1, 0, 1, 0)
    assert e.p == 4 and e.mask == 0b101


def test_default_primitive_range():
    with pytest.raises(ValueError, match="2..24"):
        default_primitive(1)
    with pytest.raises(ValueError, match="2..24"):
        default_primitive(25)
