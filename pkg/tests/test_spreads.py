"""Spread constructions: the printed 9-column table, counts, and verification."""

import pytest

from rdcss.geometry import Effect, Subspace, span
from rdcss.gf2 import FieldPoly
from rdcss.spreads import (
    Spread,
    cyclic_spread,
    mixed_spread,
    partial_spread,
    sub_subspace,
    verify_spread,
)

from oracles import all_subspaces_brute

# The reference 2-spread of PG(5, 2) over x^6 + x + 1: column j holds the
# powers w^j, w^(9+j), w^(18+j), ... so consecutive powers walk the columns.
TABLE_P6_T3 = [
    ["F", "E", "D", "C", "B", "A", "EF", "DE", "CD"],
    ["BC", "AB", "AEF", "DF", "CE", "BD", "AC", "BEF", "ADE"],
    ["CDEF", "BCDE", "ABCD", "ABCEF", "ABDF", "ACF", "BF", "AE", "DEF"],
    ["CDE", "BCD", "ABC", "ABEF", "ADF", "CF", "BE", "AD", "CEF"],
    ["BDE", "ACD", "BCEF", "ABDE", "ACDEF", "BCDF", "ABCE", "ABDEF", "ACDF"],
    ["BCF", "ABE", "ADEF", "CDF", "BCE", "ABD", "ACEF", "BDF", "ACE"],
    ["BDEF", "ACDE", "BCDEF", "ABCDE", "ABCDEF", "ABCDF", "ABCF", "ABF", "AF"],
]


def test_cyclic_spread_matches_reference_table(table2_spread):
    spread = table2_spread
    assert spread.kind == "full"
    assert len(spread.members) == 9
    assert spread.cycle_table is not None
    got = [[e.word for e in col] for col in zip(*spread.cycle_table)]
    assert got == TABLE_P6_T3


def test_cyclic_spread_is_a_partition(table2_spread):
    check = verify_spread(table2_spread)
    assert check.ok
    assert check.full_partition
    assert check.member_count == 9
    assert check.covered == check.point_total == 63


def test_cyclic_spread_p4_members_are_lines():
    spread = cyclic_spread(4, 2)
    lines = all_subspaces_brute(4, 2)
    assert len(spread.members) == 5
    for member in spread.members:
        assert member.point_masks in lines
    union = set().union(*(m.point_masks for m in spread.members))
    assert union == set(range(1, 16))


def test_cyclic_spread_accepts_alternate_primitive():
    # x^4 + x^3 + 1 mirrors the default x^4 + x + 1 and gives another spread.
    spread = cyclic_spread(4, 2, poly=FieldPoly.from_mask(0b11001))
    assert verify_spread(spread).full_partition


def test_cyclic_spread_errors():
    with pytest.raises(ValueError, match="does not divide"):
        cyclic_spread(5, 2)
    with pytest.raises(ValueError, match="1 <= t < p"):
        cyclic_spread(4, 4)
    with pytest.raises(ValueError, match="degree"):
        cyclic_spread(4, 2, poly=FieldPoly.from_mask(0b1000011))
    with pytest.raises(ValueError, match="not primitive"):
        cyclic_spread(4, 2, poly=FieldPoly.from_mask(0b11111))


@pytest.mark.parametrize(
    "p, t, count",
    [(8, 3, 33), (5, 2, 9), (5, 3, 1), (7, 3, 17), (7, 2, 41)],
)
def test_partial_spread_counts(p, t, count):
    spread = partial_spread(p, t)
    assert spread.kind == "partial"
    assert len(spread.members) == count
    assert all(m.dim == t for m in spread.members)
    check = verify_spread(spread)
    assert check.ok
    assert check.covered == count * ((1 << t) - 1)


def test_partial_spread_errors():
    with pytest.raises(ValueError, match="full spread exists"):
        partial_spread(6, 3)
    with pytest.raises(ValueError, match="1 <= t < p"):
        partial_spread(3, 3)


@pytest.mark.parametrize(
    "p, t1, small_dim, n_small",
    [(7, 4, 3, 16), (5, 3, 2, 8), (3, 2, 1, 4)],
)
def test_mixed_spread_shapes(p, t1, small_dim, n_small):
    spread = mixed_spread(p, t1)
    assert spread.kind == "mixed"
    assert spread.members[0].dim == t1
    # The distinguished member is the span of the first t1 main effects.
    assert spread.members[0].point_masks == frozenset(range(1, 1 << t1))
    assert len(spread.members) == 1 + n_small
    assert all(m.dim == small_dim for m in spread.members[1:])
    assert verify_spread(spread).ok


def test_mixed_spread_p3_t2_is_maximal():
    # 1 line + 4 points covers all 7 points of PG(2, 2).
    check = verify_spread(mixed_spread(3, 2))
    assert check.full_partition


def test_mixed_spread_errors():
    with pytest.raises(ValueError, match="no mixed construction"):
        mixed_spread(6, 3)
    with pytest.raises(ValueError, match="whole effect space"):
        mixed_spread(4, 4)


def test_verify_spread_flags_overlap_and_closure():
    good = span([Effect(1, 4), Effect(2, 4)])
    overlapping = span([Effect(3, 4), Effect(4, 4)])  # shares AB with good
    forged = Spread(p=4, members=(good, overlapping), kind="partial")
    check = verify_spread(forged)
    assert not check.ok
    assert check.disjoint_violations == ((0, 1, "AB"),)
    assert not check.full_partition

    # A fabricated member that is not XOR-closed.
    broken = Subspace(
        p=4,
        basis=(Effect(1, 4), Effect(2, 4)),
        points=(Effect(1, 4), Effect(2, 4), Effect(8, 4)),
    )
    check = verify_spread(Spread(p=4, members=(broken,), kind="partial"))
    assert not check.ok
    assert ("A*B" in {v[1] for v in check.closure_violations})


def test_sub_subspace_takes_basis_prefix():
    member = span([Effect(1, 5), Effect(2, 5), Effect(4, 5)])
    small = sub_subspace(member, 2)
    assert small.dim == 2
    assert small.point_masks == frozenset({1, 2, 3})
    with pytest.raises(ValueError, match="dim must be"):
        sub_subspace(member, 0)
    with pytest.raises(ValueError, match="dim must be"):
        sub_subspace(member, 4)
