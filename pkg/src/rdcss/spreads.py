"""Spreads of PG(p-1, 2): disjoint subspace families that batch a 2^p design.

A full (t-1)-spread partitions the 2^p - 1 effects into subspaces of size
2^t - 1 and exists exactly when t divides p.  When t does not divide p the
builder returns a maximal-size partial spread; when one stage needs more than
half the dimensions the builder returns a mixed spread around it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import bitlin
from .geometry import Effect, Subspace, span, subspace_from_points
from .gf2 import FieldPoly, default_primitive, is_primitive, power_masks

__all__ = [
    "Spread",
    "SpreadCheck",
    "cyclic_spread",
    "partial_spread",
    "mixed_spread",
    "verify_spread",
    "sub_subspace",
]


@dataclass(frozen=True)
class Spread:
    """A family of pairwise disjoint effect subspaces.

    kind is "full" (partition), "partial" (maximal disjoint family) or
    "mixed" (one large member first, then complementary-dimension members).
    Cyclic constructions also carry cycle_table: each member's points in
    field-power order, matching the printed layout of the construction.
    """

    p: int
    members: tuple[Subspace, ...]
    kind: str
    cycle_table: tuple[tuple[Effect, ...], ...] | None = None


def cyclic_spread(p: int, t: int, poly: FieldPoly | None = None) -> Spread:
    """Full (t-1)-spread of PG(p-1, 2) from the powers of a field generator.

    Member j collects w^(iN + j) for i = 0..2^t - 2 with N = (2^p-1)/(2^t-1);
    consecutive powers of w walk the members cyclically.
    """
    if not 1 <= t < p:
        raise ValueError("need 1 <= t < p")
    if p % t:
        raise ValueError(
            f"no full ({t - 1})-spread of PG({p - 1}, 2): {t} does not divide {p}"
        )
    if poly is None:
        poly = default_primitive(p)
    if poly.degree != p:
        raise ValueError(f"polynomial degree {poly.degree} does not match p={p}")
    if not is_primitive(poly):
        raise ValueError(f"{poly} is not primitive")
    n_members = ((1 << p) - 1) // ((1 << t) - 1)
    masks = list(power_masks(poly))
    columns = [
        [masks[i * n_members + j] for i in range((1 << t) - 1)]
        for j in range(n_members)
    ]
    cycle_table = tuple(tuple(Effect(m, p) for m in col) for col in columns)
    members = tuple(subspace_from_points(col) for col in cycle_table)
    return Spread(p=p, members=members, kind="full", cycle_table=cycle_table)


def _onto_first_coords(member_masks: frozenset[int], s: int, dim: int) -> list[int]:
    """Collineation rows of GF(2)^dim mapping the s-dim member onto the first s coords."""
    src = bitlin.complete_basis(bitlin.greedy_basis(sorted(member_masks)), dim)
    dst = bitlin.complete_basis([1 << j for j in range(s)], dim)
    inv = bitlin.invert(src, dim)
    if inv is None:
        raise RuntimeError("construction invariant violated: member basis not invertible")
    return bitlin.matmul(inv, dst)


def partial_spread(p: int, t: int) -> Spread:
    """Maximal-size family of disjoint (t-1)-subspaces when t does not divide p.

    Write p = kt + r with 0 < r < t.  Starting from one member in dimension
    t + r, each round lifts to dimension s + t by carving a cyclic
    (s-1)-spread of a 2s-dimensional space: one spread member is aligned with
    the current space and dropped, and the rest meet the enlarged space in
    subspaces of dimension exactly t, adding 2^s members per round.  The
    final count is 2^r (2^kt - 1)/(2^t - 1) - 2^r + 1.
    """
    if not 1 <= t < p:
        raise ValueError("need 1 <= t < p")
    r = p % t
    if r == 0:
        raise ValueError(f"{t} divides {p}: a full spread exists, use cyclic_spread")
    s = t + r
    members: list[frozenset[int]] = [frozenset(range(1, 1 << t))]
    while s < p:
        s_next = s + t
        ambient = 2 * s
        big = cyclic_spread(ambient, s)
        rows = _onto_first_coords(big.members[0].point_masks, s, ambient)
        limit = 1 << s_next
        for other in big.members[1:]:
            cut = frozenset(
                y
                for y in (bitlin.apply_rows(rows, x) for x in other.point_masks)
                if y < limit
            )
            if len(cut) != (1 << t) - 1:
                raise RuntimeError(
                    "construction invariant violated: section has wrong size"
                )
            members.append(cut)
        s = s_next
    subspaces = sorted(
        (
            subspace_from_points(tuple(Effect(m, p) for m in sorted(ms)))
            for ms in members
        ),
        key=lambda sub: sub.points[0].bits,
    )
    expected = (1 << r) * ((1 << (p - r)) - 1) // ((1 << t) - 1) - (1 << r) + 1
    if len(subspaces) != expected:
        raise RuntimeError("construction invariant violated: member count mismatch")
    return Spread(p=p, members=tuple(subspaces), kind="partial")


def mixed_spread(p: int, t1: int) -> Spread:
    """One (t1-1)-subspace plus 2^t1 disjoint subspaces of dimension p - t1.

    Needs p/2 < t1 < p.  The effect space embeds in a 2*t1-dimensional space
    carrying a full (t1-1)-spread; aligning one member with the distinguished
    subspace, every other member meets the embedded space in a subspace of
    dimension exactly p - t1.  The distinguished member comes first.
    """
    if not 1 <= t1 < p:
        raise ValueError("need 1 <= t1 < p: a stage cannot use the whole effect space")
    if 2 * t1 <= p:
        raise ValueError(
            f"t1={t1} needs no mixed construction for p={p}: use cyclic_spread or partial_spread"
        )
    ambient = 2 * t1
    big = cyclic_spread(ambient, t1)
    rows = _onto_first_coords(big.members[0].point_masks, t1, ambient)
    limit = 1 << p
    small_dim = p - t1
    rest: list[frozenset[int]] = []
    for other in big.members[1:]:
        cut = frozenset(
            y
            for y in (bitlin.apply_rows(rows, x) for x in other.point_masks)
            if y < limit
        )
        if len(cut) != (1 << small_dim) - 1:
            raise RuntimeError("construction invariant violated: section has wrong size")
        rest.append(cut)
    distinguished = span(tuple(Effect(1 << j, p) for j in range(t1)))
    tail = sorted(
        (
            subspace_from_points(tuple(Effect(m, p) for m in sorted(ms)))
            for ms in rest
        ),
        key=lambda sub: sub.points[0].bits,
    )
    return Spread(p=p, members=(distinguished, *tail), kind="mixed")


@dataclass(frozen=True)
class SpreadCheck:
    """Verification report for a spread; violations are concrete effect words."""

    ok: bool
    member_count: int
    covered: int
    point_total: int
    disjoint_violations: tuple[tuple[int, int, str], ...]
    closure_violations: tuple[tuple[int, str], ...]
    full_partition: bool


def verify_spread(spread: Spread) -> SpreadCheck:
    """Re-check disjointness and per-member closure from the raw point sets."""
    disjoint: list[tuple[int, int, str]] = []
    closure: list[tuple[int, str]] = []
    p = spread.p
    for i, member in enumerate(spread.members):
        masks = member.point_masks
        for a in masks:
            for b in masks:
                if a < b and (a ^ b) not in masks:
                    closure.append((i, f"{Effect(a, p)}*{Effect(b, p)}"))
    for i, m1 in enumerate(spread.members):
        for j in range(i + 1, len(spread.members)):
            for shared in sorted(m1.point_masks & spread.members[j].point_masks):
                disjoint.append((i, j, Effect(shared, p).word))
    covered = len(frozenset().union(*(m.point_masks for m in spread.members)))
    total = (1 << p) - 1
    ok = not disjoint and not closure
    return SpreadCheck(
        ok=ok,
        member_count=len(spread.members),
        covered=covered,
        point_total=total,
        disjoint_violations=tuple(disjoint),
        closure_violations=tuple(closure),
        full_partition=ok and covered == total,
    )


def sub_subspace(subspace: Subspace, dim: int) -> Subspace:
    """Shrink a member to its first dim basis vectors (lexicographic basis)."""
    if not 1 <= dim <= subspace.dim:
        raise ValueError(f"dim must be 1..{subspace.dim}")
    return span(subspace.basis[:dim])
