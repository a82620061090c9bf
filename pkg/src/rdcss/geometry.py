"""Effects of a 2^p design as points of the projective geometry PG(p-1, 2).

An effect is a nonzero 0/1 vector of length p; factor j (letter A, B, ...)
sits in coordinate j, packed into bit j of an int mask.  Ascending masks give
the standard ordering A, B, AB, C, AC, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import bitlin

__all__ = [
    "LETTERS",
    "MAX_FACTORS",
    "Effect",
    "parse_effect",
    "rank",
    "span",
    "subspace_from_points",
    "intersect",
    "Subspace",
    "EffectSpace",
    "all_subspaces",
]

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWX"
MAX_FACTORS = len(LETTERS)


@dataclass(frozen=True, order=True)
class Effect:
    """One factorial effect, i.e. one point of PG(p-1, 2)."""

    bits: int
    p: int

    def __post_init__(self) -> None:
        if not 2 <= self.p <= MAX_FACTORS:
            raise ValueError(f"factor count must be 2..{MAX_FACTORS}")
        if not 0 < self.bits < (1 << self.p):
            raise ValueError("effect must be nonzero and within the factor range")

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> j) & 1 for j in range(self.p))

    @property
    def word(self) -> str:
        return "".join(LETTERS[j] for j in range(self.p) if (self.bits >> j) & 1)

    @property
    def order(self) -> int:
        """Number of factors in the effect (1 = main effect)."""
        return self.bits.bit_count()

    def __str__(self) -> str:
        return self.word


def parse_effect(word: str, p: int) -> Effect:
    """Parse a factor word such as 'BDE' into an Effect."""
    if not word:
        raise ValueError("empty factor word")
    bits = 0
    for ch in word:
        j = LETTERS.find(ch.upper())
        if j < 0 or j >= p:
            raise ValueError(f"unknown factor letter {ch!r} for p={p}")
        if bits >> j & 1:
            raise ValueError(f"repeated factor letter {ch!r} in {word!r}")
        bits |= 1 << j
    return Effect(bits, p)


def _same_space(effects: Sequence[Effect]) -> int:
    ps = {e.p for e in effects}
    if len(ps) != 1:
        raise ValueError("effects live in different factor counts")
    return ps.pop()


def rank(effects: Sequence[Effect]) -> int:
    """GF(2) rank of a list of effects."""
    if not effects:
        return 0
    _same_space(effects)
    return bitlin.rank(e.bits for e in effects)


@dataclass(frozen=True)
class Subspace:
    """A t-dimensional subspace of effects: 2^t - 1 points closed under XOR."""

    p: int
    basis: tuple[Effect, ...]
    points: tuple[Effect, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def point_masks(self) -> frozenset[int]:
        return frozenset(e.bits for e in self.points)

    def contains(self, effect: Effect) -> bool:
        return effect.bits in self.point_masks

    def __len__(self) -> int:
        return len(self.points)


def _span_masks(basis_masks: Sequence[int]) -> list[int]:
    masks = [0]
    for g in basis_masks:
        masks += [x ^ g for x in masks]
    masks.pop(0)
    masks.sort()
    return masks


def span(generators: Sequence[Effect]) -> Subspace:
    """Subspace spanned by independent generators."""
    if not generators:
        raise ValueError("span needs at least one generator")
    p = _same_space(generators)
    pivots: dict[int, int] = {}
    for g in generators:
        red = bitlin.reduce_vector(g.bits, pivots)
        if not red:
            raise ValueError(f"generators not independent: {g.word} is spanned by the others")
        pivots[red.bit_length() - 1] = red
    points = tuple(Effect(m, p) for m in _span_masks([g.bits for g in generators]))
    return Subspace(p=p, basis=tuple(generators), points=points)


def subspace_from_points(points: Sequence[Effect]) -> Subspace:
    """Build a Subspace from its full point set, verifying closure."""
    if not points:
        raise ValueError("empty point set")
    p = _same_space(points)
    masks = sorted({e.bits for e in points})
    if len(masks) != len(points):
        raise ValueError("duplicate points")
    basis_masks = bitlin.greedy_basis(masks)
    t = len(basis_masks)
    if len(masks) != (1 << t) - 1:
        raise ValueError(f"point set of size {len(masks)} does not fill a rank-{t} subspace")
    if _span_masks(basis_masks) != masks:
        raise ValueError("point set is not closed under XOR")
    return Subspace(
        p=p,
        basis=tuple(Effect(m, p) for m in basis_masks),
        points=tuple(Effect(m, p) for m in masks),
    )


def intersect(s1: Subspace, s2: Subspace) -> Subspace | None:
    """Intersection subspace, or None when the subspaces share no effect."""
    if s1.p != s2.p:
        raise ValueError("subspaces live in different factor counts")
    common = sorted(s1.point_masks & s2.point_masks)
    if not common:
        return None
    return subspace_from_points(tuple(Effect(m, s1.p) for m in common))


@dataclass(frozen=True)
class EffectSpace:
    """The full effect space of a 2^p design: every point of PG(p-1, 2)."""

    p: int

    @cached_property
    def all_points(self) -> tuple[Effect, ...]:
        return tuple(Effect(m, self.p) for m in range(1, 1 << self.p))

    def __len__(self) -> int:
        return (1 << self.p) - 1


def all_subspaces(p: int, t: int) -> Iterable[Subspace]:
    """Every (t-1)-dimensional projective subspace of PG(p-1, 2).

    Exhaustive generation for small p; intended for verification sweeps.
    """
    seen: set[frozenset[int]] = set()
    masks = range(1, 1 << p)
    for combo in combinations(masks, t):
        if not bitlin.is_independent(combo):
            continue
        pts = frozenset(_span_masks(combo))
        if pts in seen:
            continue
        seen.add(pts)
        yield subspace_from_points(tuple(Effect(m, p) for m in sorted(pts)))
