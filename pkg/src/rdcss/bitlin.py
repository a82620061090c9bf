"""Linear algebra over GF(2) with rows packed into Python ints.

A matrix is a list of ints; bit j of row i is the entry in column j.  Vectors
use the same packing.  The row-vector convention applies throughout: applying
a matrix to a vector means XOR-ing together the rows selected by the vector's
set bits, i.e. x -> xM.
"""

from __future__ import annotations

from typing import Iterable

__all__ = [
    "reduce_vector",
    "rank",
    "is_independent",
    "greedy_basis",
    "complete_basis",
    "apply_rows",
    "matmul",
    "invert",
    "solve",
]


def reduce_vector(v: int, pivots: dict[int, int]) -> int:
    """Reduce v against pivot rows keyed by leading-bit position."""
    while v:
        top = v.bit_length() - 1
        if top not in pivots:
            break
        v ^= pivots[top]
    return v


def _eliminate(rows: Iterable[int]) -> dict[int, int]:
    pivots: dict[int, int] = {}
    for row in rows:
        v = reduce_vector(row, pivots)
        if v:
            pivots[v.bit_length() - 1] = v
    return pivots


def rank(rows: Iterable[int]) -> int:
    """Row rank over GF(2)."""
    return len(_eliminate(rows))


def is_independent(rows: Iterable[int]) -> bool:
    """True iff the rows are linearly independent (none may be zero)."""
    pivots: dict[int, int] = {}
    for row in rows:
        v = reduce_vector(row, pivots)
        if not v:
            return False
        pivots[v.bit_length() - 1] = v
    return True


def greedy_basis(vectors: Iterable[int]) -> list[int]:
    """Subset of the input forming a basis of its span, kept in input order."""
    basis: list[int] = []
    pivots: dict[int, int] = {}
    for v in vectors:
        red = reduce_vector(v, pivots)
        if red:
            pivots[red.bit_length() - 1] = red
            basis.append(v)
    return basis


def complete_basis(vectors: Iterable[int], n: int) -> list[int]:
    """Extend independent vectors to a full basis of GF(2)^n.

    The given vectors come first in their original order; the extension takes
    the lexicographically smallest masks that keep the set independent.
    """
    basis = list(vectors)
    pivots: dict[int, int] = {}
    for v in basis:
        red = reduce_vector(v, pivots)
        if not red:
            raise ValueError("vectors to complete are not independent")
        pivots[red.bit_length() - 1] = red
    cand = 1
    while len(basis) < n:
        red = reduce_vector(cand, pivots)
        if red:
            pivots[red.bit_length() - 1] = red
            basis.append(cand)
        cand += 1
    return basis


def apply_rows(rows: list[int], x: int) -> int:
    """Row-vector product xM: XOR of the rows selected by x's set bits."""
    acc = 0
    while x:
        j = (x & -x).bit_length() - 1
        acc ^= rows[j]
        x &= x - 1
    return acc


def matmul(a_rows: list[int], b_rows: list[int]) -> list[int]:
    """Matrix product AB in the packed-row representation."""
    return [apply_rows(b_rows, row) for row in a_rows]


def invert(rows: list[int], n: int) -> list[int] | None:
    """Inverse of an n x n matrix, or None if singular."""
    # Augment [A | I] in one int per row: A in the high n bits.
    pivots: dict[int, int] = {}
    for i, row in enumerate(rows):
        aug = (row << n) | (1 << i)
        while aug >> n:
            top = (aug >> n).bit_length() - 1
            if top not in pivots:
                break
            aug ^= pivots[top]
        if not aug >> n:
            return None
        pivots[(aug >> n).bit_length() - 1] = aug
    for t in sorted(pivots):
        for u in pivots:
            if u > t and (pivots[u] >> (n + t)) & 1:
                pivots[u] ^= pivots[t]
    mask = (1 << n) - 1
    return [pivots[t] & mask for t in range(n)]


def solve(rows: list[int], rhs_bits: list[int]) -> int | None:
    """One solution of the system {row_i . x = rhs_i}, or None if inconsistent.

    Free variables are set to 0; the returned int packs x bit-wise.
    """
    # Augment each row with its right-hand side in bit 0.
    pivots: dict[int, int] = {}
    for row, b in zip(rows, rhs_bits):
        aug = (row << 1) | (b & 1)
        while aug >> 1:
            top = (aug >> 1).bit_length() - 1
            if top not in pivots:
                break
            aug ^= pivots[top]
        if aug >> 1:
            pivots[(aug >> 1).bit_length() - 1] = aug
        elif aug & 1:
            return None
    x = 0
    # Ascending pivot order: each row's lower mask bits are already decided.
    for top in sorted(pivots):
        aug = pivots[top]
        mask = (aug >> 1) & ~(1 << top)
        if (aug & 1) ^ ((mask & x).bit_count() & 1):
            x |= 1 << top
    return x
