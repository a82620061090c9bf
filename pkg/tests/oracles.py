"""Independent reference implementations that pin the expected test values.

Nothing here touches the package's packed-int code paths: polynomials are
coefficient lists, spans come from enumerating XOR subsets, and subspaces are
found by brute force over point combinations.  Slow but transparently correct
at the sizes under test.
"""

from __future__ import annotations

from itertools import combinations

# ---------------------------------------------------------------- GF(2)[x]
# Schoolbook polynomial arithmetic on coefficient lists, index k = x^k.


def poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] ^= bj
    return poly_trim(out)


def poly_mod(a: list[int], m: list[int]) -> list[int]:
    a = list(a)
    poly_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] ^= mj
        poly_trim(a)
    return a


def poly_pow_x_mod(e: int, m: list[int]) -> list[int]:
    """x^e mod m by square and multiply on coefficient lists."""
    acc = [1]
    base = poly_mod([0, 1], m)
    while e:
        if e & 1:
            acc = poly_mod(poly_mul(acc, base), m)
        base = poly_mod(poly_mul(base, base), m)
        e >>= 1
    return acc


def exponents_to_coeffs(exponents: tuple[int, ...]) -> list[int]:
    out = [0] * (max(exponents) + 1)
    for e in exponents:
        out[e] = 1
    return out


def field_power_mask(i: int, exponents: tuple[int, ...], p: int) -> int:
    """Packed coordinates of w^i under the coords[0] <-> w^(p-1) convention."""
    c = poly_pow_x_mod(i, exponents_to_coeffs(exponents))
    c = c + [0] * (p - len(c))
    return sum(c[j] << (p - 1 - j) for j in range(p))


# ---------------------------------------------------------------- spans


def xor_span(masks) -> frozenset[int]:
    """All nonzero XOR combinations of the given masks."""
    out = {0}
    for m in masks:
        out |= {x ^ m for x in out}
    return frozenset(out - {0})


def rank_of(masks) -> int:
    return (len(xor_span(masks)) + 1).bit_length() - 1


def all_subspaces_brute(p: int, t: int) -> set[frozenset[int]]:
    """Every (t-1)-dimensional projective subspace as a point-mask set."""
    found: set[frozenset[int]] = set()
    for combo in combinations(range(1, 1 << p), t):
        s = xor_span(combo)
        if len(s) == (1 << t) - 1:
            found.add(s)
    return found
