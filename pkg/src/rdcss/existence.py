"""Closed-form existence verdicts for disjoint effect-subspace configurations.

All counts are exact integers.  Each number in a report is labeled with the
rule that produced it: the Andre divisibility condition for full spreads, the
Eisfeld-Storme partial-spread guarantee, the Govaerts deficiency bound, the
overlap dimension bound for forced intersections, and the double-space
section construction for one oversized stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Effect, Subspace, span

__all__ = [
    "ExistenceReport",
    "full_spread_exists",
    "full_spread_count",
    "pairwise_min_overlap",
    "overlap_witness",
    "partial_spread_guarantee",
    "partial_spread_upper_bound",
    "spread_report",
    "mixed_existence",
    "feasibility_report",
]


@dataclass(frozen=True)
class ExistenceReport:
    """Verdict plus the numbers behind it; rules name the theorem used per number."""

    verdict: str  # exists | exists-with-overlap | unknown-within-bounds
    p: int
    stage_dims: tuple[int, ...] | None
    t: int | None
    guaranteed_count: int | None
    upper_bound: int | None
    min_overlap_size: int
    k: int | None = None
    r: int | None = None
    deficiency: int | None = None
    rules: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "p": self.p,
            "stage_dims": list(self.stage_dims) if self.stage_dims else None,
            "t": self.t,
            "guarantee": self.guaranteed_count,
            "upper_bound": self.upper_bound,
            "min_overlap": self.min_overlap_size,
            "k": self.k,
            "r": self.r,
            "deficiency": self.deficiency,
            "rules": list(self.rules),
        }


def _check_dim(p: int, t: int) -> None:
    if not 0 < t < p:
        raise ValueError(f"stage dimension must satisfy 0 < t < p, got t={t}, p={p}")


def full_spread_exists(p: int, t: int) -> bool:
    """Andre divisibility: a full (t-1)-spread of PG(p-1,2) exists iff t | p."""
    _check_dim(p, t)
    return p % t == 0


def full_spread_count(p: int, t: int) -> int:
    """Member count (2^p - 1)/(2^t - 1) of a full spread; requires t | p."""
    _check_dim(p, t)
    if p % t:
        raise ValueError(f"{t} does not divide {p}: no full spread")
    return ((1 << p) - 1) // ((1 << t) - 1)


def pairwise_min_overlap(p: int, t1: int, t2: int) -> int:
    """Smallest possible intersection size of subspaces of dims t1 and t2.

    Zero when t1 + t2 <= p; otherwise the overlap dimension bound forces
    2^(t1+t2-p) - 1 shared effects, which the witness construction attains.
    """
    _check_dim(p, t1)
    _check_dim(p, t2)
    if t1 + t2 <= p:
        return 0
    return (1 << (t1 + t2 - p)) - 1


def overlap_witness(p: int, t1: int, t2: int) -> tuple[Subspace, Subspace]:
    """A dim-(t1, t2) subspace pair attaining pairwise_min_overlap.

    First subspace on the first t1 coordinates, second on the last t2; their
    shared coordinates realize the minimum exactly.
    """
    _check_dim(p, t1)
    _check_dim(p, t2)
    s1 = span(tuple(Effect(1 << j, p) for j in range(t1)))
    s2 = span(tuple(Effect(1 << j, p) for j in range(p - t2, p)))
    return s1, s2


def _split(p: int, t: int) -> tuple[int, int]:
    _check_dim(p, t)
    k, r = divmod(p, t)
    if r == 0:
        raise ValueError(
            f"{t} divides {p}: use the full spread count {(1 << p) - 1}//{(1 << t) - 1}"
        )
    return k, r


def _nominal(p: int, t: int) -> int:
    k, r = _split(p, t)
    return (1 << r) * ((1 << (k * t)) - 1) // ((1 << t) - 1)


def partial_spread_guarantee(p: int, t: int) -> int:
    """Eisfeld-Storme guarantee: 2^r (2^kt - 1)/(2^t - 1) - 2^r + 1 members."""
    k, r = _split(p, t)
    return _nominal(p, t) - (1 << r) + 1


def partial_spread_upper_bound(p: int, t: int) -> int:
    """Govaerts deficiency bound on the size of any partial (t-1)-spread."""
    k, r = _split(p, t)
    if r == 1:
        s_min = 1
    elif t >= 2 * r:
        s_min = (1 << (r - 1)) - 1
    else:
        s_min = (1 << (r - 1)) - (1 << (2 * r - t - 1)) + 1
    return _nominal(p, t) - s_min


def spread_report(p: int, t: int) -> ExistenceReport:
    """How many pairwise-disjoint subspaces of one dimension fit in PG(p-1,2)."""
    _check_dim(p, t)
    if p % t == 0:
        count = full_spread_count(p, t)
        return ExistenceReport(
            verdict="exists",
            p=p,
            stage_dims=None,
            t=t,
            guaranteed_count=count,
            upper_bound=count,
            min_overlap_size=0,
            rules=(f"Andre divisibility: t | p, full spread of {count} members",),
        )
    k, r = divmod(p, t)
    guarantee = partial_spread_guarantee(p, t)
    upper = partial_spread_upper_bound(p, t)
    return ExistenceReport(
        verdict="exists",
        p=p,
        stage_dims=None,
        t=t,
        guaranteed_count=guarantee,
        upper_bound=upper,
        min_overlap_size=0,
        k=k,
        r=r,
        deficiency=_nominal(p, t) - upper,
        rules=(
            f"Eisfeld-Storme guarantee: {guarantee} disjoint members",
            f"Govaerts deficiency bound: at most {upper} disjoint members",
        ),
    )


def mixed_existence(p: int, t1: int, t_list: tuple[int, ...]) -> ExistenceReport:
    """Slots around one oversized stage via the double-space section construction.

    For p/2 < t1 < p there are 2^t1 + 1 slots: one of dimension t1 and 2^t1 of
    dimension p - t1, shrinkable to smaller requests.  Boundary cases and
    oversized companions are reported, not raised.
    """
    _check_dim(p, t1)
    for t in t_list:
        _check_dim(p, t)
    dims = (t1, *t_list)
    over = [t for t in t_list if t > p - t1]
    if over:
        forced = max((1 << (t1 + t - p)) - 1 for t in over)
        return ExistenceReport(
            verdict="exists-with-overlap",
            p=p,
            stage_dims=dims,
            t=None,
            guaranteed_count=None,
            upper_bound=None,
            min_overlap_size=forced,
            rules=(
                f"overlap dimension bound: companion dims {over} exceed p-t1={p - t1}, "
                f"forcing at least {forced} shared effects with the t1 stage",
            ),
        )
    if 2 * t1 == p:
        count = full_spread_count(p, t1)
        return ExistenceReport(
            verdict="exists" if len(dims) <= count else "exists-with-overlap",
            p=p,
            stage_dims=dims,
            t=t1,
            guaranteed_count=count,
            upper_bound=count,
            min_overlap_size=0,
            rules=(
                "boundary t1 = p/2: a full (t1-1)-spread exists "
                f"(Andre divisibility), {count} members",
            ),
        )
    if 2 * t1 < p:
        report = feasibility_report(p, dims)
        return ExistenceReport(
            verdict=report.verdict,
            p=report.p,
            stage_dims=report.stage_dims,
            t=report.t,
            guaranteed_count=report.guaranteed_count,
            upper_bound=report.upper_bound,
            min_overlap_size=report.min_overlap_size,
            k=report.k,
            r=report.r,
            deficiency=report.deficiency,
            rules=(f"t1 = {t1} <= p/2: no oversized stage, equal-size machinery applies",)
            + report.rules,
        )
    slots = (1 << t1) + 1
    return ExistenceReport(
        verdict="exists" if len(dims) <= slots else "exists-with-overlap",
        p=p,
        stage_dims=dims,
        t=None,
        guaranteed_count=slots,
        upper_bound=None,
        min_overlap_size=0,
        rules=(
            "double-space section construction: 2^t1 + 1 slots "
            f"(one of dim {t1}, {1 << t1} of dim {p - t1})",
        ),
    )


def feasibility_report(p: int, stage_dims: tuple[int, ...]) -> ExistenceReport:
    """Route a stage-dimension request to the rule that decides it."""
    if not stage_dims:
        raise ValueError("at least one stage dimension is needed")
    for t in stage_dims:
        _check_dim(p, t)
    m = len(stage_dims)
    dims = tuple(stage_dims)
    t_max = max(dims)

    overlaps = [
        (a, b, pairwise_min_overlap(p, dims[a], dims[b]))
        for a in range(m)
        for b in range(a + 1, m)
    ]
    worst = max((o for _, _, o in overlaps), default=0)

    if worst > 0:
        rules = [
            f"overlap dimension bound: dims {dims[a]},{dims[b]} sum past p, "
            f"at least {o} shared effects"
            for a, b, o in overlaps
            if o > 0
        ]
        guarantee = upper = None
        k = r = None
        if len(set(dims)) == 1 and p % t_max:
            k, r = divmod(p, t_max)
            guarantee = partial_spread_guarantee(p, t_max)
            upper = partial_spread_upper_bound(p, t_max)
            rules.append(f"Eisfeld-Storme guarantee: {guarantee} disjoint members")
            rules.append(f"Govaerts deficiency bound: at most {upper} disjoint members")
        return ExistenceReport(
            verdict="exists-with-overlap",
            p=p,
            stage_dims=dims,
            t=t_max if len(set(dims)) == 1 else None,
            guaranteed_count=guarantee,
            upper_bound=upper,
            min_overlap_size=worst,
            k=k,
            r=r,
            rules=tuple(rules),
        )

    if len(set(dims)) == 1:
        t = t_max
        if p % t == 0:
            count = full_spread_count(p, t)
            verdict = "exists" if m <= count else "exists-with-overlap"
            return ExistenceReport(
                verdict=verdict,
                p=p,
                stage_dims=dims,
                t=t,
                guaranteed_count=count,
                upper_bound=count,
                min_overlap_size=0,
                rules=(f"Andre divisibility: t | p, full spread of {count} members",),
            )
        k, r = divmod(p, t)
        guarantee = partial_spread_guarantee(p, t)
        upper = partial_spread_upper_bound(p, t)
        if m <= guarantee:
            verdict = "exists"
        elif m <= upper:
            verdict = "unknown-within-bounds"
        else:
            verdict = "exists-with-overlap"
        deficiency = _nominal(p, t) - upper
        return ExistenceReport(
            verdict=verdict,
            p=p,
            stage_dims=dims,
            t=t,
            guaranteed_count=guarantee,
            upper_bound=upper,
            min_overlap_size=0,
            k=k,
            r=r,
            deficiency=deficiency,
            rules=(
                f"Eisfeld-Storme guarantee: {guarantee} disjoint members",
                f"Govaerts deficiency bound: at most {upper} disjoint members",
            ),
        )

    if 2 * t_max > p:
        # Only one stage can exceed p/2 here: two such dims would sum past p
        # and land in the overlap branch above.
        companions = list(dims)
        companions.remove(t_max)
        return mixed_existence(p, t_max, tuple(companions))

    # Unequal dims, none oversized: guarantee at the largest dimension and
    # shrink distinct members for the smaller stages.
    if p % t_max == 0:
        count = full_spread_count(p, t_max)
        rule = f"Andre divisibility at t={t_max}: {count} members, smaller stages shrink members"
    else:
        count = partial_spread_guarantee(p, t_max)
        rule = (
            f"Eisfeld-Storme guarantee at t={t_max}: {count} members, "
            "smaller stages shrink members"
        )
    verdict = "exists" if m <= count else "unknown-within-bounds"
    return ExistenceReport(
        verdict=verdict,
        p=p,
        stage_dims=dims,
        t=None,
        guaranteed_count=count,
        upper_bound=None,
        min_overlap_size=0,
        rules=(rule,),
    )
