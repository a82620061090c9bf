"""Command-line interface for staged-design construction and analysis.

Commands: exists, spread, construct, transform, simulate, fraction, rank.
Exit codes are a stable contract: 0 success, 2 invalid input, 3 proven
infeasible, 4 search budget exhausted.  All commands are deterministic given
their full flag set; --seed falls back to the RDCSS_SEED environment
variable, then to 0.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bitlin
from . import collineation as coll
from . import existence, fractional, spreads
from .geometry import LETTERS, Effect, intersect, parse_effect, span
from .gf2 import FieldPoly
from .randomization import (
    Design,
    VarianceSpec,
    check_lemma1,
    halfnormal_emit,
    simulate,
    variance_groups,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

MAX_CONSTRUCT_P = 12


class Infeasible(Exception):
    """Raised when a request is proven unsatisfiable (exit code 3)."""


class BudgetExhausted(Exception):
    """Raised when the search budget ran out before a verdict (exit code 4)."""


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("RDCSS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"RDCSS_SEED must be an integer, got {env!r}") from None
    return 0


def _parse_poly(text: str | None, p: int) -> FieldPoly | None:
    if text is None:
        return None
    try:
        mask = int(text, 0)
    except ValueError:
        raise ValueError(
            f"polynomial must be an integer bit mask such as 0x43, got {text!r}"
        ) from None
    poly = FieldPoly.from_mask(mask)
    if poly.degree != p:
        raise ValueError(f"polynomial degree {poly.degree} does not match p={p}")
    return poly


class CliStage:
    """One --stage flag: required effect words plus options after a colon."""

    def __init__(self, text: str, p: int):
        words_part, _, opts_part = text.partition(":")
        words = [w.strip() for w in words_part.split(",") if w.strip()]
        if not words:
            raise ValueError(f"stage {text!r} names no effects")
        self.text = text
        self.effects = tuple(parse_effect(w, p) for w in words)
        self.exact = False
        self.min_dim: int | None = None
        if opts_part:
            for opt in opts_part.split(","):
                opt = opt.strip()
                if opt == "exact":
                    self.exact = True
                elif opt.startswith("min="):
                    self.min_dim = int(opt[4:])
                else:
                    raise ValueError(f"unknown stage option {opt!r} in {text!r}")


def _stage_requirement(stage: CliStage) -> coll.StageRequirement:
    return coll.StageRequirement(
        required_effects=stage.effects, min_dim=stage.min_dim, exact=stage.exact
    )


def _required_rank(stage: CliStage) -> int:
    rk = bitlin.rank([e.bits for e in stage.effects])
    return max(rk, stage.min_dim or 0)


def _build_spread(
    p: int, t: int | None, dims: list[int], poly: FieldPoly | None
) -> spreads.Spread:
    """Pick the spread family a request calls for.

    Explicit t wins; otherwise uniform stage dimensions choose a full or
    partial spread and one oversized stage routes to the mixed construction.
    """
    if t is None:
        t = max(dims)
        if 2 * t > p and len(set(dims)) > 1:
            return spreads.mixed_spread(p, t)
    if p % t == 0:
        return spreads.cyclic_spread(p, t, poly)
    if poly is not None:
        raise ValueError("a custom polynomial only applies to a full cyclic spread")
    return spreads.partial_spread(p, t)


def _search(
    spread: spreads.Spread,
    requirements: list[coll.StageRequirement],
    budget: int | None,
) -> coll.SearchResult:
    result = coll.find_collineation(spread, requirements, max_candidates=budget)
    if result.status == "infeasible":
        raise Infeasible(
            f"no collineation satisfies the stage requirements on this spread "
            f"({result.candidates_tried} candidate assignments checked); "
            "revisit the spread dimensions or relax exact stages"
        )
    if result.status == "budget-exhausted":
        raise BudgetExhausted(
            f"search budget of {result.candidates_tried} candidate assignments "
            "exhausted without a verdict; raise --budget"
        )
    return result


def _matrix_rows(m: coll.Collineation) -> list[list[int]]:
    return [[(row >> j) & 1 for j in range(m.p)] for row in m.rows]


def _sorted_words(points: frozenset[int] | list[int], p: int) -> list[str]:
    return [Effect(b, p).word for b in sorted(points)]


# ---------------------------------------------------------------- exists


def cmd_exists(args: argparse.Namespace) -> int:
    if args.stages:
        dims = tuple(int(x) for x in args.stages.split(","))
        report = existence.feasibility_report(args.p, dims)
    elif args.t1 is not None:
        if not args.t_list:
            raise ValueError("--t1 needs --t-list with the companion dimensions")
        dims = tuple(int(x) for x in args.t_list.split(","))
        report = existence.mixed_existence(args.p, args.t1, dims)
    elif args.t is not None:
        report = existence.spread_report(args.p, args.t)
    else:
        raise ValueError("need one of --t, --stages, or --t1 with --t-list")
    print(json.dumps(report.to_json(), indent=2))
    return EXIT_OK


# ---------------------------------------------------------------- spread


def _spread_grid(spread: spreads.Spread) -> str:
    """Tab-separated member-per-column grid, cyclic columns in field order."""
    header = "\t".join(f"S_{i + 1}" for i in range(len(spread.members)))
    if spread.cycle_table is not None:
        columns = [[e.word for e in col] for col in spread.cycle_table]
    else:
        columns = [
            _sorted_words(mem.point_masks, spread.p) for mem in spread.members
        ]
    depth = max(len(col) for col in columns)
    lines = [header]
    for row in range(depth):
        lines.append(
            "\t".join(col[row] if row < len(col) else "" for col in columns)
        )
    return "\n".join(lines)


def cmd_spread(args: argparse.Namespace) -> int:
    p, t = args.p, args.t
    poly = _parse_poly(args.poly, p)
    if p % t == 0:
        spread = spreads.cyclic_spread(p, t, poly)
    elif args.partial:
        if poly is not None:
            raise ValueError("a custom polynomial only applies to a full cyclic spread")
        spread = spreads.partial_spread(p, t)
    else:
        print(
            f"no full ({t - 1})-spread of PG({p - 1}, 2): {t} does not divide "
            f"{p}; pass --partial for the largest guaranteed partial spread",
            file=sys.stderr,
        )
        return EXIT_INVALID
    print(_spread_grid(spread))
    return EXIT_OK


# ---------------------------------------------------------------- construct


def _fraction_stage_split(
    stage: CliStage, u: int
) -> tuple[tuple[Effect, ...], list[int]]:
    """Split a stage over r factors into basic-effect words and added letters."""
    basic: list[Effect] = []
    added: list[int] = []
    for e in stage.effects:
        if e.bits < (1 << u):
            basic.append(Effect(e.bits, u))
        elif e.order == 1:
            added.append(e.bits.bit_length() - 1)
        else:
            raise ValueError(
                f"stage word {e.word} mixes added factors into an interaction; "
                "stage words are basic-factor effects or single added letters"
            )
    return tuple(basic), added


def _spare_member(
    transformed: spreads.Spread, used: set[int], needed_points: int, min_dim: int
) -> int:
    for j, mem in enumerate(transformed.members):
        if j in used or mem.dim < min_dim:
            continue
        spare = sum(1 for b in mem.point_masks if b.bit_count() >= 2)
        if spare >= needed_points:
            return j
    raise Infeasible(
        "no spread member left with enough interaction points to alias the "
        "added factors of an added-only stage"
    )


def _construct_full(args, stages_cli: list[CliStage], seed: int):
    p = args.p
    dims = [args.t if args.t else _required_rank(s) for s in stages_cli]
    if args.t:
        dims = [max(d, args.t) for d in dims]
    oracle = existence.feasibility_report(p, tuple(dims))
    if oracle.verdict == "exists-with-overlap" and not args.force_try:
        raise Infeasible(
            "existence rules prove the stages cannot be disjoint: "
            + "; ".join(oracle.rules)
            + " (pass --try to search anyway)"
        )
    spread = _build_spread(p, args.t, dims, _parse_poly(args.poly, p))
    result = _search(spread, [_stage_requirement(s) for s in stages_cli], args.budget)
    transformed = coll.apply_to_spread(result.collineation, spread)
    stage_subspaces = [transformed.members[j] for j in result.stage_members]
    design = Design(p=p, stages=tuple(stage_subspaces))
    payload = {
        "schema": 1,
        "kind": "full",
        "p": p,
        "runs": design.n,
        "factors": LETTERS[:p],
        "seed": seed,
        "stages": [
            {
                "name": f"S_{i + 1}",
                "required": [e.word for e in s.effects],
                "exact": s.exact,
                "member_index": result.stage_members[i],
                "basis": [b.word for b in sub.basis],
                "points": _sorted_words(sub.point_masks, p),
            }
            for i, (s, sub) in enumerate(zip(stages_cli, stage_subspaces))
        ],
        "collineation": _matrix_rows(result.collineation),
        "spread": {
            "kind": transformed.kind,
            "members": [
                _sorted_words(mem.point_masks, p) for mem in transformed.members
            ],
        },
        "fraction": None,
    }
    return design, None, payload


def _construct_fraction(args, seed: int):
    r = args.factors
    u = args.basic if args.basic is not None else (r - args.s if args.s else None)
    if u is None:
        raise ValueError("fraction construction needs --basic or --s with --factors")
    if args.t is None:
        raise ValueError("fraction construction needs --t for the base spread")
    stages_cli = [CliStage(text, r) for text in args.stage]
    splits = [_fraction_stage_split(s, u) for s in stages_cli]

    letter_stage: dict[int, int] = {}
    for i, (_, added) in enumerate(splits):
        for ell in added:
            if ell in letter_stage:
                raise ValueError(
                    f"added factor {LETTERS[ell]} appears in two stages"
                )
            letter_stage[ell] = i

    base_reqs = []
    req_stage_idx = []
    for i, (basic, added) in enumerate(splits):
        if basic:
            base_reqs.append(
                coll.StageRequirement(
                    required_effects=basic,
                    min_dim=stages_cli[i].min_dim,
                    exact=stages_cli[i].exact,
                )
            )
            req_stage_idx.append(i)

    dims = [args.t] * len(stages_cli)
    oracle = existence.feasibility_report(u, tuple(dims))
    if oracle.verdict == "exists-with-overlap" and not args.force_try:
        raise Infeasible(
            "existence rules prove the stages cannot be disjoint: "
            + "; ".join(oracle.rules)
            + " (pass --try to search anyway)"
        )
    spread = _build_spread(u, args.t, dims, _parse_poly(args.poly, u))
    if base_reqs:
        result = _search(spread, base_reqs, args.budget)
        matrix = result.collineation
        transformed = coll.apply_to_spread(matrix, spread)
        member_for_stage = dict(zip(req_stage_idx, result.stage_members))
    else:
        matrix = coll.Collineation.identity(u)
        transformed = spread
        member_for_stage = {}

    used = set(member_for_stage.values())
    for i, (basic, added) in enumerate(splits):
        if basic:
            continue
        j = _spare_member(
            transformed, used, len(added), stages_cli[i].min_dim or args.t
        )
        member_for_stage[i] = j
        used.add(j)

    base_design = Design(
        p=u, stages=tuple(transformed.members[member_for_stage[i]] for i in range(len(stages_cli)))
    )
    bindings = tuple(
        letter_stage.get(u + j) for j in range(r - u)
    )
    generators = fractional.choose_generators(base_design, r, bindings)
    spec = fractional.FractionSpec(factors=r, basic=u, generators=generators)
    fraction = fractional.build_fraction(base_design, spec)

    payload = {
        "schema": 1,
        "kind": "fraction",
        "p": r,
        "runs": fraction.runs,
        "factors": LETTERS[:r],
        "base_p": u,
        "seed": seed,
        "stages": [
            {
                "name": f"S_{i + 1}",
                "required": [e.word for e in stages_cli[i].effects],
                "exact": stages_cli[i].exact,
                "member_index": member_for_stage[i],
                "basis": [b.word for b in base_design.stages[i].basis],
                "points": _sorted_words(base_design.stages[i].point_masks, u),
                "lifted_basis": [b.word for b in fraction.stages[i].basis],
                "lifted_points": _sorted_words(fraction.stages[i].point_masks, r),
            }
            for i in range(len(stages_cli))
        ],
        "collineation": _matrix_rows(matrix),
        "spread": {
            "kind": transformed.kind,
            "members": [
                _sorted_words(mem.point_masks, u) for mem in transformed.members
            ],
        },
        "fraction": fractional.fraction_spec_to_dict(spec),
    }
    return base_design, fraction, payload


def load_design(path: str | Path):
    """Read a design file back into (base design, fraction or None, payload)."""
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read design file {path}: {exc}") from None
    try:
        if payload["schema"] != 1:
            raise ValueError(f"unsupported design schema {payload['schema']!r}")
        base_p = payload["base_p"] if payload["kind"] == "fraction" else payload["p"]
        stages = tuple(
            span(tuple(parse_effect(w, base_p) for w in st["basis"]))
            for st in payload["stages"]
        )
        design = Design(p=base_p, stages=stages)
        fraction = None
        if payload["kind"] == "fraction":
            spec = fractional.parse_fraction_spec(payload["fraction"])
            fraction = fractional.build_fraction(design, spec)
        return design, fraction, payload
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed design file {path}: {exc!r}") from None


def verification_payload(
    design: Design,
    fraction: fractional.FractionalDesign | None,
    payload: dict,
) -> dict:
    """Recomputable verification report for a constructed design."""
    p_total = payload["p"]
    stages = fraction.stages if fraction is not None else design.stages
    m = len(stages)
    disjoint = True
    for i in range(m):
        for j in range(i + 1, m):
            if intersect(design.stages[i], design.stages[j]) is not None:
                disjoint = False
    met = []
    for st, sub in zip(payload["stages"], stages):
        words = [parse_effect(w, p_total) for w in st["required"]]
        ok = all(e.bits in sub.point_masks for e in words)
        if st["exact"] and fraction is None:
            ok = ok and span(tuple(words)).point_masks == sub.point_masks
        met.append(ok)
    # float32 keeps the +-1 sums exact (n <= 2^12 < 2^24) and stays on BLAS.
    xf = design.model_matrix.astype(np.float32)
    orthogonal = bool(
        np.array_equal(xf.T @ xf, design.n * np.eye(design.n, dtype=np.float32))
    )
    report = {
        "schema": 1,
        "runs": payload["runs"],
        "stage_sizes": [len(s) for s in stages],
        "pairwise_disjoint": disjoint,
        "requirements_met": met,
        "lemma1": check_lemma1(design),
        "model_orthogonal": orthogonal,
        "defining_words_satisfied": None,
        "resolution": None,
        "stage_factor_sets": None,
    }
    if fraction is not None:
        words = fraction.subgroup.masks()
        satisfied = all(
            (run & w).bit_count() % 2 == 0
            for run in fraction.run_masks
            for w in words
        )
        report["defining_words_satisfied"] = satisfied
        report["resolution"] = fraction.subgroup.resolution
        report["stage_factor_sets"] = [
            list(s) for s in fractional.stage_factor_sets(fraction)
        ]
    return report


def _write_runs_csv(path: Path, matrix: np.ndarray, letters: str, coding: str) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(letters))
        for row in matrix:
            if coding == "pm1":
                writer.writerow([1 - 2 * int(v) for v in row])
            else:
                writer.writerow([int(v) for v in row])


def cmd_construct(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    if args.factors is not None:
        design, fraction, payload = _construct_fraction(args, seed)
        run_matrix = fraction.run_matrix
        letters = LETTERS[: fraction.factors]
    else:
        if args.p is None:
            raise ValueError("construct needs --p (full design) or --factors (fraction)")
        if args.p > MAX_CONSTRUCT_P:
            raise ValueError(
                f"run-matrix export is limited to p <= {MAX_CONSTRUCT_P}"
            )
        stages_cli = [CliStage(text, args.p) for text in args.stage]
        if not stages_cli:
            raise ValueError("construct needs at least one --stage")
        design, fraction, payload = _construct_full(args, stages_cli, seed)
        run_matrix = design.run_matrix
        letters = LETTERS[: design.p]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "design.json").write_text(json.dumps(payload, indent=2) + "\n")
    _write_runs_csv(out / "runs.csv", run_matrix, letters, args.coding)
    verification = verification_payload(design, fraction, payload)
    (out / "verification.json").write_text(json.dumps(verification, indent=2) + "\n")
    print(
        f"wrote design.json, runs.csv, verification.json to {out} "
        f"({payload['runs']} runs, {len(payload['stages'])} stages)"
    )
    return EXIT_OK


# ---------------------------------------------------------------- transform


def cmd_transform(args: argparse.Namespace) -> int:
    p = args.p
    stages_cli = [CliStage(text, p) for text in args.stage]
    if not stages_cli:
        raise ValueError("transform needs at least one --stage")
    dims = [args.t if args.t else _required_rank(s) for s in stages_cli]
    spread = _build_spread(p, args.t, dims, _parse_poly(args.poly, p))
    result = _search(spread, [_stage_requirement(s) for s in stages_cli], args.budget)
    transformed = coll.apply_to_spread(result.collineation, spread)
    print(
        json.dumps(
            {
                "status": result.status,
                "candidates_tried": result.candidates_tried,
                "collineation": _matrix_rows(result.collineation),
                "stage_members": [j + 1 for j in result.stage_members],
                "members": [
                    _sorted_words(mem.point_masks, p) for mem in transformed.members
                ],
            },
            indent=2,
        )
    )
    return EXIT_OK


# ---------------------------------------------------------------- simulate


def cmd_simulate(args: argparse.Namespace) -> int:
    design, fraction, payload = load_design(args.design)
    if len(args.stage_var) != len(design.stages):
        raise ValueError(
            f"need one --stage-var per stage ({len(design.stages)}), "
            f"got {len(args.stage_var)}"
        )
    seed = _resolve_seed(args.seed)
    spec = VarianceSpec(sigma2=args.sigma2, stage_variances=tuple(args.stage_var))
    beta = np.zeros(design.n)
    for text in args.beta:
        word, _, value = text.partition("=")
        if not value:
            raise ValueError(f"--beta expects WORD=VALUE, got {text!r}")
        beta[parse_effect(word.strip(), design.p).bits] = float(value)
    estimates = simulate(design, spec, beta=beta, reps=args.reps, seed=seed)
    report = variance_groups(design, spec)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    header = ["I"] + [Effect(b, design.p).word for b in range(1, design.n)]
    with (out / "estimates.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in estimates:
            writer.writerow([f"{v:.10g}" for v in row])
    with (out / "halfnormal.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["group", "effect", "abs_estimate", "quantile"])
        for row in halfnormal_emit(estimates[0], report):
            writer.writerow(
                [row.group, row.effect, f"{row.abs_estimate:.10g}", f"{row.quantile:.10g}"]
            )
    groups_json = []
    for group in report.groups:
        cols = [e.bits for e in group.effects]
        empirical = (
            float(np.mean(np.var(estimates[:, cols], axis=0, ddof=1)))
            if args.reps > 1
            else None
        )
        groups_json.append(
            {
                "group": group.label,
                "stages": [i + 1 for i in group.stage_indices],
                "size": len(group.effects),
                "theoretical_variance": group.variance,
                "empirical_variance": empirical,
                "flags": list(group.flags),
            }
        )
    summary = {
        "design": str(args.design),
        "reps": args.reps,
        "seed": seed,
        "sigma2": args.sigma2,
        "stage_variances": list(args.stage_var),
        "groups": groups_json,
        "notes": list(report.notes),
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(
        f"wrote estimates.csv, halfnormal.csv, summary.json to {out} "
        f"({args.reps} reps, {len(report.groups)} variance groups)"
    )
    return EXIT_OK


# ---------------------------------------------------------------- fraction


def _load_fraction_spec(text: str) -> fractional.FractionSpec:
    if text.lstrip().startswith("{"):
        return fractional.parse_fraction_spec(text)
    try:
        raw = Path(text).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read fraction spec {text}: {exc}") from None
    return fractional.parse_fraction_spec(raw)


def cmd_fraction(args: argparse.Namespace) -> int:
    spec = _load_fraction_spec(args.spec)
    subgroup = fractional.defining_subgroup(spec)
    clear = fractional.clear_effects(subgroup)
    out = {
        "factors": spec.factors,
        "basic": spec.basic,
        "words": [w.word for w in subgroup.words],
        "wlp": list(subgroup.wlp),
        "resolution": subgroup.resolution,
        "clear_mains": list(clear.clear_mains),
        "clear_two_fis": list(clear.clear_two_fis),
    }
    if args.design:
        design, _, _ = load_design(args.design)
        fraction = fractional.build_fraction(design, spec)
        out["stage_factor_sets"] = [
            list(s) for s in fractional.stage_factor_sets(fraction)
        ]
        out["lifted_stage_sizes"] = [len(s) for s in fraction.stages]
        if args.out_dir:
            d = Path(args.out_dir)
            d.mkdir(parents=True, exist_ok=True)
            _write_runs_csv(
                d / "runs.csv",
                fraction.run_matrix,
                LETTERS[: fraction.factors],
                args.coding,
            )
    print(json.dumps(out, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------- rank


def cmd_rank(args: argparse.Namespace) -> int:
    try:
        raw = json.loads(Path(args.candidates).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read candidates file {args.candidates}: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise ValueError("candidates file must hold a nonempty JSON list of fraction specs")
    specs = [fractional.parse_fraction_spec(entry) for entry in raw]
    ranked = fractional.rank_designs(specs, criterion=args.criterion)
    out = [
        {
            "rank": i + 1,
            "spec": fractional.fraction_spec_to_dict(rd.spec),
            "resolution": rd.resolution,
            "wlp": list(rd.wlp),
            "clear_mains": len(rd.clear.clear_mains),
            "clear_two_fis": len(rd.clear.clear_two_fis),
        }
        for i, rd in enumerate(ranked)
    ]
    print(json.dumps(out, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdcss",
        description="Randomization defining contrast subspaces for 2^p designs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_exists = sub.add_parser("exists", help="existence numbers for stage layouts")
    p_exists.add_argument("--p", type=int, required=True)
    p_exists.add_argument("--t", type=int, help="single subspace dimension")
    p_exists.add_argument("--stages", help="comma-separated stage dimensions")
    p_exists.add_argument("--t1", type=int, help="oversized stage dimension")
    p_exists.add_argument("--t-list", help="companion dimensions for --t1")
    p_exists.set_defaults(func=cmd_exists)

    p_spread = sub.add_parser("spread", help="print a spread as a member-per-column grid")
    p_spread.add_argument("--p", type=int, required=True)
    p_spread.add_argument("--t", type=int, required=True)
    p_spread.add_argument("--poly", help="primitive polynomial bit mask, e.g. 0x43")
    p_spread.add_argument("--partial", action="store_true")
    p_spread.set_defaults(func=cmd_spread)

    p_construct = sub.add_parser("construct", help="build a design and write its files")
    p_construct.add_argument("--p", type=int)
    p_construct.add_argument("--factors", type=int, help="total factors r of a fraction")
    p_construct.add_argument("--basic", type=int, help="basic factor count u")
    p_construct.add_argument("--s", type=int, help="added factor count (u = r - s)")
    p_construct.add_argument("--t", type=int, help="spread member dimension")
    p_construct.add_argument(
        "--stage",
        action="append",
        default=[],
        metavar="WORDS[:exact|:min=K]",
        help="required effects of one stage, e.g. 'ABC,BDE,CEF:exact'",
    )
    p_construct.add_argument("--poly")
    p_construct.add_argument("--seed", type=int)
    p_construct.add_argument("--budget", type=int)
    p_construct.add_argument(
        "--try",
        dest="force_try",
        action="store_true",
        help="search even when existence rules predict overlap",
    )
    p_construct.add_argument("--coding", choices=["01", "pm1"], default="01")
    p_construct.add_argument("--out-dir", default=".")
    p_construct.set_defaults(func=cmd_construct)

    p_transform = sub.add_parser(
        "transform", help="find a collineation for stage requirements"
    )
    p_transform.add_argument("--p", type=int, required=True)
    p_transform.add_argument("--t", type=int)
    p_transform.add_argument(
        "--stage", action="append", default=[], metavar="WORDS[:exact|:min=K]"
    )
    p_transform.add_argument("--poly")
    p_transform.add_argument("--budget", type=int)
    p_transform.set_defaults(func=cmd_transform)

    p_sim = sub.add_parser("simulate", help="Monte Carlo effect estimates for a design")
    p_sim.add_argument("--design", required=True, help="path to design.json")
    p_sim.add_argument("--sigma2", type=float, default=1.0)
    p_sim.add_argument(
        "--stage-var", type=float, action="append", default=[], metavar="VAR"
    )
    p_sim.add_argument("--beta", action="append", default=[], metavar="WORD=VALUE")
    p_sim.add_argument("--reps", type=int, default=1000)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--out-dir", default=".")
    p_sim.set_defaults(func=cmd_simulate)

    p_frac = sub.add_parser("fraction", help="analyze a fraction spec")
    p_frac.add_argument("--spec", required=True, help="JSON file or literal JSON")
    p_frac.add_argument("--design", help="base design.json to attach the fraction to")
    p_frac.add_argument("--out-dir")
    p_frac.add_argument("--coding", choices=["01", "pm1"], default="01")
    p_frac.set_defaults(func=cmd_fraction)

    p_rank = sub.add_parser("rank", help="order candidate fractions best-first")
    p_rank.add_argument(
        "--criterion",
        choices=["wlp-aberration", "clear-count"],
        default="wlp-aberration",
    )
    p_rank.add_argument("--candidates", required=True, help="JSON list of fraction specs")
    p_rank.set_defaults(func=cmd_rank)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
