"""Command-line front end.

Subcommands:
  census             exhaustive or sampled cycle census over one map family
  verify lemma-polys exact k-cycle totals over polynomials vs closed form
  verify rat-count   enumerated rational-map counts vs closed form
  verify prov        brute-force interpolation-family counts vs case table
  verify cycle-bounds rational k-cycle totals vs strict sandwich bounds
  baseline random    uniform random self-maps
  baseline quadratic in-degree-{0,m} graphs
  theory             closed-form values for a (q, d) pair, no enumeration
  rho                iteration tail+cycle length experiment

Exit codes: 0 success, 1 when any theory comparison in the emitted
report has status "fail", 2 on usage, precondition, or budget errors.

JSON output echoes the run configuration; worker count, format, and
output path are excluded from the echo so reports are byte-identical
across --jobs values.  All output is UTF-8 and newline-terminated.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from .census import (
    BudgetError,
    enumerate_S,
    poly_census,
    poly_cycle_totals_at_most,
    random_constraint_instance,
    rat_census,
    rat_cycle_totals_at_most,
    resolve_budget,
    rho_experiment,
    sampled_census,
    solution_count_case,
    _rational_raw_count,
)
from .baseline import baseline_census
from .ffield import FieldCtx, make_field
from .fmaps import enumerate_rationals
from .reportio import render_csv, render_json
from .seeding import per_index_rng
from .theory import (
    coprime_prob,
    poly_avg_k,
    poly_component_bounds,
    poly_cycle_sum,
    poly_periodic_lower,
    poly_periodic_minorant,
    rat_avg_k_bounds,
    rat_component_bounds,
    rat_count,
    rat_k_cycle_total_bounds,
    rat_periodic_lower,
    rat_periodic_minorant,
)


def _canon_family(name: str) -> str:
    return {"poly": "poly", "rat": "rational", "rational": "rational"}[name]


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _frac(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def _add_field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="field characteristic (prime)")
    p.add_argument("--n", type=int, default=1, help="extension degree (default 1)")


def _add_common_flags(p: argparse.ArgumentParser, fmt: bool = False) -> None:
    p.add_argument("--jobs", type=int, default=None, help="worker count (default: cpu count)")
    p.add_argument("--output", type=str, default=None, help="write report to file instead of stdout")
    p.add_argument("--budget", type=int, default=None, help="evaluation budget override")
    if fmt:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="fqdyn", description=__doc__.splitlines()[0])
    subs = top.add_subparsers(dest="command", required=True)

    cen = subs.add_parser("census", help="cycle census over one map family")
    _add_field_flags(cen)
    cen.add_argument("--family", choices=("poly", "rat", "rational"), default="poly")
    cen.add_argument("--d", type=int, required=True, help="map degree")
    cen.add_argument("--kmax", type=int, default=None)
    cen.add_argument("--samples", type=int, default=None, help="switch to sampled mode")
    cen.add_argument("--seed", type=int, default=0)
    cen.add_argument(
        "--full-support",
        action="store_true",
        help="sampled mode: walk the whole space once instead of drawing",
    )
    _add_common_flags(cen, fmt=True)

    ver = subs.add_parser("verify", help="exact checks against closed forms")
    vsubs = ver.add_subparsers(dest="check", required=True)

    vlp = vsubs.add_parser("lemma-polys", help="k-cycle totals over polynomials")
    _add_field_flags(vlp)
    vlp.add_argument("--dmax", type=int, required=True)
    _add_common_flags(vlp)

    vrc = vsubs.add_parser("rat-count", help="rational map counts")
    _add_field_flags(vrc)
    vrc.add_argument("--dmax", type=int, required=True)
    _add_common_flags(vrc)

    vpr = vsubs.add_parser("prov", help="interpolation-family counts vs case table")
    _add_field_flags(vpr)
    vpr.add_argument("--instances", type=int, default=200)
    vpr.add_argument("--seed", type=int, default=0)
    _add_common_flags(vpr)

    vcb = vsubs.add_parser("cycle-bounds", help="rational k-cycle total sandwich")
    _add_field_flags(vcb)
    vcb.add_argument("--dmax", type=int, required=True)
    _add_common_flags(vcb)

    base = subs.add_parser("baseline", help="reference graph families")
    bsubs = base.add_subparsers(dest="kind", required=True)

    brand = bsubs.add_parser("random", help="uniform random self-maps")
    brand.add_argument("--size", type=int, required=True, help="vertex count")
    brand.add_argument("--samples", type=int, default=None)
    brand.add_argument("--seed", type=int, default=0)
    _add_common_flags(brand, fmt=True)

    bquad = bsubs.add_parser("quadratic", help="in-degree-{0,m} graphs")
    bquad.add_argument("--m", type=int, required=True)
    bquad.add_argument("--t", type=int, required=True)
    bquad.add_argument("--samples", type=int, default=None)
    bquad.add_argument("--seed", type=int, default=0)
    _add_common_flags(bquad, fmt=True)

    theo = subs.add_parser("theory", help="closed-form values, no enumeration")
    _add_field_flags(theo)
    theo.add_argument("--d", type=int, required=True)
    theo.add_argument("--kmax", type=int, default=None)
    theo.add_argument("--output", type=str, default=None)

    rho = subs.add_parser("rho", help="iteration tail+cycle experiment")
    _add_field_flags(rho)
    rho.add_argument("--family", choices=("poly", "rat", "rational"), default="poly")
    rho.add_argument("--d", type=int, required=True)
    rho.add_argument("--samples", type=int, default=1000)
    rho.add_argument("--seed", type=int, default=0)
    rho.add_argument(
        "--strict-rho",
        action="store_true",
        help="fail (exit 1) when the mean lies outside the diagnostic band",
    )
    _add_common_flags(rho)

    return top


def _field(args) -> FieldCtx:
    return make_field(args.p, args.n)


def _cmd_census(args, jobs: int):
    family = _canon_family(args.family)
    ctx = _field(args)
    if args.samples is not None or args.full_support:
        size = ctx.q if family == "poly" else ctx.q + 1
        draws = args.samples if args.samples is not None else 0
        if not args.full_support and draws * size > resolve_budget(args.budget):
            raise BudgetError(
                f"sampled census of {draws} maps over q={ctx.q} exceeds the "
                f"evaluation budget {resolve_budget(args.budget)}; lower --samples"
            )
        rep = sampled_census(
            ctx,
            args.d,
            family,
            draws,
            args.seed,
            kmax=args.kmax,
            jobs=jobs,
            full_support=args.full_support,
        )
    elif family == "poly":
        rep = poly_census(ctx, args.d, kmax=args.kmax, jobs=jobs, budget=args.budget)
    else:
        rep = rat_census(ctx, args.d, kmax=args.kmax, jobs=jobs, budget=args.budget)
    config = {
        "command": "census",
        "family": family,
        "p": args.p,
        "n": args.n,
        "q": ctx.q,
        "d": args.d,
        "kmax": rep.kmax,
        "mode": rep.mode,
        "budget": resolve_budget(args.budget),
    }
    if rep.mode == "sampled":
        config["samples"] = rep.sample_count
        config["seed"] = rep.seed
        config["full_support"] = rep.full_support
    return config, rep, bool(rep.failed)


def _cmd_verify_lemma_polys(args, jobs: int):
    ctx = _field(args)
    checks = []
    for d in range(args.dmax + 1):
        totals, count = poly_cycle_totals_at_most(ctx, d, jobs=jobs, budget=args.budget)
        for k in range(1, d + 2):
            expected = poly_cycle_sum(ctx.q, d, k)
            observed = totals.get(k, 0)
            checks.append(
                {
                    "d": d,
                    "k": k,
                    "maps": count,
                    "observed_total": observed,
                    "expected_total": expected,
                    "status": "pass" if observed == expected else "fail",
                }
            )
    config = {
        "command": "verify:lemma-polys",
        "p": args.p,
        "n": args.n,
        "q": ctx.q,
        "dmax": args.dmax,
        "budget": resolve_budget(args.budget),
    }
    report = {"checks": checks, "all_pass": all(c["status"] == "pass" for c in checks)}
    return config, report, not report["all_pass"]


def _cmd_verify_rat_count(args, jobs: int):
    ctx = _field(args)
    checks = []
    for d in range(args.dmax + 1):
        raw = _rational_raw_count(ctx, d)
        if raw > resolve_budget(args.budget):
            raise BudgetError(
                f"rational count at q={ctx.q} d={d} walks {raw} raw pairs, over "
                f"the budget {resolve_budget(args.budget)}; lower --dmax"
            )
        for mode in ("at_most", "exactly"):
            observed = sum(1 for _ in enumerate_rationals(ctx, d, mode))
            expected = rat_count(ctx.q, d, mode)
            checks.append(
                {
                    "d": d,
                    "mode": mode,
                    "observed_count": observed,
                    "expected_count": expected,
                    "status": "pass" if observed == expected else "fail",
                }
            )
    config = {
        "command": "verify:rat-count",
        "p": args.p,
        "n": args.n,
        "q": ctx.q,
        "dmax": args.dmax,
        "budget": resolve_budget(args.budget),
    }
    report = {"checks": checks, "all_pass": all(c["status"] == "pass" for c in checks)}
    return config, report, not report["all_pass"]


def _cmd_verify_prov(args, jobs: int):
    ctx = _field(args)
    checks = []
    case_tally = {"exactly": 0, "at_most_one": 0}
    for i in range(args.instances):
        rng = per_index_rng(args.seed, i)
        g0, g1, betas, gammas = random_constraint_instance(ctx, rng)
        case, exponent = solution_count_case(ctx, g0, g1, betas)
        count = enumerate_S(ctx, g0, g1, betas, gammas)
        if case == "exactly":
            ok = count == ctx.q**exponent
            expected = ctx.q**exponent
        else:
            ok = count <= 1
            expected = None
        case_tally[case] += 1
        checks.append(
            {
                "instance": i,
                "g0": list(g0),
                "g1": list(g1),
                "betas": list(betas),
                "gammas": list(gammas),
                "case": case,
                "expected_count": expected,
                "observed_count": count,
                "status": "pass" if ok else "fail",
            }
        )
    config = {
        "command": "verify:prov",
        "p": args.p,
        "n": args.n,
        "q": ctx.q,
        "instances": args.instances,
        "seed": args.seed,
    }
    report = {
        "case_tally": case_tally,
        "checks": checks,
        "all_pass": all(c["status"] == "pass" for c in checks),
    }
    return config, report, not report["all_pass"]


def _cmd_verify_cycle_bounds(args, jobs: int):
    ctx = _field(args)
    q = ctx.q
    checks = []
    for d in range(1, args.dmax + 1):
        totals, count = rat_cycle_totals_at_most(ctx, d, jobs=jobs, budget=args.budget)
        for k in range(1, d + 2):
            b = rat_k_cycle_total_bounds(q, d, k)
            observed = totals.get(k, 0)
            entry = {
                "d": d,
                "k": k,
                "maps": count,
                "observed_total": observed,
                "lower": _frac(b.lower),
                "upper": _frac(b.upper),
                "vacuous_lower": b.vacuous_lower,
            }
            if b.vacuous_lower:
                ok = observed < b.upper
                entry["note"] = "lower bound vacuous at q <= k+1; upper checked only"
            else:
                ok = b.lower < observed < b.upper
            entry["status"] = "pass" if ok else "fail"
            checks.append(entry)
    config = {
        "command": "verify:cycle-bounds",
        "p": args.p,
        "n": args.n,
        "q": q,
        "dmax": args.dmax,
        "budget": resolve_budget(args.budget),
    }
    report = {"checks": checks, "all_pass": all(c["status"] == "pass" for c in checks)}
    return config, report, not report["all_pass"]


def _cmd_baseline(args, jobs: int):
    mode = "sampled" if args.samples is not None else "exhaustive"
    if args.kind == "random":
        rep = baseline_census(
            "random", n=args.size, mode=mode, samples=args.samples or 0, seed=args.seed, jobs=jobs
        )
        config = {"command": "baseline:random", "size": args.size, "mode": mode}
    else:
        rep = baseline_census(
            "quadratic",
            m=args.m,
            t=args.t,
            mode=mode,
            samples=args.samples or 0,
            seed=args.seed,
            jobs=jobs,
        )
        config = {"command": "baseline:quadratic", "m": args.m, "t": args.t, "mode": mode}
    if mode == "sampled":
        config["samples"] = args.samples
        config["seed"] = args.seed
    return config, rep, bool(rep.failed)


def _cmd_theory(args):
    ctx = _field(args)
    q, d = ctx.q, args.d
    kmax = args.kmax if args.kmax is not None else d + 1
    poly: dict = {"cycle_totals_at_most": {}, "avg_k": {}}
    for k in range(1, kmax + 1):
        try:
            poly["cycle_totals_at_most"][str(k)] = poly_cycle_sum(q, d, k)
        except ValueError:
            pass
        try:
            poly["avg_k"][str(k)] = _frac(poly_avg_k(q, d, k))
        except ValueError:
            pass
    poly["component_bounds"] = poly_component_bounds(q, d).to_jsonable()
    poly["periodic_lower"] = _frac(poly_periodic_lower(q, d))
    poly["periodic_minorant"] = poly_periodic_minorant(q, d)
    rat: dict = {
        "count_at_most": rat_count(q, d, "at_most"),
        "count_exactly": rat_count(q, d, "exactly"),
        "coprime_prob": _frac(coprime_prob(q, d)),
        "k_total_bounds": {},
        "avg_k_bounds": {},
    }
    for k in range(1, kmax + 1):
        try:
            rat["k_total_bounds"][str(k)] = rat_k_cycle_total_bounds(q, d, k).to_jsonable()
            rat["avg_k_bounds"][str(k)] = rat_avg_k_bounds(q, d, k).to_jsonable()
        except ValueError:
            pass
    rat["component_bounds"] = rat_component_bounds(q, d).to_jsonable()
    rat["periodic_lower"] = _frac(rat_periodic_lower(q, d))
    rat["periodic_minorant"] = rat_periodic_minorant(q, d)
    config = {"command": "theory", "p": args.p, "n": args.n, "q": q, "d": d, "kmax": kmax}
    return config, {"poly": poly, "rational": rat}, False


def _cmd_rho(args, jobs: int):
    ctx = _field(args)
    family = _canon_family(args.family)
    size = ctx.q if family == "poly" else ctx.q + 1
    # generous bound: a walk never exceeds the space, so budget on the worst case
    if args.samples * size > resolve_budget(args.budget):
        raise BudgetError(
            f"rho experiment worst case {args.samples}*{size} evaluations is over "
            f"the budget {resolve_budget(args.budget)}; lower --samples"
        )
    summary = rho_experiment(ctx, args.d, family, args.samples, args.seed, jobs=jobs)
    mean = float(summary.mean_rho)
    low, high = 0.5 * math.sqrt(ctx.q), 3.0 * math.sqrt(ctx.q)
    in_band = low <= mean <= high
    if in_band:
        status = "pass"
    else:
        status = "fail" if args.strict_rho else "miss"
    report = summary.to_jsonable()
    report["band"] = {
        "low": low,
        "high": high,
        "mean_rho": mean,
        "gating": args.strict_rho,
        "status": status,
    }
    config = {
        "command": "rho",
        "family": family,
        "p": args.p,
        "n": args.n,
        "q": ctx.q,
        "d": args.d,
        "samples": args.samples,
        "seed": args.seed,
        "strict_rho": args.strict_rho,
    }
    return config, report, status == "fail"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    jobs = args.jobs if getattr(args, "jobs", None) else _default_jobs()
    try:
        if args.command == "census":
            config, rep, has_fail = _cmd_census(args, jobs)
        elif args.command == "verify":
            handler = {
                "lemma-polys": _cmd_verify_lemma_polys,
                "rat-count": _cmd_verify_rat_count,
                "prov": _cmd_verify_prov,
                "cycle-bounds": _cmd_verify_cycle_bounds,
            }[args.check]
            config, rep, has_fail = handler(args, jobs)
        elif args.command == "baseline":
            config, rep, has_fail = _cmd_baseline(args, jobs)
        elif args.command == "theory":
            config, rep, has_fail = _cmd_theory(args)
        else:
            config, rep, has_fail = _cmd_rho(args, jobs)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if getattr(args, "format", "json") == "csv":
        text = render_csv(rep)
    else:
        body = rep.to_jsonable() if hasattr(rep, "to_jsonable") else rep
        text = render_json(config, body)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 1 if has_fail else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
