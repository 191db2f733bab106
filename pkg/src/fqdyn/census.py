"""Exhaustive and sampled censuses of cycle statistics, with the
closed-form values attached as pass/fail comparisons.

The enumeration index space is split into contiguous blocks; each block
produces integer tallies (map count, component total, periodic total,
per-length cycle totals, and sums of squares for standard errors) that
merge by plain addition.  Addition is associative and commutative, so
every worker count and schedule yields byte-identical reports.

All averages are exact rationals.  Floats appear only in sampled-mode
standard errors and in diagnostics.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ffield import FieldCtx, FqElem
from .fgraph import brent_rho, build_graph, cycle_census
from .fmaps import (
    CONSTANT_INFINITY,
    Poly,
    RationalMap,
    canonicalize_rational,
    eval_poly,
    eval_rational,
    monic_poly_at,
    normalize_poly,
    poly_at_most_at,
    poly_at_most_count,
    poly_divmod,
    poly_exactly_at,
    poly_exactly_count,
    poly_gcd,
    poly_mul,
)
from .seeding import per_index_rng
from . import theory

DEFAULT_BUDGET = 10**9
BUDGET_ENV_VAR = "FQDYN_BUDGET"


class BudgetError(ValueError):
    """Raised when an exhaustive run would exceed the evaluation budget."""


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_BUDGET


def _check_budget(evaluations: int, budget: int | None, what: str) -> None:
    limit = resolve_budget(budget)
    if evaluations > limit:
        raise BudgetError(
            f"{what} needs {evaluations} map evaluations, over the budget of "
            f"{limit}; use the sampled mode (sampled_census) instead, or raise "
            f"the budget via the {BUDGET_ENV_VAR} environment variable"
        )


def _frac_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


# --- tallies (plain dicts so they pickle cheaply) ----------------------------


def _empty_tally() -> dict:
    return {
        "map_count": 0,
        "components": 0,
        "periodic": 0,
        "components_sq": 0,
        "periodic_sq": 0,
        "k_cycles": Counter(),
        "k_cycles_sq": Counter(),
    }


def _tally_map(tally: dict, ctx: FieldCtx, m: Poly | RationalMap, kmax: int) -> None:
    stats = cycle_census(build_graph(ctx, m))
    tally["map_count"] += 1
    tally["components"] += stats.component_count
    tally["periodic"] += stats.periodic_count
    tally["components_sq"] += stats.component_count**2
    tally["periodic_sq"] += stats.periodic_count**2
    for k, c in stats.k_cycle_counts.items():
        if k <= kmax:
            tally["k_cycles"][k] += c
            tally["k_cycles_sq"][k] += c * c


def _merge_tallies(tallies: Iterable[dict]) -> dict:
    out = _empty_tally()
    for t in tallies:
        out["map_count"] += t["map_count"]
        out["components"] += t["components"]
        out["periodic"] += t["periodic"]
        out["components_sq"] += t["components_sq"]
        out["periodic_sq"] += t["periodic_sq"]
        out["k_cycles"].update(t["k_cycles"])
        out["k_cycles_sq"].update(t["k_cycles_sq"])
    return out


# --- enumeration index spaces -------------------------------------------------


def _poly_index_count(ctx: FieldCtx, d: int, mode: str) -> int:
    return poly_exactly_count(ctx, d) if mode == "exactly" else poly_at_most_count(ctx, d)


def _rational_raw_count(ctx: FieldCtx, d: int) -> int:
    # monic denominators of each degree e <= d, times all numerators of
    # degree <= d; the constant-infinity map lives outside this space
    q = ctx.q
    return q ** (d + 1) * sum(q**e for e in range(d + 1))


def _exhaustive_block(
    ctx: FieldCtx, family: str, d: int, mode: str, kmax: int, start: int, stop: int
) -> dict:
    tally = _empty_tally()
    if family == "poly":
        for i in range(start, stop):
            f = poly_exactly_at(ctx, d, i) if mode == "exactly" else poly_at_most_at(ctx, d, i)
            _tally_map(tally, ctx, f, kmax)
        return tally

    q = ctx.q
    num_count = q ** (d + 1)
    bounds = []  # (cumulative_start, e) per denominator-degree block
    acc = 0
    for e in range(d + 1):
        bounds.append((acc, e))
        acc += q**e * num_count
    for i in range(start, stop):
        e = 0
        for base, ee in bounds:
            if i >= base:
                e = ee
                block_base = base
        offset = i - block_base
        den_idx, num_idx = divmod(offset, num_count)
        den = monic_poly_at(ctx, e, den_idx)
        num = poly_at_most_at(ctx, d, num_idx)
        if mode == "exactly" and max(len(num) - 1, e) != d:
            continue
        g = poly_gcd(ctx, num, den)
        if len(g) > 1:
            continue
        _tally_map(tally, ctx, RationalMap(num, den), kmax)
    return tally


def _sample_poly(ctx: FieldCtx, d: int, rng) -> Poly:
    q = ctx.q
    if d == 0:
        c = rng.randrange(q)
        return (c,) if c else ()
    lead = 1 + rng.randrange(q - 1)
    low = [rng.randrange(q) for _ in range(d)]
    return tuple(low) + (lead,)


def _sample_rational(ctx: FieldCtx, d: int, rng) -> RationalMap:
    """Uniform over canonical maps of degree exactly d.

    Raw coefficient pairs are uniform over polynomials of degree <= d;
    every canonical map of degree exactly d has exactly q-1 raw
    preimages (its scalar multiples), so accepting exactly the canonical
    results of degree d is uniform.  At d = 0 the constant-infinity map
    is included with the correct weight.
    """
    q = ctx.q
    space = q ** (d + 1)
    while True:
        a = rng.randrange(space)
        b = rng.randrange(space)
        if a == 0 and b == 0:
            continue
        r = canonicalize_rational(ctx, poly_at_most_at(ctx, d, a), poly_at_most_at(ctx, d, b))
        if r.degree == d:
            return r


def _sampled_block(
    ctx: FieldCtx,
    family: str,
    d: int,
    kmax: int,
    seed: int,
    full_support: bool,
    start: int,
    stop: int,
) -> dict:
    tally = _empty_tally()
    for i in range(start, stop):
        if full_support:
            m = (
                poly_exactly_at(ctx, d, i)
                if family == "poly"
                else _rational_exact_at(ctx, d, i)
            )
            if m is None:
                continue
        else:
            rng = per_index_rng(seed, i)
            m = _sample_poly(ctx, d, rng) if family == "poly" else _sample_rational(ctx, d, rng)
        _tally_map(tally, ctx, m, kmax)
    return tally


def _rational_exact_at(ctx: FieldCtx, d: int, i: int) -> RationalMap | None:
    """Decode index i of the raw pair space, or the constant-infinity
    slot one past it; None when the slot is non-canonical or wrong degree."""
    raw = _rational_raw_count(ctx, d)
    if i == raw:
        return CONSTANT_INFINITY if d == 0 else None
    q = ctx.q
    num_count = q ** (d + 1)
    acc = 0
    for e in range(d + 1):
        block = q**e * num_count
        if i < acc + block:
            den_idx, num_idx = divmod(i - acc, num_count)
            den = monic_poly_at(ctx, e, den_idx)
            num = poly_at_most_at(ctx, d, num_idx)
            if max(len(num) - 1, e) != d:
                return None
            if len(poly_gcd(ctx, num, den)) > 1:
                return None
            return RationalMap(num, den)
        acc += block
    raise IndexError(f"index {i} out of raw space {raw}")


def _split_blocks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    step = total // jobs
    extra = total % jobs
    blocks = []
    lo = 0
    for j in range(jobs):
        hi = lo + step + (1 if j < extra else 0)
        blocks.append((lo, hi))
        lo = hi
    return blocks


def _run_blocks(fn, args: tuple, total: int, jobs: int) -> dict:
    blocks = _split_blocks(total, jobs)
    if len(blocks) <= 1:
        return fn(*args, 0, total)
    with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
        futures = [pool.submit(fn, *args, lo, hi) for lo, hi in blocks]
        return _merge_tallies(f.result() for f in futures)


# --- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class TheoryComparison:
    """One measured statistic against one closed-form value or bound."""

    name: str
    k: int | None
    observed: Fraction
    relation: str
    status: str  # "pass" | "fail"
    expected: Fraction | None = None
    lower: Fraction | None = None
    upper: Fraction | None = None
    vacuous: bool = False
    note: str = ""

    def to_jsonable(self) -> dict:
        out: dict = {
            "name": self.name,
            "k": self.k,
            "observed": _frac_json(self.observed),
            "relation": self.relation,
            "status": self.status,
            "vacuous": self.vacuous,
        }
        if self.expected is not None:
            out["expected"] = _frac_json(self.expected)
        if self.lower is not None:
            out["lower"] = _frac_json(self.lower)
        if self.upper is not None:
            out["upper"] = _frac_json(self.upper)
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class CensusReport:
    family: str  # "poly" | "rational"
    q: int
    d: int
    mode: str  # "exhaustive" | "sampled"
    map_count: int
    kmax: int
    avg_components: Fraction
    avg_periodic: Fraction
    avg_k_cycles: dict[int, Fraction]
    theory_comparison: tuple[TheoryComparison, ...] = ()
    sample_count: int | None = None
    seed: int | None = None
    full_support: bool = False
    stderr_components: float | None = None
    stderr_periodic: float | None = None
    stderr_k_cycles: dict[int, float] | None = None
    notes: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[TheoryComparison]:
        return [c for c in self.theory_comparison if c.status == "fail"]

    def to_jsonable(self) -> dict:
        out: dict = {
            "family": self.family,
            "q": self.q,
            "d": self.d,
            "mode": self.mode,
            "map_count": self.map_count,
            "kmax": self.kmax,
            "avg_components": _frac_json(self.avg_components),
            "avg_periodic": _frac_json(self.avg_periodic),
            "avg_k_cycles": {str(k): _frac_json(v) for k, v in sorted(self.avg_k_cycles.items())},
            "theory_comparison": [c.to_jsonable() for c in self.theory_comparison],
        }
        if self.mode == "sampled":
            out["sample_count"] = self.sample_count
            out["seed"] = self.seed
            out["full_support"] = self.full_support
            out["stderr_components"] = self.stderr_components
            out["stderr_periodic"] = self.stderr_periodic
            out["stderr_k_cycles"] = {
                str(k): v for k, v in sorted((self.stderr_k_cycles or {}).items())
            }
        if self.notes:
            out["notes"] = self.notes
        return out


def _stderr(total: int, total_sq: int, n: int) -> float | None:
    """Standard error of the mean from exact sums; None below two samples."""
    if n < 2:
        return None
    var = (Fraction(total_sq) - Fraction(total * total, n)) / (n - 1)
    return math.sqrt(float(var) / n)


# --- comparison builders -------------------------------------------------------


def _poly_comparisons(
    q: int, d: int, avg_components: Fraction, avg_periodic: Fraction, avg_k: dict[int, Fraction], kmax: int
) -> tuple[TheoryComparison, ...]:
    out: list[TheoryComparison] = []
    top = min(d, kmax) if d >= 1 else min(1, kmax)
    for k in range(1, top + 1):
        expected = theory.poly_avg_k(q, d, k)
        obs = avg_k.get(k, Fraction(0))
        out.append(
            TheoryComparison(
                name="poly_avg_k_exact",
                k=k,
                observed=obs,
                expected=expected,
                relation="==",
                status="pass" if obs == expected else "fail",
            )
        )
    b = theory.poly_component_bounds(q, d)
    if d >= q:
        comp_ok = avg_components == b.lower
        rel = "== (tight: d >= q)"
    else:
        comp_ok = avg_components > b.lower
        rel = "> (strict: d < q)"
    out.append(
        TheoryComparison(
            name="poly_components_lower",
            k=None,
            observed=avg_components,
            lower=b.lower,
            relation=rel,
            status="pass" if comp_ok else "fail",
        )
    )
    out.append(
        TheoryComparison(
            name="poly_components_upper",
            k=None,
            observed=avg_components,
            upper=b.upper,
            relation="<=",
            status="pass" if avg_components <= b.upper else "fail",
        )
    )
    pl = theory.poly_periodic_lower(q, d)
    if d >= q:
        peri_ok = avg_periodic == pl
        rel = "== (tight: d >= q)"
    else:
        peri_ok = avg_periodic >= pl
        rel = ">="
    out.append(
        TheoryComparison(
            name="poly_periodic_lower",
            k=None,
            observed=avg_periodic,
            lower=pl,
            relation=rel,
            status="pass" if peri_ok else "fail",
            vacuous=pl <= 0,
        )
    )
    return tuple(out)


def _rat_comparisons(
    q: int, d: int, avg_components: Fraction, avg_periodic: Fraction, avg_k: dict[int, Fraction], kmax: int
) -> tuple[TheoryComparison, ...]:
    out: list[TheoryComparison] = []
    for k in range(1, min(d + 1, kmax) + 1):
        b = theory.rat_avg_k_bounds(q, d, k)
        obs = avg_k.get(k, Fraction(0))
        if k <= d:
            ok = b.lower < obs < b.upper
            rel = "strictly between"
            out.append(
                TheoryComparison(
                    name="rat_avg_k_bounds",
                    k=k,
                    observed=obs,
                    lower=b.lower,
                    upper=b.upper,
                    relation=rel,
                    status="pass" if ok else "fail",
                    vacuous=b.vacuous_lower,
                )
            )
        else:
            out.append(
                TheoryComparison(
                    name="rat_avg_k_upper",
                    k=k,
                    observed=obs,
                    upper=b.upper,
                    relation="< (upper only at k = d+1)",
                    status="pass" if obs < b.upper else "fail",
                )
            )
    b = theory.rat_component_bounds(q, d)
    out.append(
        TheoryComparison(
            name="rat_components_lower",
            k=None,
            observed=avg_components,
            lower=b.lower,
            relation=">",
            status="pass" if avg_components > b.lower else "fail",
            vacuous=b.vacuous_lower,
        )
    )
    out.append(
        TheoryComparison(
            name="rat_components_upper",
            k=None,
            observed=avg_components,
            upper=b.upper,
            relation="<=",
            status="pass" if avg_components <= b.upper else "fail",
        )
    )
    pl = theory.rat_periodic_lower(q, d)
    out.append(
        TheoryComparison(
            name="rat_periodic_lower",
            k=None,
            observed=avg_periodic,
            lower=pl,
            relation=">=",
            status="pass" if avg_periodic >= pl else "fail",
            vacuous=pl <= 0,
        )
    )
    return tuple(out)


_D0_NOTE = (
    "degree-0 polynomials are all q constants, the zero map included; "
    "every constant map has the same graph shape, so the averages are "
    "identical under the convention that excludes the zero polynomial"
)

_SAMPLING_NOTE = (
    "sampling scheme (a deliberate choice; the exact statements are "
    "exhaustive): uniform over maps of degree exactly d, drawn as uniform "
    "nonzero leading coefficient for polynomials and rejection to canonical "
    "coprime pairs for rational maps"
)


def _build_report(
    ctx: FieldCtx,
    family: str,
    d: int,
    kmax: int,
    tally: dict,
    mode: str,
    seed: int | None = None,
    full_support: bool = False,
) -> CensusReport:
    n = tally["map_count"]
    avg_components = Fraction(tally["components"], n)
    avg_periodic = Fraction(tally["periodic"], n)
    avg_k = {k: Fraction(c, n) for k, c in sorted(tally["k_cycles"].items())}
    builder = _poly_comparisons if family == "poly" else _rat_comparisons
    comparisons = builder(ctx.q, d, avg_components, avg_periodic, avg_k, kmax)
    notes: dict = {}
    if d == 0:
        notes["d0_convention"] = _D0_NOTE
    kwargs: dict = {}
    if mode == "sampled":
        notes["sampling"] = _SAMPLING_NOTE
        kwargs = {
            "sample_count": n,
            "seed": seed,
            "full_support": full_support,
            "stderr_components": _stderr(tally["components"], tally["components_sq"], n),
            "stderr_periodic": _stderr(tally["periodic"], tally["periodic_sq"], n),
            "stderr_k_cycles": {
                k: _stderr(tally["k_cycles"][k], tally["k_cycles_sq"][k], n)
                for k in sorted(tally["k_cycles"])
            },
        }
    return CensusReport(
        family=family,
        q=ctx.q,
        d=d,
        mode=mode,
        map_count=n,
        kmax=kmax,
        avg_components=avg_components,
        avg_periodic=avg_periodic,
        avg_k_cycles=avg_k,
        theory_comparison=comparisons,
        notes=notes,
        **kwargs,
    )


# --- public census operations ---------------------------------------------------


def poly_census(
    ctx: FieldCtx, d: int, kmax: int | None = None, jobs: int = 1, budget: int | None = None
) -> CensusReport:
    """Exact averages over all polynomials of degree exactly d."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    count = poly_exactly_count(ctx, d)
    _check_budget(count * ctx.q, budget, f"poly census q={ctx.q} d={d}")
    kmax = ctx.q if kmax is None else kmax
    tally = _run_blocks(_exhaustive_block, (ctx, "poly", d, "exactly", kmax), count, jobs)
    return _build_report(ctx, "poly", d, kmax, tally, "exhaustive")


def rat_census(
    ctx: FieldCtx, d: int, kmax: int | None = None, jobs: int = 1, budget: int | None = None
) -> CensusReport:
    """Exact averages over all rational maps of degree exactly d."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    count = theory.rat_count(ctx.q, d, "exactly")
    _check_budget(count * (ctx.q + 1), budget, f"rational census q={ctx.q} d={d}")
    kmax = ctx.q + 1 if kmax is None else kmax
    raw = _rational_raw_count(ctx, d)
    tally = _run_blocks(_exhaustive_block, (ctx, "rational", d, "exactly", kmax), raw, jobs)
    if d == 0:
        _tally_map(tally, ctx, CONSTANT_INFINITY, kmax)
    if tally["map_count"] != count:
        raise AssertionError(
            f"enumerated {tally['map_count']} maps, closed form says {count}; this is a bug"
        )
    return _build_report(ctx, "rational", d, kmax, tally, "exhaustive")


def sampled_census(
    ctx: FieldCtx,
    d: int,
    family: str,
    samples: int,
    seed: int,
    kmax: int | None = None,
    jobs: int = 1,
    full_support: bool = False,
) -> CensusReport:
    """Monte Carlo companion of the exact census; deterministic in
    (seed, samples) and independent of worker count.

    With full_support=True the sampler walks the whole enumeration space
    exactly once instead of drawing, so the averages match the
    exhaustive census exactly.
    """
    if family not in ("poly", "rational"):
        raise ValueError(f"unknown family {family!r}")
    if d < 0:
        raise ValueError("degree must be >= 0")
    if samples < 1 and not full_support:
        raise ValueError("samples must be >= 1")
    kmax_r = (ctx.q if family == "poly" else ctx.q + 1) if kmax is None else kmax
    if full_support:
        total = (
            poly_exactly_count(ctx, d)
            if family == "poly"
            else _rational_raw_count(ctx, d) + (1 if d == 0 else 0)
        )
    else:
        total = samples
    tally = _run_blocks(
        _sampled_block,
        (ctx, family, d, kmax_r, seed, full_support),
        total,
        jobs,
    )
    return _build_report(
        ctx, family, d, kmax_r, tally, "sampled", seed=seed, full_support=full_support
    )


def poly_cycle_totals_at_most(
    ctx: FieldCtx, d: int, kmax: int | None = None, jobs: int = 1, budget: int | None = None
) -> tuple[dict[int, int], int]:
    """(k -> total k-cycles, map count) over all polynomials of degree <= d."""
    count = poly_at_most_count(ctx, d)
    _check_budget(count * ctx.q, budget, f"poly cycle totals q={ctx.q} d={d}")
    kmax = ctx.q if kmax is None else kmax
    tally = _run_blocks(_exhaustive_block, (ctx, "poly", d, "at_most", kmax), count, jobs)
    return dict(sorted(tally["k_cycles"].items())), tally["map_count"]


def rat_cycle_totals_at_most(
    ctx: FieldCtx, d: int, kmax: int | None = None, jobs: int = 1, budget: int | None = None
) -> tuple[dict[int, int], int]:
    """(k -> total k-cycles, map count) over all rational maps of degree <= d."""
    count = theory.rat_count(ctx.q, d, "at_most")
    _check_budget(count * (ctx.q + 1), budget, f"rational cycle totals q={ctx.q} d={d}")
    kmax = ctx.q + 1 if kmax is None else kmax
    raw = _rational_raw_count(ctx, d)
    tally = _run_blocks(_exhaustive_block, (ctx, "rational", d, "at_most", kmax), raw, jobs)
    _tally_map(tally, ctx, CONSTANT_INFINITY, kmax)
    if tally["map_count"] != count:
        raise AssertionError(
            f"enumerated {tally['map_count']} maps, closed form says {count}; this is a bug"
        )
    return dict(sorted(tally["k_cycles"].items())), tally["map_count"]


# --- brute-force oracles for the closed-form counting arguments -----------------


def count_cycle_givers(ctx: FieldCtx, d: int, cycle: Sequence[FqElem]) -> int:
    """Number of polynomials of degree <= d realizing the given cycle
    (alpha_0 -> alpha_1 -> ... -> alpha_0), by brute force.

    For cycle length k <= d+1 this must come out to q^(d+1-k); callers
    assert that contract.
    """
    k = len(cycle)
    if k == 0:
        raise ValueError("cycle must be nonempty")
    if len(set(cycle)) != k:
        raise ValueError("cycle elements must be distinct")
    count = 0
    for i in range(poly_at_most_count(ctx, d)):
        f = poly_at_most_at(ctx, d, i)
        if all(eval_poly(ctx, f, cycle[j]) == cycle[(j + 1) % k] for j in range(k)):
            count += 1
    return count


def _is_irreducible_poly(ctx: FieldCtx, f: Poly) -> bool:
    """Trial division over monic polynomials of degree 1..deg(f)//2."""
    deg = len(f) - 1
    for m in range(1, deg // 2 + 1):
        for idx in range(ctx.q**m):
            div = monic_poly_at(ctx, m, idx)
            if poly_divmod(ctx, f, div)[1] == ():
                return False
    return True


def enumerate_S(
    ctx: FieldCtx,
    g0: Poly,
    g1: Poly,
    betas: Sequence[FqElem],
    gammas: Sequence[FqElem],
) -> int:
    """Brute-force cardinality of the interpolation family: monic f with
    deg f = deg(g0 g1), divisible by g0, and f(beta_i) = gamma_i * (g0 g1)(beta_i).

    g0 must be monic and constant or irreducible; betas distinct, one
    gamma per beta.
    """
    g0 = normalize_poly(g0)
    g1 = normalize_poly(g1)
    if not g0 or g0[-1] != 1:
        raise ValueError("g0 must be monic")
    if not g1 or g1[-1] != 1:
        raise ValueError("g1 must be monic")
    if len(g0) > 2 and not _is_irreducible_poly(ctx, g0):
        raise ValueError("g0 must be constant or irreducible")
    if len(set(betas)) != len(betas):
        raise ValueError("betas must be distinct")
    if len(betas) != len(gammas) or not betas:
        raise ValueError("need one gamma per beta, at least one")
    prod = poly_mul(ctx, g0, g1)
    j = len(prod) - 1
    targets = [ctx.mul(g, eval_poly(ctx, prod, b)) for b, g in zip(betas, gammas)]
    count = 0
    for idx in range(ctx.q**j):
        f = monic_poly_at(ctx, j, idx)
        if poly_divmod(ctx, f, g0)[1] != ():
            continue
        if all(eval_poly(ctx, f, b) == t for b, t in zip(betas, targets)):
            count += 1
    return count


def random_constraint_instance(
    ctx: FieldCtx, rng, max_points: int = 3, max_total_degree: int = 5
) -> tuple[Poly, Poly, tuple[FqElem, ...], tuple[FqElem, ...]]:
    """Pseudo-random valid (g0, g1, betas, gammas) instance for enumerate_S.

    Mixes the three solvability shapes: trivial g0, g0 linear through
    one of the betas, and g0 irreducible away from the betas.
    """
    m = rng.randrange(1, min(max_points, ctx.q) + 1)
    betas = tuple(rng.sample(range(ctx.q), m))
    shape = rng.randrange(3)
    if shape == 0:
        g0: Poly = (1,)
    elif shape == 1:
        g0 = (ctx.neg(rng.choice(betas)), 1)
    else:
        deg0 = rng.randrange(1, max_total_degree)
        while True:
            g0 = monic_poly_at(ctx, deg0, rng.randrange(ctx.q**deg0))
            if deg0 == 1 or _is_irreducible_poly(ctx, g0):
                break
    deg1 = rng.randrange(0, max_total_degree - (len(g0) - 1) + 1)
    g1 = monic_poly_at(ctx, deg1, rng.randrange(ctx.q**deg1))
    gammas = tuple(rng.randrange(ctx.q) for _ in betas)
    return g0, g1, betas, gammas


def solution_count_case(ctx: FieldCtx, g0: Poly, g1: Poly, betas: Sequence[FqElem]) -> tuple[str, int | None]:
    """Which case of the interpolation-count statement applies:
    ("at_most_one", None) or ("exactly", q-power exponent)."""
    g0 = normalize_poly(g0)
    g1 = normalize_poly(g1)
    m = len(betas)
    j = len(poly_mul(ctx, g0, g1)) - 1
    j1 = len(g1) - 1
    linear_in_betas = len(g0) == 2 and any(
        g0 == (ctx.neg(b), 1) for b in betas
    )
    trivial_g0 = g0 == (1,)
    if (trivial_g0 or linear_in_betas) and j >= m:
        return "exactly", j - m
    if not (trivial_g0 or linear_in_betas) and j1 >= m:
        return "exactly", j1 - m
    return "at_most_one", None


# --- rho experiment --------------------------------------------------------------


@dataclass(frozen=True)
class RhoSummary:
    family: str
    q: int
    d: int
    samples: int
    seed: int
    mean_tail: Fraction
    mean_cycle: Fraction
    mean_rho: Fraction
    histogram: dict[int, int]  # tail+cycle -> count

    def to_jsonable(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "d": self.d,
            "samples": self.samples,
            "seed": self.seed,
            "mean_tail": _frac_json(self.mean_tail),
            "mean_cycle": _frac_json(self.mean_cycle),
            "mean_rho": _frac_json(self.mean_rho),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _rho_block(ctx: FieldCtx, family: str, d: int, seed: int, start: int, stop: int) -> dict:
    tail_sum = 0
    cycle_sum = 0
    hist: Counter = Counter()
    for i in range(start, stop):
        rng = per_index_rng(seed, i)
        if family == "poly":
            f = _sample_poly(ctx, d, rng)
            start_pt = rng.randrange(ctx.q)
            tail, cyc = brent_rho(lambda x: eval_poly(ctx, f, x), start_pt)
        else:
            r = _sample_rational(ctx, d, rng)
            start_pt = rng.randrange(ctx.q + 1)
            tail, cyc = brent_rho(lambda x: eval_rational(ctx, r, x), start_pt)
        tail_sum += tail
        cycle_sum += cyc
        hist[tail + cyc] += 1
    return {"tail": tail_sum, "cycle": cycle_sum, "hist": hist}


def rho_experiment(
    ctx: FieldCtx, d: int, family: str, samples: int, seed: int, jobs: int = 1
) -> RhoSummary:
    """Sampled tail/cycle lengths via Brent iteration, no graphs built."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if family not in ("poly", "rational"):
        raise ValueError(f"unknown family {family!r}")
    blocks = _split_blocks(samples, jobs)
    if len(blocks) <= 1:
        parts = [_rho_block(ctx, family, d, seed, 0, samples)]
    else:
        with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
            futures = [pool.submit(_rho_block, ctx, family, d, seed, lo, hi) for lo, hi in blocks]
            parts = [f.result() for f in futures]
    tail = sum(p["tail"] for p in parts)
    cyc = sum(p["cycle"] for p in parts)
    hist: Counter = Counter()
    for p in parts:
        hist.update(p["hist"])
    return RhoSummary(
        family=family,
        q=ctx.q,
        d=d,
        samples=samples,
        seed=seed,
        mean_tail=Fraction(tail, samples),
        mean_cycle=Fraction(cyc, samples),
        mean_rho=Fraction(tail + cyc, samples),
        histogram=dict(hist),
    )
