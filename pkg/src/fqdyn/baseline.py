"""Random functional graphs and in-degree-constrained graph families.

Two reference families put the field censuses in context: uniform
random self-maps of an n-set, and labeled graphs on m*t vertices where
every vertex has out-degree 1 and in-degree either 0 or m (for m = 2
these model maps where every value has zero or two preimages).

Exhaustive enumeration at tiny sizes is compared exactly against the
closed forms; samplers give Monte Carlo estimates with standard errors
and z-scores at sizes where enumeration is out of reach.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .census import TheoryComparison, _frac_json, _merge_tallies, _split_blocks, BudgetError
from .fgraph import FunctionalGraph, cycle_census
from .seeding import per_index_rng
from .theory import (
    quad_graph_stats,
    random_components_asymptotic,
    random_map_stats,
    random_periodic_asymptotic,
)

RANDOM_EXHAUSTIVE_MAX_N = 7
QUADRATIC_EXHAUSTIVE_MAX_GRAPHS = 10**7
RANDOM_EXACT_THEORY_MAX_N = 4000


def sample_random_map(n: int, seed: int) -> FunctionalGraph:
    """Uniform random self-map of [0, n); deterministic given seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = per_index_rng(seed, 0)
    return FunctionalGraph(n, tuple(rng.randrange(n) for _ in range(n)))


def _index_to_map(n: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, v = divmod(idx, n)
        out.append(v)
    return tuple(out)


def _multiset_assignments(t: int, m: int, total: int) -> Iterator[tuple[int, ...]]:
    """All length-total sequences using each block label 0..t-1 exactly m
    times, in lexicographic order."""
    counts = [m] * t
    seq: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(seq) == total:
            yield tuple(seq)
            return
        for label in range(t):
            if counts[label]:
                counts[label] -= 1
                seq.append(label)
                yield from rec()
                seq.pop()
                counts[label] += 1

    yield from rec()


def enumerate_quadratic_graphs(m: int, t: int) -> Iterator[FunctionalGraph]:
    """Every labeled graph on m*t vertices with out-degree 1 everywhere and
    in-degree m on exactly t vertices (0 elsewhere), each exactly once.

    Image sets run through lexicographic combinations; preimage blocks
    through lexicographic assignments.
    """
    if m < 1 or t < 1:
        raise ValueError("need m >= 1 and t >= 1")
    size = m * t
    expected = quad_graph_stats(m, t).graph_count
    if expected > QUADRATIC_EXHAUSTIVE_MAX_GRAPHS:
        raise BudgetError(
            f"{expected} graphs exceed the exhaustive cap "
            f"{QUADRATIC_EXHAUSTIVE_MAX_GRAPHS}; use sampling instead"
        )
    for image in combinations(range(size), t):
        for labels in _multiset_assignments(t, m, size):
            yield FunctionalGraph(size, tuple(image[lab] for lab in labels))


def sample_quadratic_graph(m: int, t: int, seed: int) -> FunctionalGraph:
    """Uniform over the labeled in-degree-{0, m} family; deterministic
    given seed."""
    if m < 1 or t < 1:
        raise ValueError("need m >= 1 and t >= 1")
    rng = per_index_rng(seed, 0)
    size = m * t
    image = sorted(rng.sample(range(size), t))
    labels = [i for i in range(t) for _ in range(m)]
    rng.shuffle(labels)
    return FunctionalGraph(size, tuple(image[lab] for lab in labels))


@dataclass(frozen=True)
class BaselineReport:
    kind: str  # "random" | "quadratic"
    mode: str  # "exhaustive" | "sampled"
    size: int
    graph_count: int
    avg_components: Fraction
    avg_periodic: Fraction
    m: int | None = None
    t: int | None = None
    theory_comparison: tuple[TheoryComparison, ...] = ()
    sample_count: int | None = None
    seed: int | None = None
    stderr_components: float | None = None
    stderr_periodic: float | None = None
    notes: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[TheoryComparison]:
        return [c for c in self.theory_comparison if c.status == "fail"]

    def to_jsonable(self) -> dict:
        out: dict = {
            "family": f"baseline:{self.kind}",
            "mode": self.mode,
            "size": self.size,
            "graph_count": self.graph_count,
            "avg_components": _frac_json(self.avg_components),
            "avg_periodic": _frac_json(self.avg_periodic),
            "theory_comparison": [c.to_jsonable() for c in self.theory_comparison],
        }
        if self.kind == "quadratic":
            out["m"] = self.m
            out["t"] = self.t
        if self.mode == "sampled":
            out["sample_count"] = self.sample_count
            out["seed"] = self.seed
            out["stderr_components"] = self.stderr_components
            out["stderr_periodic"] = self.stderr_periodic
        if self.notes:
            out["notes"] = self.notes
        return out


def _graph_tally() -> dict:
    return {
        "map_count": 0,
        "components": 0,
        "periodic": 0,
        "components_sq": 0,
        "periodic_sq": 0,
        "k_cycles": Counter(),
        "k_cycles_sq": Counter(),
    }


def _tally_graph(tally: dict, g: FunctionalGraph) -> None:
    stats = cycle_census(g)
    tally["map_count"] += 1
    tally["components"] += stats.component_count
    tally["periodic"] += stats.periodic_count
    tally["components_sq"] += stats.component_count**2
    tally["periodic_sq"] += stats.periodic_count**2


def _random_exhaustive_block(n: int, start: int, stop: int) -> dict:
    tally = _graph_tally()
    for i in range(start, stop):
        _tally_graph(tally, FunctionalGraph(n, _index_to_map(n, i)))
    return tally


def _random_sampled_block(n: int, seed: int, start: int, stop: int) -> dict:
    tally = _graph_tally()
    for i in range(start, stop):
        rng = per_index_rng(seed, i)
        _tally_graph(tally, FunctionalGraph(n, tuple(rng.randrange(n) for _ in range(n))))
    return tally


def _quadratic_sampled_block(m: int, t: int, seed: int, start: int, stop: int) -> dict:
    tally = _graph_tally()
    size = m * t
    for i in range(start, stop):
        rng = per_index_rng(seed, i)
        image = sorted(rng.sample(range(size), t))
        labels = [b for b in range(t) for _ in range(m)]
        rng.shuffle(labels)
        _tally_graph(tally, FunctionalGraph(size, tuple(image[lab] for lab in labels)))
    return tally


def _run_graph_blocks(fn, args: tuple, total: int, jobs: int) -> dict:
    blocks = _split_blocks(total, jobs)
    if len(blocks) <= 1:
        return fn(*args, 0, total)
    with ProcessPoolExecutor(max_workers=len(blocks)) as pool:
        futures = [pool.submit(fn, *args, lo, hi) for lo, hi in blocks]
        return _merge_tallies(f.result() for f in futures)


def _stderr(total: int, total_sq: int, count: int) -> float | None:
    if count < 2:
        return None
    var = (Fraction(total_sq) - Fraction(total * total, count)) / (count - 1)
    return math.sqrt(float(var) / count)


def exhaustive_random_stats(n: int, jobs: int = 1) -> BaselineReport:
    """Exact averages over all n^n self-maps; must equal the closed-form
    sums exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > RANDOM_EXHAUSTIVE_MAX_N:
        raise BudgetError(
            f"n = {n} exceeds the exhaustive cap {RANDOM_EXHAUSTIVE_MAX_N} "
            f"({n}^{n} maps); use sampling instead"
        )
    total = n**n
    tally = _run_graph_blocks(_random_exhaustive_block, (n,), total, jobs)
    avg_c = Fraction(tally["components"], total)
    avg_p = Fraction(tally["periodic"], total)
    th = random_map_stats(n)
    comparisons = (
        TheoryComparison(
            name="random_components_exact",
            k=None,
            observed=avg_c,
            expected=th.components_exact,
            relation="==",
            status="pass" if avg_c == th.components_exact else "fail",
        ),
        TheoryComparison(
            name="random_periodic_exact",
            k=None,
            observed=avg_p,
            expected=th.periodic_exact,
            relation="==",
            status="pass" if avg_p == th.periodic_exact else "fail",
        ),
    )
    return BaselineReport(
        kind="random",
        mode="exhaustive",
        size=n,
        graph_count=total,
        avg_components=avg_c,
        avg_periodic=avg_p,
        theory_comparison=comparisons,
        notes={"asymptotics": {
            "components": th.components_asymptotic,
            "periodic": th.periodic_asymptotic,
        }},
    )


def _z_comparison(name: str, observed: Fraction, expected: Fraction, stderr: float | None) -> TheoryComparison:
    if stderr is None or stderr == 0.0:
        # degenerate sample; fall back to an exact comparison
        ok = observed == expected
        return TheoryComparison(
            name=name,
            k=None,
            observed=observed,
            expected=expected,
            relation="== (no spread in sample)",
            status="pass" if ok else "fail",
        )
    z = float(observed - expected) / stderr
    return TheoryComparison(
        name=name,
        k=None,
        observed=observed,
        expected=expected,
        relation=f"|z| <= 5 (z = {z:+.3f})",
        status="pass" if abs(z) <= 5.0 else "fail",
        note=f"z={z:.6f}",
    )


def baseline_census(
    kind: str,
    *,
    n: int | None = None,
    m: int | None = None,
    t: int | None = None,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    jobs: int = 1,
) -> BaselineReport:
    """Aggregate cycle statistics over one baseline family.

    kind "random" takes n; kind "quadratic" takes m and t.  Exhaustive
    mode checks exact equality with the closed forms; sampled mode
    attaches five-sigma z-score checks instead.
    """
    if kind == "random":
        if n is None or n < 1:
            raise ValueError("random baseline needs n >= 1")
        if mode == "exhaustive":
            return exhaustive_random_stats(n, jobs=jobs)
        if samples < 1:
            raise ValueError("sampled mode needs samples >= 1")
        tally = _run_graph_blocks(_random_sampled_block, (n, seed), samples, jobs)
        # the exact sums involve integers with about n log10(n) digits, so
        # past a few thousand points compare against the asymptotics
        if n <= RANDOM_EXACT_THEORY_MAX_N:
            th = random_map_stats(n)
            expected_c, expected_p = th.components_exact, th.periodic_exact
            z_suffix = ""
        else:
            expected_c = Fraction(random_components_asymptotic(n))
            expected_p = Fraction(random_periodic_asymptotic(n))
            z_suffix = "_asymptotic"
        size = n
        kind_kwargs: dict = {}
    elif kind == "quadratic":
        if m is None or t is None or m < 1 or t < 1:
            raise ValueError("quadratic baseline needs m >= 1 and t >= 1")
        th_q = quad_graph_stats(m, t)
        size = m * t
        kind_kwargs = {"m": m, "t": t}
        if mode == "exhaustive":
            tally = _graph_tally()
            for g in enumerate_quadratic_graphs(m, t):
                _tally_graph(tally, g)
            count = tally["map_count"]
            avg_c = Fraction(tally["components"], count)
            avg_p = Fraction(tally["periodic"], count)
            comparisons = (
                TheoryComparison(
                    name="quadratic_graph_count",
                    k=None,
                    observed=Fraction(count),
                    expected=Fraction(th_q.graph_count),
                    relation="==",
                    status="pass" if count == th_q.graph_count else "fail",
                ),
                TheoryComparison(
                    name="quadratic_periodic_exact",
                    k=None,
                    observed=avg_p,
                    expected=th_q.avg_periodic,
                    relation="==",
                    status="pass" if avg_p == th_q.avg_periodic else "fail",
                ),
            )
            return BaselineReport(
                kind="quadratic",
                mode="exhaustive",
                size=size,
                graph_count=count,
                avg_components=avg_c,
                avg_periodic=avg_p,
                theory_comparison=comparisons,
                **kind_kwargs,
            )
        if samples < 1:
            raise ValueError("sampled mode needs samples >= 1")
        tally = _run_graph_blocks(_quadratic_sampled_block, (m, t, seed), samples, jobs)
        expected_c, expected_p = None, th_q.avg_periodic
        z_suffix = ""
    else:
        raise ValueError(f"unknown baseline kind {kind!r}")

    count = tally["map_count"]
    avg_c = Fraction(tally["components"], count)
    avg_p = Fraction(tally["periodic"], count)
    se_c = _stderr(tally["components"], tally["components_sq"], count)
    se_p = _stderr(tally["periodic"], tally["periodic_sq"], count)
    comparisons = []
    if expected_c is not None:
        comparisons.append(_z_comparison(f"components_z{z_suffix}", avg_c, expected_c, se_c))
    if expected_p is not None:
        comparisons.append(_z_comparison(f"periodic_z{z_suffix}", avg_p, expected_p, se_p))
    return BaselineReport(
        kind=kind,
        mode="sampled",
        size=size,
        graph_count=count,
        avg_components=avg_c,
        avg_periodic=avg_p,
        theory_comparison=tuple(comparisons),
        sample_count=count,
        seed=seed,
        stderr_components=se_c,
        stderr_periodic=se_p,
        **kind_kwargs,
    )
