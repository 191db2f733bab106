"""Functional graphs of self-maps and their cycle statistics.

A functional graph has one outgoing edge per vertex, so every weakly
connected component contains exactly one cycle.  The census below finds
all cycles in a single O(size) pass with three vertex states, then
recounts components by union-find as an independent cross-check; the two
totals must agree on every input, and a mismatch is reported as a bug
rather than returned as data.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence, TypeVar

from .ffield import FieldCtx
from .fmaps import Poly, RationalMap, eval_poly, eval_rational

T = TypeVar("T")


@dataclass(frozen=True)
class FunctionalGraph:
    size: int
    succ: tuple[int, ...]

    def to_jsonable(self) -> list[int]:
        return list(self.succ)


@dataclass(frozen=True)
class CycleStats:
    component_count: int
    cycle_lengths: tuple[int, ...]  # sorted ascending
    periodic_count: int
    k_cycle_counts: dict[int, int]
    max_tail: int

    def to_jsonable(self) -> dict:
        return {
            "components": self.component_count,
            "cycle_lengths": list(self.cycle_lengths),
            "periodic": self.periodic_count,
            "k_cycles": {str(k): v for k, v in sorted(self.k_cycle_counts.items())},
            "max_tail": self.max_tail,
        }


def build_graph(ctx: FieldCtx, m: Poly | RationalMap) -> FunctionalGraph:
    """Vertex set F_q for a polynomial, P^1(F_q) for a rational map.

    Infinity sits at index q, always last.
    """
    if isinstance(m, RationalMap):
        size = ctx.q + 1
        succ = tuple(eval_rational(ctx, m, x) for x in range(size))
    else:
        size = ctx.q
        succ = tuple(eval_poly(ctx, m, x) for x in range(size))
    return FunctionalGraph(size, succ)


def graph_from_succ(succ: Sequence[int]) -> FunctionalGraph:
    succ = tuple(succ)
    size = len(succ)
    for v in succ:
        if not 0 <= v < size:
            raise ValueError(f"successor {v} out of range for size {size}")
    return FunctionalGraph(size, succ)


_UNSEEN, _ON_PATH, _DONE = 0, 1, 2


def _scan_cycles(succ: Sequence[int], size: int) -> tuple[list[int], list[bool]]:
    """One pass, three vertex states: cycle lengths plus periodic marks."""
    state = bytearray(size)
    pos = [0] * size
    lengths: list[int] = []
    periodic = [False] * size
    for s in range(size):
        if state[s] != _UNSEEN:
            continue
        path: list[int] = []
        v = s
        while state[v] == _UNSEEN:
            state[v] = _ON_PATH
            pos[v] = len(path)
            path.append(v)
            v = succ[v]
        if state[v] == _ON_PATH:
            lengths.append(len(path) - pos[v])
            for u in path[pos[v]:]:
                periodic[u] = True
        for u in path:
            state[u] = _DONE
    return lengths, periodic


def _count_components(succ: Sequence[int], size: int) -> int:
    """Union-find over the edges v -- succ[v], path halving."""
    parent = list(range(size))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    count = size
    for v in range(size):
        a, b = find(v), find(succ[v])
        if a != b:
            parent[a] = b
            count -= 1
    return count


def _tail_depths(succ: Sequence[int], size: int, periodic: Sequence[bool]) -> int:
    """Longest distance from any vertex to its first periodic vertex."""
    depth = [0 if periodic[v] else -1 for v in range(size)]
    best = 0
    for s in range(size):
        if depth[s] >= 0:
            continue
        chain: list[int] = []
        v = s
        while depth[v] < 0:
            chain.append(v)
            v = succ[v]
        d = depth[v]
        for u in reversed(chain):
            d += 1
            depth[u] = d
        if depth[s] > best:
            best = depth[s]
    return best


def cycle_census(g: FunctionalGraph) -> CycleStats:
    succ, size = g.succ, g.size
    raw_lengths, periodic = _scan_cycles(succ, size)
    lengths = sorted(raw_lengths)
    components = _count_components(succ, size)
    if components != len(lengths):
        raise AssertionError(
            f"component count {components} != cycle count {len(lengths)}; "
            "this is a bug, not valid data"
        )
    periodic_count = sum(lengths)

    return CycleStats(
        component_count=components,
        cycle_lengths=tuple(lengths),
        periodic_count=periodic_count,
        k_cycle_counts=dict(Counter(lengths)),
        max_tail=_tail_depths(succ, size, periodic),
    )


def rho_length(g: FunctionalGraph, start: int) -> tuple[int, int]:
    """(tail, cycle) for the walk from start; their sum is the number of
    distinct vertices visited."""
    if not 0 <= start < g.size:
        raise ValueError(f"start {start} out of range")
    first_seen: dict[int, int] = {}
    v = start
    t = 0
    while v not in first_seen:
        first_seen[v] = t
        v = g.succ[v]
        t += 1
    return first_seen[v], t - first_seen[v]


def brent_rho(f: Callable[[T], T], start: T) -> tuple[int, int]:
    """(tail, cycle) of iterating f from start, no graph materialized.

    Brent's power-doubling search; O(tail + cycle) evaluations.
    """
    power = lam = 1
    tortoise = start
    hare = f(start)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = start
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return mu, lam
