"""Independent brute-force oracles used only by the test suite.

Everything here is written naively and separately from the library so
that agreement between the two is meaningful.  Values are handles and
structures in the same encodings the library uses, but none of the
library's arithmetic shortcuts (discrete-log tables, Zech logs, path
marking) appear here.
"""

from __future__ import annotations

from fractions import Fraction


def digits(a: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, d = divmod(a, p)
        out.append(d)
    return out


def undigits(ds: list[int], p: int) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def oracle_add(a: int, b: int, p: int, n: int) -> int:
    """Digit-wise addition mod p, no tables."""
    da, db = digits(a, p, n), digits(b, p, n)
    return undigits([(x + y) % p for x, y in zip(da, db)], p)


def oracle_mul(a: int, b: int, p: int, n: int, modulus: tuple[int, ...]) -> int:
    """Schoolbook polynomial product reduced mod the defining polynomial."""
    da, db = digits(a, p, n), digits(b, p, n)
    prod = [0] * (2 * n)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # long division by the monic modulus
    for top in range(2 * n - 1, n - 1, -1):
        c = prod[top]
        if c:
            prod[top] = 0
            for k in range(n):
                prod[top - n + k] = (prod[top - n + k] - c * modulus[k]) % p
    return undigits(prod[:n], p)


def oracle_components(succ: list[int]) -> int:
    """Count weakly connected components by undirected BFS."""
    size = len(succ)
    adj: list[list[int]] = [[] for _ in range(size)]
    for v, w in enumerate(succ):
        adj[v].append(w)
        adj[w].append(v)
    seen = [False] * size
    count = 0
    for s in range(size):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return count


def oracle_periodic_points(succ: list[int]) -> set[int]:
    """A point is periodic iff iterating from it returns to it."""
    out = set()
    size = len(succ)
    for v in range(size):
        w = succ[v]
        for _ in range(size):
            if w == v:
                out.add(v)
                break
            w = succ[w]
    return out


def oracle_cycle_lengths(succ: list[int]) -> dict[int, int]:
    """Map cycle length -> number of cycles of that length."""
    periodic = oracle_periodic_points(succ)
    seen: set[int] = set()
    lengths: dict[int, int] = {}
    for v in sorted(periodic):
        if v in seen:
            continue
        cyc = [v]
        w = succ[v]
        while w != v:
            cyc.append(w)
            w = succ[w]
        seen.update(cyc)
        lengths[len(cyc)] = lengths.get(len(cyc), 0) + 1
    return lengths


def oracle_rho(succ: list[int], start: int) -> tuple[int, int]:
    """(tail_length, cycle_length) by recording first-visit positions."""
    pos: dict[int, int] = {}
    v = start
    t = 0
    while v not in pos:
        pos[v] = t
        v = succ[v]
        t += 1
    return pos[v], t - pos[v]


def falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero once the factors run past n."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def harmonic_like_sum(n: int, weight_extra_n: bool) -> Fraction:
    """Sum over k of falling(n,k)/(k * n^k) or falling(n,k)/n^k."""
    total = Fraction(0)
    for k in range(1, n + 1):
        term = Fraction(falling(n, k), n**k)
        if weight_extra_n:
            total += term
        else:
            total += term / k
    return total
