"""Arithmetic in the finite field GF(p^n) with integer element handles.

Elements are plain ints in [0, q).  A handle encodes the base-p digit
vector of the polynomial representative: handle a = sum(d_i * p**i)
stands for the residue sum(d_i * t**i) modulo the defining polynomial.
Handle 0 is the additive identity and handle 1 the multiplicative
identity, for every field.

Multiplication and inversion go through discrete-log/antilog tables for
fields up to a configurable size cap; addition in extension fields uses a
Zech-logarithm table.  Prime fields above the cap fall back to direct
modular arithmetic; extension fields above the cap are refused.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

FqElem = int

DEFAULT_TABLE_CAP = 1 << 16

# zech[k] value marking 1 + g^k == 0 (k is the "minus infinity" slot).
_ZECH_NONE = -1


def is_prime(m: int) -> bool:
    """Trial-division primality test, adequate for desk-scale p."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Immutable description of GF(p^n) plus its operation tables.

    Safe to share across worker processes: all fields are plain data and
    every operation is pure.
    """

    p: int
    n: int
    q: int
    modulus: tuple[int, ...]  # monic, degree n, least-significant first
    exp_table: tuple[int, ...] | None  # g^i for i in [0, 2(q-1)); None above cap
    log_table: tuple[int, ...] | None  # discrete log base g; entry 0 unused
    zech_table: tuple[int, ...] | None  # log(1 + g^k); extension fields only

    def add(self, a: FqElem, b: FqElem) -> FqElem:
        if self.n == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        log = self.log_table
        i = log[a]
        k = log[b] - i
        if k < 0:
            k += self.q - 1
        z = self.zech_table[k]
        if z < 0:
            return 0
        return self.exp_table[i + z]

    def neg(self, a: FqElem) -> FqElem:
        if self.n == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mult = 1
        while a:
            a, d = divmod(a, p)
            out += ((p - d) % p) * mult
            mult *= p
        return out

    def sub(self, a: FqElem, b: FqElem) -> FqElem:
        if self.n == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: FqElem, b: FqElem) -> FqElem:
        if a == 0 or b == 0:
            return 0
        if self.log_table is None:
            return (a * b) % self.p
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: FqElem) -> FqElem:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.log_table is None:
            return pow(a, self.p - 2, self.p)
        return self.exp_table[self.q - 1 - self.log_table[a]]

    def pow(self, a: FqElem, e: int) -> FqElem:
        """a**e for e >= 0, with 0**0 == 1."""
        if e < 0:
            raise ValueError("negative exponent; invert first")
        if a == 0:
            return 0 if e else 1
        if self.log_table is None:
            return pow(a, e, self.p)
        return self.exp_table[(self.log_table[a] * e) % (self.q - 1)]

    def elements(self) -> range:
        """All q element handles exactly once, in handle order."""
        return range(self.q)

    def to_spec(self) -> dict:
        """Serializable field description: (p, n, modulus coefficients)."""
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


def enumerate_elements(ctx: FieldCtx) -> range:
    return ctx.elements()


# Digit-vector arithmetic over GF(p), used for construction and as the
# reference path the tables are built from.


def _digits(a: int, p: int, n: int) -> list[int]:
    out = [0] * n
    for i in range(n):
        a, out[i] = divmod(a, p)
    return out


def _undigits(ds: list[int], p: int) -> int:
    out = 0
    for d in reversed(ds):
        out = out * p + d
    return out


def _gfp_poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b, coefficients mod p, dense lists."""
    a = [c % p for c in a]
    db = len(b) - 1
    while len(a) > db:
        lead = a[-1]
        if lead:
            off = len(a) - 1 - db
            for i in range(db):
                a[off + i] = (a[off + i] - lead * b[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _slow_mul(a: int, b: int, modulus: tuple[int, ...], p: int, n: int) -> int:
    da = _digits(a, p, n)
    db = _digits(b, p, n)
    prod = [0] * (2 * n - 1)
    for i, ca in enumerate(da):
        if ca:
            for j, cb in enumerate(db):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    rem = _gfp_poly_mod(prod, list(modulus), p)
    rem += [0] * (n - len(rem))
    return _undigits(rem, p)


def _slow_add(a: int, b: int, p: int, n: int) -> int:
    da = _digits(a, p, n)
    db = _digits(b, p, n)
    return _undigits([(x + y) % p for x, y in zip(da, db)], p)


def _is_irreducible_gfp(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    for m in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=m):
            divisor = list(low) + [1]
            if not _gfp_poly_mod(list(poly), divisor, p):
                return False
    return True


def _default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over GF(p).

    Candidates are compared by their coefficient tuple (c_0, ..., c_{n-1}),
    least-significant first.
    """
    for low in product(range(p), repeat=n):
        cand = list(low) + [1]
        if _is_irreducible_gfp(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found; unreachable for prime p")


def _prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def _build_tables(
    p: int, n: int, q: int, modulus: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...] | None]:
    def mul(a: int, b: int) -> int:
        if n == 1:
            return (a * b) % p
        return _slow_mul(a, b, modulus, p, n)

    def order_is_full(g: int) -> bool:
        for r in _prime_factors(q - 1):
            acc = 1
            for _ in range((q - 1) // r):
                acc = mul(acc, g)
            if acc == 1:
                return False
        return True

    gen = 1
    for cand in range(2, q):
        if order_is_full(cand):
            gen = cand
            break
    # q == 2 keeps gen == 1: the trivial group.

    exp = [1] * (2 * (q - 1))
    for i in range(1, q - 1):
        exp[i] = mul(exp[i - 1], gen)
    for i in range(q - 1, len(exp)):
        exp[i] = exp[i - (q - 1)]

    log = [_ZECH_NONE] * q
    for i in range(q - 1):
        log[exp[i]] = i

    zech = None
    if n > 1:
        zech = [_ZECH_NONE] * (q - 1)
        for k in range(q - 1):
            s = _slow_add(1, exp[k], p, n)
            zech[k] = log[s] if s else _ZECH_NONE
        zech = tuple(zech)
    return tuple(exp), tuple(log), zech


def make_field(
    p: int,
    n: int = 1,
    modulus: list[int] | tuple[int, ...] | None = None,
    table_cap: int = DEFAULT_TABLE_CAP,
) -> FieldCtx:
    """Construct GF(p^n).

    If no modulus is given, the lexicographically smallest monic
    irreducible of degree n over GF(p) is selected, so construction is
    deterministic.  A supplied modulus must be monic of degree n and is
    verified irreducible.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree n = {n} must be >= 1")
    q = p**n

    if modulus is None:
        mod = _default_modulus(p, n)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != n + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {n}")
        if not _is_irreducible_gfp(list(mod), p):
            raise ValueError("modulus is reducible over GF(p)")

    if q > table_cap:
        if n > 1:
            raise ValueError(
                f"q = {q} exceeds the table cap {table_cap}; "
                "extension fields require tables"
            )
        return FieldCtx(p, n, q, mod, None, None, None)

    exp, log, zech = _build_tables(p, n, q, mod)
    return FieldCtx(p, n, q, mod, exp, log, zech)
