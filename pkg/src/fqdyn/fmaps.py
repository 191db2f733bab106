"""Polynomials over F_q and rational maps on the projective line.

Polynomials are tuples of element handles, least-significant
coefficient first, with no trailing zeros; the zero polynomial is the
empty tuple.  Constants, the zero polynomial included, act as degree-0
maps.

Projective points are ints in [0, q]: values below q are the affine
elements, q itself is the point at infinity.

Rational maps are kept in canonical form: numerator and denominator
coprime, denominator monic.  The constant map sending everything to
infinity is the distinguished canonical pair num=(1,), den=() and also
has degree 0.

Moebius transformations x -> (ax+b)/(cx+d) are 4-tuples (a, b, c, d)
with nonzero determinant, scaled so the first nonzero entry is 1, which
picks one representative per projective class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Literal, Sequence

from .ffield import FieldCtx, FqElem

Poly = tuple[FqElem, ...]
ProjPoint = int
Mobius = tuple[FqElem, FqElem, FqElem, FqElem]

EnumMode = Literal["exactly", "at_most"]


def normalize_poly(coeffs: Sequence[FqElem]) -> Poly:
    """Strip trailing zeros; the zero polynomial becomes ()."""
    i = len(coeffs)
    while i and coeffs[i - 1] == 0:
        i -= 1
    return tuple(coeffs[:i])


def poly_degree(f: Poly) -> int:
    """Map-theoretic degree: every constant, zero included, has degree 0."""
    return max(len(f) - 1, 0)


def eval_poly(ctx: FieldCtx, f: Poly, x: FqElem) -> FqElem:
    acc = 0
    for c in reversed(f):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def poly_add(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = ctx.add(out[i], c)
    return normalize_poly(out)


def poly_scale(ctx: FieldCtx, c: FqElem, f: Poly) -> Poly:
    if c == 0:
        return ()
    return normalize_poly([ctx.mul(c, a) for a in f])


def poly_mul(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return normalize_poly(out)


def poly_divmod(ctx: FieldCtx, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return (), f
    rem = list(f)
    lead_inv = ctx.inv(g[-1])
    quo = [0] * (len(f) - dg)
    for shift in range(len(f) - dg - 1, -1, -1):
        coef = ctx.mul(rem[shift + dg], lead_inv)
        if coef:
            quo[shift] = coef
            for i in range(dg + 1):
                rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(coef, g[i]))
    return normalize_poly(quo), normalize_poly(rem[:dg])


def poly_gcd(ctx: FieldCtx, f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while g:
        _, r = poly_divmod(ctx, f, g)
        f, g = g, r
    if not f:
        return ()
    return poly_scale(ctx, ctx.inv(f[-1]), f)


@dataclass(frozen=True)
class RationalMap:
    """Canonical num/den pair; den == () marks the constant-infinity map."""

    num: Poly
    den: Poly

    @property
    def is_constant_infinity(self) -> bool:
        return not self.den

    @property
    def degree(self) -> int:
        return max(poly_degree(self.num), poly_degree(self.den))

    def to_jsonable(self) -> dict | str:
        if self.is_constant_infinity:
            return "INF"
        return {"num": list(self.num), "den": list(self.den)}


CONSTANT_INFINITY = RationalMap(num=(1,), den=())


def canonicalize_rational(ctx: FieldCtx, num: Sequence[FqElem], den: Sequence[FqElem]) -> RationalMap:
    """Divide out the gcd and rescale so the denominator is monic."""
    n = normalize_poly(num)
    d = normalize_poly(den)
    if not n and not d:
        raise ValueError("0/0 is not a rational map")
    if not d:
        return CONSTANT_INFINITY
    if not n:
        return RationalMap((), (1,))
    g = poly_gcd(ctx, n, d)
    if len(g) > 1 or g[0] != 1:
        n, _ = poly_divmod(ctx, n, g)
        d, _ = poly_divmod(ctx, d, g)
    if d[-1] != 1:
        s = ctx.inv(d[-1])
        n = poly_scale(ctx, s, n)
        d = poly_scale(ctx, s, d)
    return RationalMap(n, d)


def poly_to_rational(f: Poly) -> RationalMap:
    return RationalMap(normalize_poly(f), (1,))


def eval_rational(ctx: FieldCtx, r: RationalMap, x: ProjPoint) -> ProjPoint:
    inf = ctx.q
    if r.is_constant_infinity:
        return inf
    if x == inf:
        dn = len(r.num) - 1  # -1 for the zero numerator
        dd = len(r.den) - 1
        if dn > dd:
            return inf
        if dn < dd:
            return 0
        return ctx.mul(r.num[-1], ctx.inv(r.den[-1]))
    dv = eval_poly(ctx, r.den, x)
    if dv == 0:
        return inf
    return ctx.mul(eval_poly(ctx, r.num, x), ctx.inv(dv))


# Enumeration.  Polynomials of bounded degree decode from a base-q
# index, which lets callers split the index range across workers.


def poly_at_most_count(ctx: FieldCtx, d: int) -> int:
    return ctx.q ** (d + 1)


def poly_at_most_at(ctx: FieldCtx, d: int, idx: int) -> Poly:
    q = ctx.q
    out = []
    for _ in range(d + 1):
        idx, c = divmod(idx, q)
        out.append(c)
    return normalize_poly(out)


def poly_exactly_count(ctx: FieldCtx, d: int) -> int:
    if d == 0:
        return ctx.q  # every constant, the zero map included
    return ctx.q**d * (ctx.q - 1)


def poly_exactly_at(ctx: FieldCtx, d: int, idx: int) -> Poly:
    if d == 0:
        return (idx,) if idx else ()
    q = ctx.q
    lead = 1 + idx // q**d
    low = idx % q**d
    out = []
    for _ in range(d):
        low, c = divmod(low, q)
        out.append(c)
    out.append(lead)
    return tuple(out)


def enumerate_polys(ctx: FieldCtx, d: int, mode: EnumMode = "exactly") -> Iterator[Poly]:
    if d < 0:
        raise ValueError("degree must be >= 0")
    if mode == "at_most":
        count, at = poly_at_most_count(ctx, d), poly_at_most_at
    elif mode == "exactly":
        count, at = poly_exactly_count(ctx, d), poly_exactly_at
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for i in range(count):
        yield at(ctx, d, i)


def monic_poly_at(ctx: FieldCtx, e: int, idx: int) -> Poly:
    """Monic polynomial of degree e with lower coefficients decoded from idx."""
    q = ctx.q
    out = []
    for _ in range(e):
        idx, c = divmod(idx, q)
        out.append(c)
    out.append(1)
    return tuple(out)


def enumerate_rationals(ctx: FieldCtx, d: int, mode: EnumMode = "exactly") -> Iterator[RationalMap]:
    """Canonical rational maps, each exactly once.

    Denominators run over monic polynomials by degree, numerators over
    all polynomials of degree <= d in handle order; non-coprime pairs are
    skipped.  The constant-infinity map comes last when it belongs to the
    range (always for at_most, only at d = 0 for exactly).
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    if mode not in ("exactly", "at_most"):
        raise ValueError(f"unknown mode {mode!r}")
    q = ctx.q
    num_count = q ** (d + 1)
    for e in range(d + 1):
        for den_idx in range(q**e):
            den = monic_poly_at(ctx, e, den_idx)
            for num_idx in range(num_count):
                num = poly_at_most_at(ctx, d, num_idx)
                if mode == "exactly" and max(len(num) - 1, e) != d:
                    continue
                g = poly_gcd(ctx, num, den)
                if len(g) > 1:
                    continue
                yield RationalMap(num, den)
    if mode == "at_most" or d == 0:
        yield CONSTANT_INFINITY


def interpolate(ctx: FieldCtx, points: Sequence[tuple[FqElem, FqElem]]) -> Poly:
    """Lagrange interpolation through points with distinct abscissae."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    result: Poly = ()
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis: Poly = (1,)
        denom = 1
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = poly_mul(ctx, basis, (ctx.neg(xj), 1))
            denom = ctx.mul(denom, ctx.sub(xi, xj))
        result = poly_add(ctx, result, poly_scale(ctx, ctx.mul(yi, ctx.inv(denom)), basis))
    return result


# Moebius transformations and conjugation.


def mobius_canonical(ctx: FieldCtx, m: Sequence[FqElem]) -> Mobius:
    a, b, c, d = m
    det = ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    if det == 0:
        raise ValueError("Moebius transformation must have nonzero determinant")
    for lead in (a, b, c, d):
        if lead:
            s = ctx.inv(lead)
            return (ctx.mul(s, a), ctx.mul(s, b), ctx.mul(s, c), ctx.mul(s, d))
    raise AssertionError("unreachable: zero tuple has zero determinant")


def mobius_inverse(ctx: FieldCtx, m: Mobius) -> Mobius:
    a, b, c, d = m
    return mobius_canonical(ctx, (d, ctx.neg(b), ctx.neg(c), a))


def mobius_apply(ctx: FieldCtx, m: Mobius, x: ProjPoint) -> ProjPoint:
    a, b, c, d = m
    inf = ctx.q
    if x == inf:
        if c == 0:
            return inf
        return ctx.mul(a, ctx.inv(c))
    denom = ctx.add(ctx.mul(c, x), d)
    if denom == 0:
        return inf
    return ctx.mul(ctx.add(ctx.mul(a, x), b), ctx.inv(denom))


def enumerate_mobius(ctx: FieldCtx) -> Iterator[Mobius]:
    """All q^3 - q canonical transformations, deterministic order."""
    q = ctx.q
    # first nonzero entry is 1: either a = 1, or a = 0 and b = 1
    for b in range(q):
        for c in range(q):
            for d in range(q):
                if ctx.sub(d, ctx.mul(b, c)) != 0:
                    yield (1, b, c, d)
    for c in range(1, q):  # a = 0, b = 1: determinant is -c
        for d in range(q):
            yield (0, 1, c, d)


def _substitute_mobius(ctx: FieldCtx, f: Poly, lin_num: Poly, lin_den: Poly, e: int) -> Poly:
    """Homogenized substitution sum_i f_i * lin_num^i * lin_den^(e-i)."""
    acc: Poly = ()
    num_pow: Poly = (1,)
    den_pows = [(1,)]
    for _ in range(e):
        den_pows.append(poly_mul(ctx, den_pows[-1], lin_den))
    for i in range(e + 1):
        c = f[i] if i < len(f) else 0
        if c:
            term = poly_scale(ctx, c, poly_mul(ctx, num_pow, den_pows[e - i]))
            acc = poly_add(ctx, acc, term)
        if i < e:
            num_pow = poly_mul(ctx, num_pow, lin_num)
    return acc


def conjugate(ctx: FieldCtx, r: RationalMap, phi: Sequence[FqElem]) -> RationalMap:
    """The map phi o r o phi^(-1), canonicalized; degree is preserved."""
    m = mobius_canonical(ctx, phi)
    a, b, c, d = m
    if r.is_constant_infinity:
        # everything lands on phi(infinity)
        image = mobius_apply(ctx, m, ctx.q)
        if image == ctx.q:
            return CONSTANT_INFINITY
        return RationalMap((image,) if image else (), (1,))
    ia, ib, ic, id_ = mobius_inverse(ctx, m)
    e = r.degree
    lin_num = normalize_poly((ib, ia))  # phi^(-1) numerator:   ia*x + ib
    lin_den = normalize_poly((id_, ic))  # phi^(-1) denominator: ic*x + id
    n1 = _substitute_mobius(ctx, r.num, lin_num, lin_den, e)
    d1 = _substitute_mobius(ctx, r.den, lin_num, lin_den, e)
    out_num = poly_add(ctx, poly_scale(ctx, a, n1), poly_scale(ctx, b, d1))
    out_den = poly_add(ctx, poly_scale(ctx, c, n1), poly_scale(ctx, d, d1))
    result = canonicalize_rational(ctx, out_num, out_den)
    if result.degree != r.degree:
        raise AssertionError(
            f"conjugation changed degree {r.degree} -> {result.degree}; "
            "this is a bug, not valid data"
        )
    return result


def rational_eval_fn(ctx: FieldCtx, r: RationalMap) -> Callable[[ProjPoint], ProjPoint]:
    return lambda x: eval_rational(ctx, r, x)
