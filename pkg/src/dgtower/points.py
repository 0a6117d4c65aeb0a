"""Rational point sampling on zero loci, and the Jacobian rank at a point.

Over a prime field, points are found by randomizing all coordinates but
one and extracting the roots of the induced univariate system (gcd with
the field polynomial, then equal-degree splitting into linear factors).
Over the rationals a small deterministic grid with exact rational root
extraction is used; when nothing is found the caller gets a short list and
should report the gap rather than guess.
"""

from __future__ import annotations

import random

from .fields import Field, PrimeField, QQ
from .modules import rref_pivots
from .poly import Poly, PolyRing

__all__ = ["find_points_on_locus", "jacobian_rank_at", "univariate_roots"]


# ---------------------------------------------------------------------------
# univariate helpers (dense coefficient lists, index = degree)
# ---------------------------------------------------------------------------


def _u_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _u_normalize(f, fld):
    f = [c for c in f]
    while f and fld.is_zero(f[-1]):
        f.pop()
    return f


def _u_monic(f, fld):
    if not f:
        return f
    inv = fld.inv(f[-1])
    return [fld.mul(c, inv) for c in f]


def _u_mod(a, b, fld):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv = fld.inv(lb)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        c = fld.mul(a[-1], inv)
        shift = da - db
        for i, bc in enumerate(b):
            a[shift + i] = fld.sub(a[shift + i], fld.mul(c, bc))
        a = _u_normalize(a, fld)
        if not a:
            break
    return a


def _u_gcd(a, b, fld):
    a = _u_normalize(a, fld)
    b = _u_normalize(b, fld)
    while b:
        a, b = b, _u_mod(a, b, fld)
    return _u_monic(a, fld)


def _u_mulmod(a, b, m, fld):
    out = [fld.zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if fld.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = fld.add(out[i + j], fld.mul(ca, cb))
    return _u_mod(_u_normalize(out, fld), m, fld)


def _u_powmod(base, e: int, m, fld):
    result = [fld.one]
    base = _u_mod(list(base), m, fld)
    while e:
        if e & 1:
            result = _u_mulmod(result, base, m, fld)
        e >>= 1
        if e:
            base = _u_mulmod(base, base, m, fld)
    return result


def univariate_roots(coeffs, fld: Field, rng: random.Random | None = None):
    """All roots in the field of a univariate polynomial given by its
    coefficient list (index = degree)."""
    rng = rng or random.Random(0)
    f = _u_normalize(list(coeffs), fld)
    if not f:
        raise ValueError("the zero polynomial has every root")
    if len(f) == 1:
        return []
    f = _u_monic(f, fld)
    if isinstance(fld, PrimeField):
        p = fld.p
        # distinct-root part: gcd(f, x^p - x)
        xp = _u_powmod([fld.zero, fld.one], p, f, fld)
        xp_minus_x = list(xp) + [fld.zero] * max(0, 2 - len(xp))
        if len(xp_minus_x) < 2:
            xp_minus_x += [fld.zero] * (2 - len(xp_minus_x))
        xp_minus_x[1] = fld.sub(xp_minus_x[1], fld.one)
        r = _u_gcd(f, xp_minus_x, fld)
        return sorted(_split_linear(r, fld, rng))
    # rationals: clear denominators, scan divisor candidates exactly
    from fractions import Fraction
    import math

    denom_lcm = 1
    for c in f:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in f]
    while ints and ints[0] == 0:
        ints = ints[1:]
        # factor x: zero is a root of the original
    roots = set()
    g = _u_normalize(list(coeffs), fld)
    if fld.is_zero(g[0]):
        roots.add(Fraction(0))
    if not ints:
        return sorted(roots)
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(v):
        out = []
        d = 1
        while d * d <= v and d <= 10**6:
            if v % d == 0:
                out.append(d)
                out.append(v // d)
            d += 1
        return out

    for pnum in divisors(a0) if a0 else [0]:
        for qden in divisors(an):
            for sign in (1, -1):
                cand = Fraction(sign * pnum, qden)
                acc = Fraction(0)
                for c in reversed(f):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _split_linear(f, fld: PrimeField, rng: random.Random):
    """Roots of a monic product of distinct linear factors over GF(p)."""
    f = _u_normalize(f, fld)
    if len(f) <= 1:
        return []
    if len(f) == 2:
        return [fld.neg(f[0])]
    p = fld.p
    for _ in range(64):
        delta = fld.random(rng)
        shifted = [delta, fld.one]
        h = _u_powmod(shifted, (p - 1) // 2, f, fld)
        h = list(h) if h else [fld.zero]
        h[0] = fld.sub(h[0] if h else fld.zero, fld.one)
        g = _u_gcd(f, _u_normalize(h, fld), fld)
        if 0 < len(g) - 1 < len(f) - 1:
            rest = _u_quotient(f, g, fld)
            return _split_linear(g, fld, rng) + _split_linear(rest, fld, rng)
    raise RuntimeError("equal-degree splitting failed to make progress")


def _u_quotient(a, b, fld):
    a = list(a)
    out = [fld.zero] * (len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    inv = fld.inv(lb)
    while a and len(a) - 1 >= db:
        da = len(a) - 1
        c = fld.mul(a[-1], inv)
        out[da - db] = c
        for i, bc in enumerate(b):
            a[da - db + i] = fld.sub(a[da - db + i], fld.mul(c, bc))
        a = _u_normalize(a, fld)
    return _u_normalize(out, fld)


# ---------------------------------------------------------------------------
# points on a zero locus
# ---------------------------------------------------------------------------


def _partial_to_univariate(p: Poly, free_index: int, values) -> list:
    """Coefficient list in the remaining variable after substituting all
    other coordinates."""
    fld = p.ring.field
    out: dict = {}
    for m, c in p.terms.items():
        val = c
        for j, e in enumerate(m):
            if j == free_index:
                continue
            for _ in range(e):
                val = fld.mul(val, values[j])
        d = m[free_index]
        acc = fld.add(out.get(d, fld.zero), val)
        out[d] = acc
    degree = max(out) if out else 0
    return [out.get(i, fld.zero) for i in range(degree + 1)]


def find_points_on_locus(ring: PolyRing, generators, count: int,
                         rng: random.Random | None = None,
                         exclude=(), attempts: int = 400):
    """Up to ``count`` distinct rational points where every generator
    vanishes.  Randomized but reproducible through ``rng``; returns what it
    found (possibly fewer than requested, possibly none over QQ)."""
    rng = rng or random.Random(0)
    fld = ring.field
    gens = [g for g in generators if not g.is_zero()]
    excluded = {tuple(pt) for pt in exclude}
    found: list = []
    seen = set(excluded)
    if not gens:
        # the whole space: random points
        for _ in range(attempts):
            if len(found) >= count:
                break
            pt = tuple(fld.random(rng) for _ in range(ring.n))
            if pt not in seen:
                seen.add(pt)
                found.append(pt)
        return found

    if isinstance(fld, QQ.__class__):
        grid = [QQ.of(v) for v in (0, 1, -1, 2, -2, 3, -3)]
        candidates = _qq_grid_points(ring, gens, grid, count, seen)
        return candidates[:count]

    for attempt in range(attempts):
        if len(found) >= count:
            break
        free = attempt % ring.n
        values = [fld.random(rng) for _ in range(ring.n)]
        uni = []
        all_zero = True
        for g in gens:
            coeffs = _partial_to_univariate(g, free, values)
            coeffs = _u_normalize(coeffs, fld)
            if coeffs:
                all_zero = False
                uni.append(coeffs)
        if all_zero:
            roots = [fld.random(rng)]
        else:
            g0 = uni[0]
            for other in uni[1:]:
                g0 = _u_gcd(g0, other, fld)
                if len(g0) == 1:
                    break
            if len(g0) <= 1:
                continue
            roots = univariate_roots([c for c in g0], fld, rng)
        for root in roots:
            pt = tuple(
                root if j == free else values[j] for j in range(ring.n)
            )
            if pt in seen:
                continue
            if all(fld.is_zero(g.eval(pt)) for g in gens):
                seen.add(pt)
                found.append(pt)
                if len(found) >= count:
                    break
    return found


def _qq_grid_points(ring, gens, grid, count, seen):
    fld = ring.field
    out = []

    def rec(prefix):
        if len(out) >= count:
            return
        if len(prefix) == ring.n:
            pt = tuple(prefix)
            if pt not in seen and all(fld.is_zero(g.eval(pt)) for g in gens):
                seen.add(pt)
                out.append(pt)
            return
        for v in grid:
            rec(prefix + [v])

    rec([])
    return out


def jacobian_rank_at(generators, point) -> int:
    """Rank of the Jacobian matrix of the generators at a rational point;
    the linear-part data of the translated ideal, so it feeds the same
    smoothness criterion the embedding dimension uses."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return 0
    ring = gens[0].ring
    fld = ring.field
    pt = tuple(fld.of(c) for c in point)
    rows = []
    for g in gens:
        rows.append([g.derivative(j).eval(pt) for j in range(ring.n)])
    rank, _ = rref_pivots(rows, ring.n, fld)
    return rank
