"""Univariate factorization over the rationals.

Pipeline: Yun squarefree decomposition, monic integer model, factorization
modulo a small odd prime (distinct-degree then Cantor-Zassenhaus), linear
multifactor Hensel lifting past a Mignotte-style coefficient bound, subset
recombination with exact trial division.  Output ordering is canonical:
by degree, then lexicographically on coefficient tuples read from the
leading coefficient down.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd, isqrt

from .fields import ModField, QQ
from .upoly import (
    up_deg,
    up_derivative,
    up_div_exact,
    up_gcd,
    up_monic,
    up_mul,
    up_norm,
    up_rem,
    up_sqfree_decomposition,
    up_sub,
    up_xgcd,
)

_CZ_SEED = 0x5EED


def _next_prime(p):
    q = p + 1
    while True:
        if q >= 2 and all(q % d for d in range(2, isqrt(q) + 1)):
            return q
        q += 1


def _polypow_mod(K, g, e, m):
    """g**e reduced modulo m over field K."""
    out = (K.one,)
    base = up_rem(K, g, m)
    while e:
        if e & 1:
            out = up_rem(K, up_mul(K, out, base), m)
        base = up_rem(K, up_mul(K, base, base), m)
        e >>= 1
    return out


def _edf(K, f, d, rng):
    """Split a product of distinct irreducibles of equal degree d (p odd)."""
    if up_deg(f) == d:
        return [f]
    p = K.p
    half = (p**d - 1) // 2
    x = (K.zero, K.one)
    while True:
        a = up_norm(K, [rng.randrange(p) for _ in range(up_deg(f))])
        if up_deg(a) < 1:
            continue
        g = up_gcd(K, a, f)
        if 0 < up_deg(g) < up_deg(f):
            break
        b = _polypow_mod(K, a, half, f)
        g = up_gcd(K, up_sub(K, b, (K.one,)), f)
        if 0 < up_deg(g) < up_deg(f):
            break
    cof = up_div_exact(K, f, g)
    return _edf(K, up_monic(K, g), d, rng) + _edf(K, up_monic(K, cof), d, rng)


def _factor_mod_p(p, g_ints):
    """Monic irreducible factors mod p of a squarefree monic integer poly."""
    K = ModField(p)
    f = up_norm(K, [c % p for c in g_ints])
    rng = random.Random(_CZ_SEED)
    x = (K.zero, K.one)
    out = []
    v = f
    h = x
    d = 0
    while up_deg(v) > 0:
        d += 1
        if 2 * d > up_deg(v):
            out.append((v, up_deg(v)))
            break
        h = _polypow_mod(K, h, p, v)
        g = up_gcd(K, up_sub(K, h, x), v)
        if up_deg(g) > 0:
            out.append((g, d))
            v = up_div_exact(K, v, g)
            h = up_rem(K, h, v)
    facs = []
    for g, d in out:
        facs.extend(_edf(K, g, d, rng))
    facs.sort(key=lambda t: (up_deg(t), t))
    return facs


def _int_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _int_mod(a, m):
    out = [c % m for c in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def _symmetric_lift(a, m):
    out = []
    for c in a:
        c %= m
        out.append(c - m if 2 * c > m else c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_div_monic(a, b):
    """Exact quotient of integer polys with b monic, or None if inexact."""
    if len(a) < len(b):
        return None
    rem = list(a)
    quo = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1]
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    if any(rem[: len(b) - 1]):
        return None
    return quo


def _hensel_lift(g_ints, facs_p, p, steps):
    """Lift a mod-p factorization of monic g to modulus p**(steps+1).

    Linear lifting of all factors at once, using the partial-fraction
    basis beta_i = (prod_{j != i} A_j)**-1 mod A_i computed once mod p.
    """
    K = ModField(p)
    r = len(facs_p)
    betas = []
    fp = up_norm(K, [c % p for c in g_ints])
    for i in range(r):
        cof = up_div_exact(K, fp, facs_p[i])
        cof = up_rem(K, cof, facs_p[i])
        d, u, _ = up_xgcd(K, cof, facs_p[i])
        assert up_deg(d) == 0
        betas.append(up_rem(K, u, facs_p[i]))
    lifted = [[int(c) for c in f] for f in facs_p]
    m = p
    for _ in range(steps):
        m_next = m * p
        prod = [1]
        for f in lifted:
            prod = _int_mod(_int_mul(prod, f), m_next)
        err = [(a - b) for a, b in _zip0(g_ints, prod)]
        e = up_norm(K, [(c // m) % p for c in err])
        for i in range(r):
            ei = up_rem(K, e, facs_p[i])
            delta = up_rem(K, up_mul(K, ei, betas[i]), facs_p[i])
            fi = lifted[i]
            for j, dc in enumerate(delta):
                if j < len(fi):
                    fi[j] = (fi[j] + m * dc) % m_next
                else:
                    fi.append((m * dc) % m_next)
        m = m_next
    return lifted, m


def _zip0(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _l2_bound(g_ints):
    n = len(g_ints) - 1
    s = sum(c * c for c in g_ints)
    return (2**n) * (isqrt(s) + 1)


def _factor_monic_sqfree_z(g_ints):
    """Irreducible monic integer factors of a monic squarefree integer poly."""
    n = len(g_ints) - 1
    if n <= 1:
        return [list(g_ints)]
    p = 2
    while True:
        p = _next_prime(p)
        K = ModField(p)
        fp = up_norm(K, [c % p for c in g_ints])
        if up_deg(fp) != n:
            continue
        if up_deg(up_gcd(K, fp, up_derivative(K, fp))) == 0:
            break
    facs_p = _factor_mod_p(p, g_ints)
    if len(facs_p) == 1:
        return [list(g_ints)]
    bound = 2 * _l2_bound(g_ints)
    steps = 0
    m = p
    while m <= bound:
        m *= p
        steps += 1
    lifted, m = _hensel_lift(g_ints, facs_p, p, steps)
    pool = list(range(len(lifted)))
    found = []
    g_cur = list(g_ints)
    card = 1
    while 2 * card <= len(pool):
        hit = False
        for combo in combinations(pool, card):
            h = [1]
            for i in combo:
                h = _int_mod(_int_mul(h, lifted[i]), m)
            h = _symmetric_lift(h, m)
            if h[0] != 0 and g_cur[0] % h[0] != 0:
                continue
            q = _int_div_monic(g_cur, h)
            if q is not None:
                found.append(h)
                g_cur = _int_norm_trim(q)
                pool = [i for i in pool if i not in combo]
                hit = True
                break
        if not hit:
            card += 1
    if len(g_cur) > 1:
        found.append(g_cur)
    return found


def _int_norm_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _clear_denominators(f):
    """Primitive integer coefficient list with positive leading coefficient."""
    den = 1
    for c in f:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def factor_squarefree_monic_q(g):
    """Monic irreducible factors over Q of a squarefree monic rational poly."""
    if up_deg(g) < 1:
        return []
    if up_deg(g) == 1:
        return [g]
    ints = _clear_denominators(g)
    n = len(ints) - 1
    lead = ints[-1]
    scaled = [c * lead ** (n - 1 - i) for i, c in enumerate(ints[:-1])] + [1]
    facs_z = _factor_monic_sqfree_z(scaled)
    out = []
    for h in facs_z:
        dh = len(h) - 1
        coeffs = [Fraction(c, lead ** (dh - j)) for j, c in enumerate(h)]
        out.append(tuple(coeffs))
    out.sort(key=_factor_key)
    return out


def _factor_key(f):
    return (up_deg(f), tuple(reversed(f)))


def factor_univariate(f):
    """Factor a rational polynomial: returns (content, [(monic irred, mult)]).

    content times the product of factor**mult reproduces f exactly.
    Ordering is canonical (degree, then coefficients from the top down).
    """
    if not f:
        raise ValueError("zero input")
    content = f[-1]
    if up_deg(f) < 1:
        return content, []
    monic = up_monic(QQ, f)
    out = []
    for sq, mult in up_sqfree_decomposition(QQ, monic):
        for h in factor_squarefree_monic_q(sq):
            out.append((h, mult))
    out.sort(key=lambda t: _factor_key(t[0]))
    return content, out


def q_roots(f):
    """Rational roots with multiplicity, sorted ascending."""
    _, facs = factor_univariate(f)
    out = []
    for h, m in facs:
        if up_deg(h) == 1:
            out.append((-h[0], m))
    out.sort(key=lambda t: t[0])
    return out
