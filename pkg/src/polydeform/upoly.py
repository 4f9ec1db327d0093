"""Dense univariate polynomial arithmetic over a pluggable coefficient field.

A polynomial is an immutable tuple of field elements indexed by exponent,
with no trailing zeros; the zero polynomial is the empty tuple.  Every
function takes the coefficient field as its first argument, so the same
code runs over the rationals, algebraic extensions, rational-function
fields, and towers of these.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd


def up_norm(K, cs):
    """Strip trailing zeros from a coefficient sequence."""
    cs = list(cs)
    while cs and K.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def up_const(K, c):
    return () if K.is_zero(c) else (c,)


def up_one(K):
    return (K.one,)


def up_x(K):
    return (K.zero, K.one)


def up_deg(f):
    return len(f) - 1


def up_is_zero(f):
    return not f


def up_lc(K, f):
    if not f:
        return K.zero
    return f[-1]


def up_coeff(K, f, i):
    return f[i] if 0 <= i < len(f) else K.zero


def up_add(K, f, g):
    n = max(len(f), len(g))
    return up_norm(K, [K.add(up_coeff(K, f, i), up_coeff(K, g, i)) for i in range(n)])


def up_neg(K, f):
    return tuple(K.neg(c) for c in f)


def up_sub(K, f, g):
    n = max(len(f), len(g))
    return up_norm(K, [K.sub(up_coeff(K, f, i), up_coeff(K, g, i)) for i in range(n)])


def up_scale(K, f, c):
    if K.is_zero(c):
        return ()
    return up_norm(K, [K.mul(a, c) for a in f])


def up_shift_exp(K, f, k):
    """Multiply by x**k."""
    if not f:
        return ()
    return (K.zero,) * k + f


def up_mul(K, f, g):
    if not f or not g:
        return ()
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if K.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return up_norm(K, out)


def up_pow(K, f, n):
    if n < 0:
        raise ValueError("negative exponent")
    out = up_one(K)
    base = f
    while n:
        if n & 1:
            out = up_mul(K, out, base)
        base = up_mul(K, base, base)
        n >>= 1
    return out


def up_eval(K, f, a):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, a), c)
    return acc


def up_divmod(K, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return (), f
    rem = list(f)
    quo = [K.zero] * (len(f) - len(g) + 1)
    inv_lc = K.invert(g[-1])
    for i in range(len(f) - len(g), -1, -1):
        c = rem[i + len(g) - 1]
        if K.is_zero(c):
            continue
        q = K.mul(c, inv_lc)
        quo[i] = q
        for j, b in enumerate(g):
            rem[i + j] = K.sub(rem[i + j], K.mul(q, b))
    return up_norm(K, quo), up_norm(K, rem)


def up_div_exact(K, f, g):
    q, r = up_divmod(K, f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def up_rem(K, f, g):
    return up_divmod(K, f, g)[1]


def up_monic(K, f):
    if not f:
        return ()
    lc = f[-1]
    if K.eq(lc, K.one):
        return f
    return up_scale(K, f, K.invert(lc))


def _q_int_primitive(f):
    """Clear denominators and divide by integer content; returns int-coeff list."""
    if not f:
        return []
    den = 1
    for c in f:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_prem(a, b):
    """Pseudo-remainder of integer coefficient lists, exact at every step."""
    dv = len(b) - 1
    lead = b[-1]
    rem = list(a)
    while rem and len(rem) - 1 >= dv:
        c = rem[-1]
        shift = len(rem) - 1 - dv
        rem = [lead * x for x in rem]
        for j, bc in enumerate(b):
            rem[shift + j] -= c * bc
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _int_content(cs):
    g = 0
    for c in cs:
        g = int_gcd(g, abs(c))
    return g


def _q_gcd_primitive_prs(f, g):
    """Monic gcd of rational polynomials via an integer primitive PRS.

    Much faster than naive Euclid over Fraction because all intermediate
    coefficients stay integral.
    """
    a = _q_int_primitive(f)
    b = _q_int_primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        rem = _int_prem(a, b)
        cont = _int_content(rem)
        if cont > 1:
            rem = [c // cont for c in rem]
        a, b = b, rem
    if not a:
        return ()
    lc = Fraction(a[-1])
    return tuple(Fraction(c) / lc for c in a)


def up_gcd(K, f, g):
    """Monic greatest common divisor."""
    if not f:
        return up_monic(K, g)
    if not g:
        return up_monic(K, f)
    if getattr(K, "is_rationals", False):
        return _q_gcd_primitive_prs(f, g)
    a, b = f, g
    while b:
        a, b = b, up_rem(K, a, b)
    return up_monic(K, a)


def up_xgcd(K, f, g):
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic or zero."""
    r0, r1 = f, g
    u0, u1 = up_one(K), ()
    v0, v1 = (), up_one(K)
    while r1:
        q, r = up_divmod(K, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, up_sub(K, u0, up_mul(K, q, u1))
        v0, v1 = v1, up_sub(K, v0, up_mul(K, q, v1))
    if not r0:
        return (), u0, v0
    lc = r0[-1]
    if K.eq(lc, K.one):
        return r0, u0, v0
    inv = K.invert(lc)
    return up_scale(K, r0, inv), up_scale(K, u0, inv), up_scale(K, v0, inv)


def up_derivative(K, f):
    return up_norm(K, [K.mul(K.from_int(i), f[i]) for i in range(1, len(f))])


def up_compose(K, f, g):
    """f(g(x)) by Horner."""
    acc = ()
    for c in reversed(f):
        acc = up_add(K, up_mul(K, acc, g), up_const(K, c))
    return acc


def up_taylor_shift(K, f, a):
    """f(x + a)."""
    return up_compose(K, f, (a, K.one))


def up_ord(K, f):
    """Order of vanishing at 0; None for the zero polynomial."""
    if not f:
        return None
    for i, c in enumerate(f):
        if not K.is_zero(c):
            return i
    return None


def up_sqfree_part(K, f):
    if up_deg(f) < 1:
        return up_monic(K, f)
    d = up_gcd(K, f, up_derivative(K, f))
    return up_monic(K, up_div_exact(K, f, d))


def up_sqfree_decomposition(K, f):
    """Yun's algorithm: list of (squarefree factor, multiplicity), factors monic.

    The product of factor**multiplicity reproduces f up to the leading
    coefficient.  Needs characteristic zero.
    """
    f = up_monic(K, f)
    if up_deg(f) < 1:
        return []
    out = []
    df = up_derivative(K, f)
    a = up_gcd(K, f, df)
    b = up_div_exact(K, f, a)
    c = up_div_exact(K, df, a)
    d = up_sub(K, c, up_derivative(K, b))
    i = 1
    while up_deg(b) >= 1:
        a = up_gcd(K, b, d)
        if up_deg(a) >= 1:
            out.append((a, i))
        b = up_div_exact(K, b, a)
        c = up_div_exact(K, d, a)
        d = up_sub(K, c, up_derivative(K, b))
        i += 1
    return out


def up_from_ints(K, cs):
    return up_norm(K, [K.from_int(c) for c in cs])
