"""Bivariate factorization: irreducible factors over a rational-function field.

Factors F(x, s) into irreducibles over Q(s), returning polynomial
representatives that are primitive in Q[s].  The method mirrors the
rational case one level up: make the input monic in x, specialize s at a
good rational point, factor there, Hensel lift the factors as truncated
power series in (s - s0) far enough to pin down true coefficients, and
recombine subsets with exact trial division.

The precision bound deg_s + 1 suffices because the Gauss norm
max_i deg_s(coeff_i) is multiplicative for monic polynomials, so every
monic factor of the monic model has s-degree at most that of the model.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd as int_gcd

from .fields import QQ
from .mpoly import MPoly, mp_content_in, mp_div_exact, mp_gcd, mp_primitive_in
from .qfactor import factor_squarefree_monic_q
from .upoly import (
    up_add,
    up_deg,
    up_derivative,
    up_div_exact,
    up_eval,
    up_gcd,
    up_mul,
    up_norm,
    up_rem,
    up_taylor_shift,
    up_xgcd,
)


def biv_key(F, main, param):
    """Deterministic ordering key for bivariate polynomials."""
    return (
        F.degree_in(main),
        F.degree_in(param),
        tuple(sorted(F.terms.items())),
    )


def q_primitive(F):
    """Scale a rational-coefficient MPoly to integer primitive form.

    The graded-lex leading coefficient comes out positive.
    """
    if F.is_zero():
        return F
    den = 1
    for c in F.terms.values():
        den = den * c.denominator // int_gcd(den, c.denominator)
    num = 0
    for c in F.terms.values():
        num = int_gcd(num, abs(c.numerator * den // c.denominator))
    scale = Fraction(den, num)
    if F.leading_coeff() < 0:
        scale = -scale
    return F.scale(scale)


def _exps(vars, main, i, param, j):
    e = [0] * len(vars)
    e[vars.index(main)] = i
    e[vars.index(param)] = j
    return tuple(e)


def _coeff_as_upoly(c, vars, main, param):
    """One x-coefficient of an MPoly, as a UPoly in param over Q."""
    d = c.degree_in(param)
    return up_norm(
        QQ, [c.coeff(_exps(vars, main, 0, param, j)) for j in range(d + 1)]
    )


def mp_to_frac_upoly(F, main, Fs):
    """View F as a UPoly in main over the fraction field Fs of the rest."""
    param = Fs.var
    out = []
    for c in F.as_coeff_list(main):
        out.append(Fs.from_poly(_coeff_as_upoly(c, F.vars, main, param)))
    return up_norm(Fs, out)


def frac_upoly_to_mp(f, vars, main, param, Fs):
    """Clear denominators of a UPoly over Fs into a primitive MPoly."""
    den = (QQ.one,)
    for c in f:
        g = up_gcd(QQ, den, c.den)
        den = up_mul(QQ, den, up_div_exact(QQ, c.den, g))
    terms = {}
    for i, c in enumerate(f):
        mult = up_div_exact(QQ, den, c.den)
        num = up_mul(QQ, c.num, mult)
        for j, q in enumerate(num):
            if q:
                terms[_exps(vars, main, i, param, j)] = q
    return q_primitive(MPoly(QQ, vars, terms))


# -- series in u = s - s0: a poly in x is a list of u-coefficient tuples


def _su_trunc(p, N):
    return up_norm(QQ, p[:N])


def _su_mul(a, b, N):
    if not a or not b:
        return []
    out = [() for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            out[i + j] = up_add(QQ, out[i + j], _su_trunc(up_mul(QQ, ai, bj), N))
    while out and not out[-1]:
        out.pop()
    return out


def _hensel_series(g_series, facs0, N):
    """Lift the s0-factorization of a monic model to precision u^N.

    g_series holds the x-coefficients of G(x, s0 + u) as u-polys; facs0
    are the monic pairwise-coprime factors of G(x, s0).  Linear lifting:
    at step k the u^k error coefficient is split across the factors by a
    fixed Bezout basis.
    """
    n = len(g_series) - 1
    r = len(facs0)
    betas = []
    for i in range(r):
        cof = (QQ.one,)
        for j in range(r):
            if j != i:
                cof = up_mul(QQ, cof, facs0[j])
        cof = up_rem(QQ, cof, facs0[i])
        d, u, _ = up_xgcd(QQ, cof, facs0[i])
        if up_deg(d) != 0:
            raise AssertionError("lift factors not coprime")
        betas.append(up_rem(QQ, u, facs0[i]))
    lifted = [[(c,) if c else () for c in f] for f in facs0]
    for k in range(1, N):
        prod = [(Fraction(1),)]
        for f in lifted:
            prod = _su_mul(prod, f, k + 1)
        e = []
        for i in range(n):
            gv = g_series[i][k] if i < len(g_series) and k < len(g_series[i]) else Fraction(0)
            pv = prod[i][k] if i < len(prod) and k < len(prod[i]) else Fraction(0)
            e.append(gv - pv)
        e = up_norm(QQ, e)
        if not e:
            continue
        for i in range(r):
            delta = up_rem(QQ, up_mul(QQ, up_rem(QQ, e, facs0[i]), betas[i]), facs0[i])
            fi = lifted[i]
            for j, dc in enumerate(delta):
                if not dc:
                    continue
                cj = list(fi[j])
                while len(cj) <= k:
                    cj.append(Fraction(0))
                cj[k] = dc
                fi[j] = tuple(cj)
    return lifted


def _mp_from_xs(vars, main, param, xcoeffs):
    terms = {}
    for i, c in enumerate(xcoeffs):
        for j, q in enumerate(c):
            if q:
                terms[_exps(vars, main, i, param, j)] = q
    return MPoly(QQ, vars, terms)


def _up_pow_q(f, e):
    out = (Fraction(1),)
    for _ in range(e):
        out = up_mul(QQ, out, f)
    return out


def _probe_points():
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def _sfactor_sqfree(G, main, param):
    """Irreducible primitive factors over Q(param) of a squarefree primitive G."""
    n = G.degree_in(main)
    if n <= 1:
        return [q_primitive(G)]
    vars = G.vars
    cs = G.as_coeff_list(main)
    lead_up = _coeff_as_upoly(cs[n], vars, main, param)
    # monic model Ghat(x, s) = lead^(n-1) * G(x/lead, s)
    hat_cols = []
    for i in range(n):
        ci = _coeff_as_upoly(cs[i], vars, main, param)
        hat_cols.append(up_mul(QQ, ci, _up_pow_q(lead_up, n - 1 - i)))
    hat_cols.append((Fraction(1),))
    s0 = g0 = None
    for cand in _probe_points():
        if not up_eval(QQ, lead_up, cand):
            continue
        g0 = up_norm(QQ, [up_eval(QQ, c, cand) for c in hat_cols])
        if up_deg(up_gcd(QQ, g0, up_derivative(QQ, g0))) == 0:
            s0 = cand
            break
    facs0 = factor_squarefree_monic_q(g0)
    if len(facs0) == 1:
        return [q_primitive(G)]
    N = max(up_deg(c) for c in hat_cols) + 1
    g_series = [up_taylor_shift(QQ, c, s0) for c in hat_cols]
    lifted = _hensel_series(g_series, facs0, N)
    Ghat = _mp_from_xs(
        vars, main, param, [up_taylor_shift(QQ, c, -s0) for c in g_series]
    )
    pool = list(range(len(lifted)))
    found_hat = []
    g_cur = Ghat
    card = 1
    while 2 * card <= len(pool):
        hit = False
        for combo in combinations(pool, card):
            series = [(Fraction(1),)]
            for i in combo:
                series = _su_mul(series, lifted[i], N)
            H = _mp_from_xs(
                vars, main, param, [up_taylor_shift(QQ, c, -s0) for c in series]
            )
            try:
                q = mp_div_exact(g_cur, H)
            except ArithmeticError:
                continue
            found_hat.append(H)
            g_cur = q
            pool = [i for i in pool if i not in combo]
            hit = True
            break
        if not hit:
            card += 1
    if g_cur.degree_in(main) > 0:
        found_hat.append(g_cur)
    # undo the monic model: factors of G are primitive parts of H(x*lead, s)
    lead_mp = _mp_from_xs(vars, main, param, [lead_up])
    x_mp = MPoly.var(QQ, vars, main)
    out = []
    for H in found_hat:
        sub = H.subs({main: x_mp * lead_mp})
        out.append(q_primitive(mp_primitive_in(sub, main)))
    out.sort(key=lambda F: biv_key(F, main, param))
    return out


def sfactor(F, main, param):
    """Factor F over Q(param): returns (content, [(factor, mult)]).

    Factors are irreducible over Q(param), integer primitive with
    positive leading coefficient, canonically ordered; content is the
    exact cofactor, so content * prod(factor**mult) == F.  Raises
    ValueError on zero input and on input involving variables other than
    main and param.
    """
    if F.is_zero():
        raise ValueError("zero input")
    for v in F.vars:
        if v not in (main, param) and F.degree_in(v) > 0:
            raise ValueError("input involves %s" % v)
    vars = F.vars
    Fs = FractionField(QQ, param)
    content = mp_content_in(F, main)
    prim = mp_div_exact(F, content) if content.total_degree() > 0 else F
    fu = mp_to_frac_upoly(prim, main, Fs)
    if up_deg(fu) < 1:
        return F, []
    out = []
    for sq, mult in up_sqfree_decomposition(Fs, fu):
        sq_mp = frac_upoly_to_mp(sq, vars, main, param, Fs)
        for h in _sfactor_sqfree(sq_mp, main, param):
            out.append((h, mult))
    out.sort(key=lambda t: biv_key(t[0], main, param))
    prod = MPoly.one(QQ, vars)
    for h, m in out:
        prod = prod * h**m
    return mp_div_exact(F, prod), out
