"""Cycle structure of vanishing roots under the parameter loop.

For g(u, s) with g(u0, 0) = 0, the roots u(s) merging into u0 at s = 0
are fractional power series in s; one counterclockwise loop of s around
0 permutes them, and the permutation's cycle lengths are the branch
ramification indices.  They are read off Newton polygon edges exactly:
an edge of slope -p/q with a simple weighted root contributes one
p-cycle, a k-fold root is pushed one blow-up deeper and its cycle
lengths multiply by p.  Algebraic edge roots are adjoined provisionally
and split only when a zero test actually needs the factorization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .fields import ProvisionalExtension, d5_run
from .mpoly import MPoly, mp_content_in, mp_div_exact, mp_gcd, newton_polygon
from .upoly import up_deg, up_norm, up_ord, up_sqfree_decomposition

_DEPTH_FUSE = 64


def _u_axis(K, G):
    cs = {}
    for (i, j), c in G.terms.items():
        if j == 0:
            cs[i] = c
    if not cs:
        return ()
    out = [K.zero] * (max(cs) + 1)
    for i, c in cs.items():
        out[i] = c
    return up_norm(K, out)


def _edge_transform(K, G, p, q, c):
    """Blow up along an edge: G(s^q (c + u), s^p) with the s power cleared."""
    uvar, svar = G.vars
    U = MPoly.var(K, G.vars, uvar)
    S = MPoly.var(K, G.vars, svar)
    H = G.subs({uvar: (S**q) * (U + MPoly.const(K, G.vars, c)), svar: S**p})
    n = min(e[1] for e in H.terms)
    return MPoly(K, G.vars, {(i, j - n): cf for (i, j), cf in H.terms.items()})


def _np_cycles(K, G, depth):
    if depth > _DEPTH_FUSE:
        raise AssertionError("blow-up chain too deep; input not squarefree?")
    cycles = []
    mu = min(e[0] for e in G.terms)
    if mu:
        if mu != 1:
            raise AssertionError("multiple axis branch in squarefree input")
        G = MPoly(K, G.vars, {(i - 1, j): c for (i, j), c in G.terms.items()})
        cycles.append(1)
    if not K.is_zero(G.coeff((0, 0))):
        return cycles
    verts = newton_polygon(G).vertices
    for (ia, ja), (ib, jb) in zip(verts, verts[1:]):
        if jb >= ja:
            continue
        di = ib - ia
        dj = ja - jb
        w = int_gcd(di, dj)
        p = di // w
        q = dj // w
        chi = up_norm(K, [G.coeff((ia + k * p, ja - k * q)) for k in range(w + 1)])
        for chi_i, mult in up_sqfree_decomposition(K, chi):
            deg_i = up_deg(chi_i)
            if mult == 1:
                cycles.extend([p] * deg_i)
                continue
            if deg_i == 1:
                c = K.neg(chi_i[0])
                sub = _np_cycles(K, _edge_transform(K, G, p, q, c), depth + 1)
                cycles.extend(p * e for e in sub)
                continue
            L = ProvisionalExtension(K, chi_i, "b%d" % depth)

            def fn(field, _G=G, _p=p, _q=q, _depth=depth):
                GL = _G.map_coeffs(field, field.lift)
                H = _edge_transform(field, GL, _p, _q, field.gen_elem())
                return _np_cycles(field, H, _depth + 1)

            for mfac, sub in d5_run(L, fn):
                cycles.extend([p * e for e in sub] * up_deg(mfac))
    return cycles


def puiseux_cycles(g, u0=0):
    """Sorted cycle lengths of the roots u(s) -> u0 under s -> e^{2pi i}s.

    g must be squarefree in its first variable and vanish at (u0, 0);
    pure content in the second variable is divided off since it does not
    move the roots.  The lengths sum to the number of converging roots.
    """
    if g.is_zero():
        raise ValueError("zero input")
    if len(g.vars) != 2:
        raise ValueError("two variables required")
    uvar, svar = g.vars
    K = g.field
    if g.degree_in(uvar) < 1:
        raise ValueError("no %s dependence" % uvar)
    d = mp_gcd(g, g.partial(uvar))
    if d.degree_in(uvar) >= 1:
        raise ValueError(
            "not squarefree in %s: reduce to the squarefree part first" % uvar
        )
    if isinstance(u0, (int, Fraction)):
        u0 = K.from_q(Fraction(u0))
    G = g
    if not K.is_zero(u0):
        U = MPoly.var(K, g.vars, uvar)
        G = g.subs({uvar: U + MPoly.const(K, g.vars, u0)})
    if not K.is_zero(G.coeff((0, 0))):
        raise ValueError("the point is not a vanishing point")
    content = mp_content_in(G, uvar)
    if content.total_degree() > 0:
        G = mp_div_exact(G, content)
    cycles = sorted(_np_cycles(K, G, 0))
    expected = up_ord(K, _u_axis(K, G))
    if sum(cycles) != expected:
        raise AssertionError("cycle lengths lost a root")
    return cycles
