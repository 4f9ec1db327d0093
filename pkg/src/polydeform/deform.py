"""One-parameter deformations of plane polynomials and their discriminants.

A family P(x, y, s) of constant degree d deforms f_0 = P(x, y, 0).  For
small s != 0 the critical points of P(., ., s) sweep out a curve over the
punctured parameter line; pushing it forward by the value map t = P gives
the affine discriminant, a curve in the (s, t)-plane.  Everything here is
organized around how that curve behaves as s -> 0: critical points
converging to critical points of f_0 (type I), critical points escaping
to infinity while their value stays bounded (type II), and critical
points whose value blows up as well (type III).

The computation is exact throughout.  The critical locus is eliminated
to a polynomial for a sheared abscissa; each irreducible factor carries
the critical ordinate and the critical value as residue fractions, and
its behaviour for s -> 0 is split into branch germs by an iterated
Newton polygon that follows those fractions along each germ.  A single
irreducible factor can perfectly well carry germs of several types, so
classification happens at the germ level while the discriminant
equation stays attached to the factor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .atinfty import infinity_profile, invariants, is_fisi, points_at_infinity
from .fields import QQ, ExtensionField, ProvisionalExtension, d5_run
from .localgeom import AlgebraicPointOrbit, Coordinate, rational_coordinate
from .mpoly import (
    MPoly,
    mp_div_exact,
    mp_gcd,
    mp_primitive_in,
    mp_sqfree_in,
    resultant,
)
from .qfactor import factor_univariate, q_roots
from .sfactor import biv_key, sfactor
from .upoly import (
    up_deg,
    up_derivative,
    up_gcd,
    up_mul,
    up_norm,
    up_ord,
    up_sqfree_decomposition,
    up_sqfree_part,
)

VALUE_VAR = "t"

T_INFINITY = "t-infinity"

_ZERO = rational_coordinate(0)

_TYPE_RANK = {"I": 0, "II": 1, "III": 2}


@dataclass(frozen=True)
class FamilyChecks:
    """Positional data of a family along the line at infinity.

    W0 holds the multiple zeroes of the top form of f_0 on the projective
    line, Sigma0 those among them where the subtop form vanishes as well.
    phi is the first-order direction of the deformation; its top part
    phi_d decides whether the deformation moves the bad points: y_smooth
    says phi_d misses Sigma0, yinf_smooth says it misses all of W0, and
    the latter forces every nearby member to carry the full count of
    vanishing cycles.
    """

    degree: int
    W0: tuple
    Sigma0: tuple
    phi: MPoly
    phi_d: MPoly
    y_smooth: bool
    yinf_smooth: bool
    is_fisi_deformation: bool
    gi_sufficient: bool


@dataclass(frozen=True)
class DiscriminantBranch:
    """One branch germ of the critical curve along s -> 0 and its image.

    factor is the irreducible discriminant equation in Q[s, t] the germ
    maps into, monic for lex order s > t; distinct germs of one
    irreducible critical component share it.  leading_exponents are the
    s -> 0 growth orders of x, y and t along the germ (None when the
    coordinate is identically zero, negative when it is unbounded).
    limit holds the value the critical value converges to, or
    T_INFINITY; limit_points the direction at infinity an escaping germ
    converges to.  mu_weight is the total Milnor number the germ carries
    for fixed generic s, mu_rep the number at a single point, covering
    the sheet count of the critical component over its discriminant
    factor.  i_tau and i_sigma are the intersection numbers of the
    discriminant germ with {t = t0} and {s = 0}, counted over the
    critical curve and weighted by mu_rep; set for type II only.
    """

    factor: MPoly
    branch_type: str
    limit: tuple | str
    limit_points: tuple
    leading_exponents: tuple
    mu_weight: int
    mu_rep: int
    covering: int
    i_tau: int | None
    i_sigma: int | None


@dataclass(frozen=True)
class ExchangeRecord:
    """Exchange bookkeeping at one boundary point and one value.

    lam is the Milnor jump of the boundary germ family, read off the
    fibers of f_0 at infinity; i_tau and i_sigma come from the
    discriminant germ converging to the pair.  The exchange statement
    is lam == i_tau with the strict bound lam < i_sigma; tangent records
    whether the germ is tangent to the s = 0 line.
    """

    point: AlgebraicPointOrbit
    value: Coordinate
    lam: int
    i_tau: int
    i_sigma: int
    tangent: bool
    exchanged: bool
    bounded: bool


@dataclass(frozen=True)
class ExchangeReport:
    status: str
    records: tuple
    notes: tuple


@dataclass(frozen=True)
class DeformationReport:
    checks: FamilyChecks
    branches: tuple
    mu_split: tuple | None
    gamma0: int
    gamma_s: int
    semicontinuity_ok: bool
    exchange: ExchangeReport


class _ShearFail(Exception):
    pass


def _family_vars(P):
    if not getattr(P.field, "is_rationals", False):
        raise ValueError("rational coefficients required")
    if len(P.vars) != 3:
        raise ValueError("a deformation takes three variables, the plane pair and the parameter")
    xv, yv, sv = P.vars
    if sv == VALUE_VAR:
        raise ValueError("the parameter variable may not be named %s" % VALUE_VAR)
    return xv, yv, sv


def _xy_degree(P, xv, yv):
    ix = P.vars.index(xv)
    iy = P.vars.index(yv)
    return max(e[ix] + e[iy] for e in P.terms)


def _homog_part(F, d):
    terms = {e: c for e, c in F.terms.items() if e[0] + e[1] == d}
    return MPoly(F.field, F.vars, terms)


def _form_vanishes_on(form, d_form, orbit):
    """Whether a binary form of degree d_form vanishes on a point orbit."""
    if form.is_zero():
        return True
    if orbit.chart == "y=1":
        return QQ.is_zero(form.coeff((0, d_form)))
    chi = up_norm(QQ, [form.coeff((d_form - j, j)) for j in range(d_form + 1)])
    q = tuple(orbit.coords[0].minpoly)
    return up_deg(up_gcd(QQ, chi, q)) == up_deg(q)


def _upoly_of(F, var):
    """Coefficient tuple of an MPoly that involves only var."""
    idx = F.vars.index(var)
    out = {}
    for e, c in F.terms.items():
        for i, k in enumerate(e):
            if i != idx and k:
                raise ValueError("polynomial is not univariate in %s" % var)
        out[e[idx]] = c
    if not out:
        return ()
    cs = [F.field.zero] * (max(out) + 1)
    for k, c in out.items():
        cs[k] = c
    return up_norm(F.field, cs)


def family_checks(P):
    return _family_base(P).checks


# -- residue arithmetic behind one eliminant factor --------------------


def _lnorm(lst):
    lst = list(lst)
    while lst and lst[-1].is_zero():
        lst.pop()
    return lst


def _prem_lists(a, b):
    """Pseudo-remainder of coefficient lists; returns (rem, scale_steps)."""
    dv = len(b) - 1
    lead = b[-1]
    rem = list(a)
    steps = 0
    while rem and len(rem) - 1 >= dv:
        c = rem[-1]
        shift = len(rem) - 1 - dv
        rem = [lead * x for x in rem]
        steps += 1
        for j, bc in enumerate(b):
            rem[shift + j] = rem[shift + j] - c * bc
        rem.pop()
        while rem and rem[-1].is_zero():
            rem.pop()
    return rem, steps


def _prs_rows(A, B, yv):
    """Successive subresultant remainders of (A, B) in yv, inputs included.

    Rows are coefficient lists in yv whose entries do not involve yv.
    Each row is a ring multiple of the true subresultant of its degree,
    which is all the mod-q reasoning downstream relies on.
    """
    a = _lnorm(A.as_coeff_list(yv))
    b = _lnorm(B.as_coeff_list(yv))
    rows = [list(a), list(b)]
    K = A.field
    one = MPoly.one(K, A.vars)
    g = one
    h = one
    while len(b) - 1 > 0:
        delta = (len(a) - 1) - (len(b) - 1)
        rem, steps = _prem_lists(a, b)
        rem = _lnorm(rem)
        lead_b = b[-1]
        for _ in range(delta + 1 - steps):
            rem = [lead_b * c for c in rem]
        denom = g * h**delta
        a = b
        b = [mp_div_exact(c, denom) for c in rem]
        if not b:
            break
        rows.append(list(b))
        g = a[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = mp_div_exact(g**delta, h ** (delta - 1))
    return rows


class _ResRing:
    """Q[s][x]/(q) with denominators carried as powers of the leading
    x-coefficient of q, so every operation stays in exact polynomial
    arithmetic.  An element is a pair (poly of x-degree below deg q,
    power)."""

    def __init__(self, q2, xv):
        self.vars = q2.vars
        self.field = q2.field
        self.xv = xv
        self.cs = _lnorm(q2.as_coeff_list(xv))
        self.lc = self.cs[-1]
        self.n = len(self.cs) - 1

    def zero(self):
        return MPoly.zero(self.field, self.vars), 0

    def _cut(self, F, k):
        cs = _lnorm(F.as_coeff_list(self.xv))
        if len(cs) - 1 < self.n:
            return F, k
        rem, steps = _prem_lists(cs, self.cs)
        return MPoly.from_coeff_list(self.field, self.vars, self.xv, rem), k + steps

    def elem(self, F):
        return self._cut(F, 0)

    def mul(self, a, b):
        return self._cut(a[0] * b[0], a[1] + b[1])

    def rpow(self, a, e):
        out = MPoly.one(self.field, self.vars), 0
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def scale(self, a, c):
        return a[0].scale(c), a[1]

    def add(self, a, b):
        ka, kb = a[1], b[1]
        if ka == kb:
            return a[0] + b[0], ka
        if ka < kb:
            return a[0] * self.lc ** (kb - ka) + b[0], kb
        return a[0] + b[0] * self.lc ** (ka - kb), ka

    def sub(self, a, b):
        return self.add(a, self.scale(b, Fraction(-1)))

    def is_zero(self, a):
        return a[0].is_zero()

    def ratio(self, a, b):
        """Numerator and denominator polynomials of a/b, powers cleared."""
        if a[1] <= b[1]:
            return a[0] * self.lc ** (b[1] - a[1]), b[0]
        return a[0], b[0] * self.lc ** (a[1] - b[1])


# -- branch germs of one eliminant factor ------------------------------
#
# A factor q(x, s) is expanded at s -> 0 into clusters of conjugate
# branches.  The critical ordinate and the critical value ride along as
# numerator/denominator pairs; their growth orders are read off the
# expansion, extending it on demand until a nonzero series coefficient
# settles the order.  Every datum a cluster reports is collapsed to
# rational minimal polynomials before it leaves the expansion, so
# provisional splitting stays contained here.


def _dp_from(F, xv, sv):
    ix = F.vars.index(xv)
    isv = F.vars.index(sv)
    return {(e[ix], e[isv]): c for e, c in F.terms.items()}


def _dp_cols(dp):
    cols = {}
    for i, j in dp:
        if i not in cols or j < cols[i]:
            cols[i] = j
    return sorted(cols.items())


def _edges(cols, positive_only=False):
    """Lower-hull edges as (slope, span); slope is the branch order."""
    if len(cols) < 2:
        return ()
    out = {}
    for a in range(len(cols)):
        j1, k1 = cols[a]
        for b in range(a + 1, len(cols)):
            j2, k2 = cols[b]
            rho = Fraction(k2 - k1, j1 - j2)
            val = j1 * rho + k1
            if all(j * rho + k >= val for j, k in cols):
                att = [j for j, k in cols if j * rho + k == val]
                out[rho] = max(att) - min(att)
    items = sorted(out.items())
    if positive_only:
        items = [(r, s) for r, s in items if r > 0]
    return tuple(items)


def _dp_edge(dp_off, p, q):
    """Substitute the edge scaling: exponents (i, j) -> (i, p*i + q*j)."""
    dp, off = dp_off
    if not dp:
        return {}, 0
    raw = {(i, p * i + q * (j + off)): c for (i, j), c in dp.items()}
    m = min(v for _, v in raw)
    return {(i, v - m): c for (i, v), c in raw.items()}, m


def _dp_map(K2, inj, dp):
    out = {}
    for e, c in dp.items():
        v = inj(c)
        if not K2.is_zero(v):
            out[e] = v
    return out


def _dp_translate(K, dp, u0):
    """Recenter the first variable at u0."""
    if not dp:
        return {}
    out = {}
    pows = [(K.one,)]
    imax = max(i for i, _ in dp)
    while len(pows) <= imax:
        pows.append(up_mul(K, pows[-1], (u0, K.one)))
    for (i, j), c in dp.items():
        for l, b in enumerate(pows[i]):
            if K.is_zero(b):
                continue
            cur = out.get((l, j))
            v = K.mul(c, b)
            out[(l, j)] = v if cur is None else K.add(cur, v)
    return {k: v for k, v in out.items() if not K.is_zero(v)}


def _dp_eval(K, dp, eta, w):
    """Series coefficients 0..w of dp evaluated on the branch series eta."""
    out = [K.zero] * (w + 1)
    pcache = {}

    def pw(n):
        if n == 0:
            base = [K.zero] * (w + 1)
            base[0] = K.one
            return base
        if n not in pcache:
            prev = pw(n - 1)
            cur = [K.zero] * (w + 1)
            for a in range(w + 1):
                pa = prev[a]
                if K.is_zero(pa):
                    continue
                for b in range(1, min(w - a, len(eta) - 1) + 1):
                    eb = eta[b]
                    if K.is_zero(eb):
                        continue
                    cur[a + b] = K.add(cur[a + b], K.mul(pa, eb))
            pcache[n] = cur
        return pcache[n]

    for (i, j), c in dp.items():
        if j > w:
            continue
        if i == 0:
            out[j] = K.add(out[j], c)
            continue
        pwi = pw(i)
        for a in range(w + 1 - j):
            v = pwi[a]
            if not K.is_zero(v):
                out[j + a] = K.add(out[j + a], K.mul(c, v))
    return out


def _tower_deg(K):
    d = 1
    while K is not QQ:
        d *= K.degree()
        K = K.base
    return d


def _norm_step(K, f):
    """Push a polynomial over an extension down to its base by the norm."""
    B = K.base
    vars = ("_w", "_t")
    mod = {(i, 0): c for i, c in enumerate(K.modulus) if not B.is_zero(c)}
    ft = {}
    for k, ck in enumerate(f):
        for i, c in enumerate(ck):
            if not B.is_zero(c):
                ft[(i, k)] = c
    res = resultant(MPoly(B, vars, mod), MPoly(B, vars, ft), "_w")[0]
    return _upoly_of(res, "_t")


def _mp_down(K, a):
    """Monic rational minimal polynomial of a tower element."""
    f = up_norm(K, (K.neg(a), K.one))
    while K is not QQ:
        f = _norm_step(K, f)
        K = K.base
    g = up_sqfree_part(QQ, f)
    fac = factor_univariate(g)[1]
    if len(fac) != 1:
        raise AssertionError("a branch cluster mixed distinct conjugacy classes")
    return fac[0][0]


def _terminal(K, Fdp, d0inv, exprs, ram, ox, lead_x, cap, t_const):
    """Resolve one branch cluster: growth orders, limits, contact data.

    The branch series is extended by plain Newton iteration against the
    centered curve; d0inv None marks a branch that terminates exactly.
    Expression orders are (first nonzero series index + offset) / ram.
    """
    eta = [K.zero]

    def extend(to):
        while len(eta) - 1 < to:
            M = len(eta)
            if d0inv is None:
                eta.append(K.zero)
                continue
            vals = _dp_eval(K, Fdp, eta, M)
            eta.append(K.neg(K.mul(d0inv, vals[M])))

    def settle(dp, off):
        if not dp:
            return None, None
        w = 4
        while True:
            w = min(w, cap)
            extend(w)
            vals = _dp_eval(K, dp, eta, w)
            for idx, v in enumerate(vals):
                if not K.is_zero(v):
                    return off + idx, v
            if w >= cap:
                raise AssertionError("a branch series failed to settle an order")
            w *= 2

    onum, lnum = settle(*exprs["ny"])
    oden, lden = settle(*exprs["dy"])
    tnum, ltn = settle(*exprs["nt"])
    tden, ltd = settle(*exprs["dt"])
    if oden is None or tden is None:
        raise AssertionError("a solved denominator vanished along a branch")
    oy = None if onum is None else Fraction(onum - oden, ram)
    ot = None if tnum is None else Fraction(tnum - tden, ram)

    x_unb = ox is not None and ox < 0
    y_unb = oy is not None and oy < 0
    t_unb = ot is not None and ot < 0
    if t_unb:
        btype = "III"
        t0 = None
        shift = None
    else:
        btype = "II" if (x_unb or y_unb) else "I"
        if ot is None:
            t0 = _ZERO
            shift = None
        elif ot > 0:
            t0 = _ZERO
            shift = ot
        else:
            val = K.div(ltn, ltd)
            t0 = Coordinate(_mp_down(K, val))
            if t_const:
                shift = None
            else:
                ntdp, ntoff = exprs["nt"]
                dtdp, dtoff = exprs["dt"]
                soff = min(ntoff, dtoff)
                dps = dict()
                for (i, j), c in ntdp.items():
                    dps[(i, j + ntoff - soff)] = c
                for (i, j), c in dtdp.items():
                    key = (i, j + dtoff - soff)
                    v = K.neg(K.mul(val, c))
                    cur = dps.get(key)
                    v = v if cur is None else K.add(cur, v)
                    if K.is_zero(v):
                        dps.pop(key, None)
                    else:
                        dps[key] = v
                so, _ = settle(dps, soff)
                shift = None if so is None else Fraction(so - tden, ram)

    if btype == "I":
        point = None
    elif onum is None:
        if x_unb:
            point = AlgebraicPointOrbit("x=1", (_ZERO, _ZERO))
        else:
            raise AssertionError("an escaping branch with both coordinates flat")
    elif ox is None:
        point = AlgebraicPointOrbit("y=1", (_ZERO, _ZERO))
    else:
        rd = oy - ox
        if rd > 0:
            point = AlgebraicPointOrbit("x=1", (_ZERO, _ZERO))
        elif rd < 0:
            point = AlgebraicPointOrbit("y=1", (_ZERO, _ZERO))
        else:
            c = K.div(K.div(lnum, lden), lead_x)
            point = AlgebraicPointOrbit("x=1", (Coordinate(_mp_down(K, c)), _ZERO))

    return {
        "sheets": _tower_deg(K),
        "exps": (ox, oy, ot),
        "btype": btype,
        "t0": t0,
        "shift": shift,
        "point": point,
    }


def _split_roots(K, core, Fdp, exprs, ram, ox, lead_x, cap, t_const, depth):
    """One cluster per conjugacy class of edge-polynomial roots."""
    out = []

    def attach(K2, inj, u0, mh):
        F2 = _dp_translate(K2, _dp_map(K2, inj, Fdp), u0)
        ex2 = {
            k: (_dp_translate(K2, _dp_map(K2, inj, dp), u0), off)
            for k, (dp, off) in exprs.items()
        }
        lx = u0 if lead_x is None else inj(lead_x)
        if (0, 0) in F2:
            raise AssertionError("an edge root failed to center its cluster")
        if mh == 1:
            d0 = F2.get((1, 0))
            if d0 is None:
                raise AssertionError("a simple edge root lost its linear term")
            return [_terminal(K2, F2, K2.invert(d0), ex2, ram, ox, lx, cap, t_const)]
        return _descend(K2, F2, ex2, ram, ox, lx, cap, t_const, depth + 1)

    ident = lambda c: c
    if K is QQ:
        for h, mh in factor_univariate(tuple(core))[1]:
            if up_deg(h) == 1:
                out.extend(attach(QQ, ident, QQ.neg(h[0]), mh))
            else:
                K2 = ExtensionField(QQ, h, "r%d" % depth)
                out.extend(attach(K2, K2.lift, K2.gen_elem(), mh))
        return out
    for g, mh in up_sqfree_decomposition(K, tuple(core)):
        if up_deg(g) == 1:
            out.extend(attach(K, ident, K.neg(g[0]), mh))
        else:
            pe = ProvisionalExtension(K, g, "w%d" % depth)
            for _, recs in d5_run(
                pe, lambda F, mh=mh: attach(F, F.lift, F.gen_elem(), mh)
            ):
                out.extend(recs)
    return out


def _descend(K, Fdp, exprs, ram, ox, lead_x, cap, t_const, depth):
    """Continue the expansion below a multiple edge root."""
    if depth > 24:
        raise AssertionError("a branch expansion exceeded the expected depth")
    out = []
    imin = min(i for i, _ in Fdp)
    if imin:
        if imin != 1:
            raise AssertionError("a repeated exact branch on a squarefree curve")
        out.append(_terminal(K, Fdp, None, exprs, ram, ox, lead_x, cap, t_const))
        Fdp = {(i - 1, j): c for (i, j), c in Fdp.items()}
    cols = _dp_cols(Fdp)
    for rho, span in _edges(cols, positive_only=True):
        p, qr = rho.numerator, rho.denominator
        F1, _ = _dp_edge((Fdp, 0), p, qr)
        ex1 = {k: _dp_edge(v, p, qr) for k, v in exprs.items()}
        imax = max(i for i, j in F1 if j == 0)
        es = up_norm(K, [F1.get((i, 0), K.zero) for i in range(imax + 1)])
        core = es[up_ord(K, es):]
        if up_deg(core) != span:
            raise AssertionError("an edge polynomial missed its span")
        out.extend(
            _split_roots(K, core, F1, ex1, ram * qr, ox, lead_x, cap * qr, t_const, depth)
        )
    return out


def _branch_data(q2, xv, sv, ypair, tpair, t_const, cap):
    """Resolved branch clusters of one eliminant factor at s -> 0."""
    n = q2.degree_in(xv)
    exprs = {}
    names = ("ny", "dy", "nt", "dt")
    polys = (ypair[0], ypair[1], tpair[0], tpair[1])
    qcs = _lnorm(q2.as_coeff_list(xv))
    if all(c.is_zero() for c in qcs[:-1]):
        # the abscissa is pinned to the axis
        if n != 1:
            raise AssertionError("a power of the axis escaped factoring")
        for k, E in zip(names, polys):
            exprs[k] = (_dp_from(E.subs({xv: QQ.zero}), xv, sv), 0)
        rec = _terminal(QQ, {}, None, exprs, 1, None, None, cap, t_const)
        return [rec]
    dpq = _dp_from(q2, xv, sv)
    edges = _edges(_dp_cols(dpq))
    if sum(s for _, s in edges) != n:
        raise AssertionError("the branch polygon lost sheets")
    for k, E in zip(names, polys):
        exprs[k] = (_dp_from(E, xv, sv), 0)
    out = []
    for rho, span in edges:
        p, qr = rho.numerator, rho.denominator
        F1, _ = _dp_edge((dpq, 0), p, qr)
        ex1 = {k: _dp_edge(v, p, qr) for k, v in exprs.items()}
        imax = max(i for i, j in F1 if j == 0)
        es = up_norm(QQ, [F1.get((i, 0), QQ.zero) for i in range(imax + 1)])
        core = es[up_ord(QQ, es):]
        if up_deg(core) != span:
            raise AssertionError("an edge polynomial missed its span")
        out.extend(_split_roots(QQ, core, F1, ex1, qr, rho, None, cap * qr, t_const, 1))
    if sum(cl["sheets"] for cl in out) != n:
        raise AssertionError("branch sheets do not cover the factor")
    return out


# -- critical curve decomposition --------------------------------------


class _Component:
    __slots__ = ("q", "degree", "delta", "covering", "mu_rep", "records")


def _value_sqfree(prim2, sv):
    """Squarefree part of the value curve equation in the value variable.

    One squarefree full-degree specialization of the parameter already
    proves squarefreeness, which spares the bivariate gcd on the large
    coefficients a resultant produces; the repeated case falls back to
    the exact computation on its much smaller inputs.
    """
    dT = prim2.degree_in(VALUE_VAR)
    for k in range(1, 8):
        spec = prim2.subs({sv: QQ.from_int(k)}).drop_var(sv)
        cs = _upoly_of(spec, VALUE_VAR)
        if up_deg(cs) != dT:
            continue
        if up_deg(up_gcd(QQ, cs, up_derivative(QQ, cs))) == 0:
            return prim2
    return mp_primitive_in(mp_sqfree_in(prim2, VALUE_VAR), VALUE_VAR)


def _delta_of(mt2, sv):
    cleared = mt2.with_vars((sv, VALUE_VAR))
    lead = max(cleared.terms)
    return cleared.scale(QQ.invert(cleared.terms[lead]))


def _mp_same(A, B):
    return A.vars == B.vars and A.terms == B.terms


def _exp_key(e):
    if e is None:
        return (1, Fraction(0))
    return (0, e)


def _t0_key(cl):
    if cl["t0"] is None:
        return ()
    return tuple(cl["t0"].minpoly)


def _pt_key(cl):
    pt = cl["point"]
    if pt is None:
        return ()
    return (pt.chart,) + tuple(pt.coords[0].minpoly) + tuple(pt.coords[1].minpoly)


def _solve_component(Pc, q2, mu_rep, A, B, xv, yv, sv):
    """Branch records of one eliminant factor, or _ShearFail when the
    projection direction is too degenerate to read them off."""
    n = q2.degree_in(xv)
    rr = _ResRing(q2, xv)
    day = A.degree_in(yv)
    dby = B.degree_in(yv)

    bad_a = mp_gcd(q2, A.as_coeff_list(yv)[-1].drop_var(yv)).total_degree() > 0
    bad_b = mp_gcd(q2, B.as_coeff_list(yv)[-1].drop_var(yv)).total_degree() > 0
    if (day == 0 and bad_b) or (dby == 0 and bad_a) or (day and dby and bad_a and bad_b):
        # critical points would slip away along the ordinate over this
        # factor and the eliminant multiplicity would overcount them
        raise _ShearFail()

    if day == 0 or dby == 0:
        hi, lo = (B, A) if day == 0 else (A, B)
        rows = [_lnorm(hi.as_coeff_list(yv)), _lnorm(lo.as_coeff_list(yv))]
    else:
        first, second = (A, B) if day >= dby else (B, A)
        rows = _prs_rows(first, second, yv)
    chosen = None
    for row in reversed(rows):
        red = [rr.elem(c.drop_var(yv)) for c in row]
        if any(not rr.is_zero(c) for c in red):
            chosen = red
            break
    if chosen is None:
        raise AssertionError("both critical equations vanish on an eliminant factor")
    m = len(chosen) - 1
    if m == 0 or rr.is_zero(chosen[-1]):
        raise _ShearFail()

    rr_ny = rr.scale(chosen[m - 1], Fraction(-1))
    rr_dy = rr.scale(chosen[m], Fraction(m))
    if m >= 2:
        # the ordinate row must be a perfect power (y - psi)^m over the
        # factor; anything else means several ordinates share an abscissa
        mc = rr_dy
        mcm = rr.rpow(mc, m)
        r1 = chosen[m - 1]
        for l in range(m):
            lhs = rr.mul(chosen[l], mcm)
            rhs = rr.mul(rr.rpow(mc, l), rr.rpow(r1, m - l))
            rhs = rr.mul(chosen[m], rr.scale(rhs, Fraction(comb(m, l))))
            if not rr.is_zero(rr.sub(lhs, rhs)):
                raise _ShearFail()
    for F, dF in ((A, day), (B, dby)):
        cs = [c.drop_var(yv) for c in _lnorm(F.as_coeff_list(yv))]
        acc = rr.zero()
        for j, cj in enumerate(cs):
            if cj.is_zero():
                continue
            term = rr.mul(rr.rpow(rr_ny, j), rr.rpow(rr_dy, dF - j))
            acc = rr.add(acc, rr.mul(rr.elem(cj), term))
        if not rr.is_zero(acc):
            raise _ShearFail()

    J = Pc.degree_in(yv)
    rr_nt = rr.zero()
    for j, cj in enumerate(c.drop_var(yv) for c in _lnorm(Pc.as_coeff_list(yv))):
        if cj.is_zero():
            continue
        term = rr.mul(rr.rpow(rr_ny, j), rr.rpow(rr_dy, J - j))
        rr_nt = rr.add(rr_nt, rr.mul(rr.elem(cj), term))
    rr_dt = rr.rpow(rr_dy, J)
    if rr.is_zero(rr_dt):
        raise _ShearFail()

    def pair_of(a, b):
        # common powers of the reduction unit dominate the shared content
        # after clearing; residual common factors are harmless, they only
        # feed the eliminated content downstream
        N, D = rr.ratio(a, b)
        if rr.lc.total_degree() > 0:
            while True:
                try:
                    N2 = mp_div_exact(N, rr.lc)
                    D2 = mp_div_exact(D, rr.lc)
                except ArithmeticError:
                    break
                N, D = N2, D2
        return N, D

    ypair = pair_of(rr_ny, rr_dy)
    tpair = pair_of(rr_nt, rr_dt)

    v3 = (xv, VALUE_VAR, sv)
    M3 = MPoly.var(QQ, v3, VALUE_VAR) * tpair[1].with_vars(v3) - tpair[0].with_vars(v3)
    prim = resultant(q2.with_vars(v3), M3, xv)[1]
    prim2 = prim.drop_var(xv)
    mt2 = _value_sqfree(prim2, sv)
    dt_deg = mt2.degree_in(VALUE_VAR)
    if dt_deg <= 0 or n % dt_deg:
        raise AssertionError("the value curve degree does not divide the factor degree")
    e = n // dt_deg
    pw = mt2**e
    if not _mp_same(prim2.scale(pw.leading_coeff()), pw.scale(prim2.leading_coeff())):
        raise AssertionError("critical values repeat unevenly over a component")
    delta = _delta_of(mt2, sv)
    t_const = mt2.degree_in(sv) == 0

    cap = 16 * (n * (q2.degree_in(sv) + 2) + 8)
    clusters = _branch_data(q2, xv, sv, ypair, tpair, t_const, cap)

    groups = {}
    for cl in clusters:
        key = (
            _TYPE_RANK[cl["btype"]],
            tuple(_exp_key(v) for v in cl["exps"]),
            _t0_key(cl),
            _pt_key(cl),
        )
        g = groups.setdefault(key, {"cl": cl, "sheets": 0, "itau": Fraction(0)})
        g["sheets"] += cl["sheets"]
        if cl["shift"] is None:
            g["itau"] = None
        elif g["itau"] is not None:
            g["itau"] += cl["shift"] * cl["sheets"]

    records = []
    for key in sorted(groups):
        g = groups[key]
        cl = g["cl"]
        bt = cl["btype"]
        itau = isig = None
        if bt == "II":
            isig = mu_rep * g["sheets"]
            if g["itau"] is not None:
                if g["itau"].denominator != 1:
                    raise AssertionError("a fractional contact order survived summation")
                itau = mu_rep * int(g["itau"])
        records.append(
            DiscriminantBranch(
                factor=delta,
                branch_type=bt,
                limit=T_INFINITY if bt == "III" else (cl["t0"],),
                limit_points=() if bt == "I" else (cl["point"],),
                leading_exponents=cl["exps"],
                mu_weight=mu_rep * g["sheets"],
                mu_rep=mu_rep,
                covering=e,
                i_tau=itau,
                i_sigma=isig,
            )
        )

    rec = _Component()
    rec.q = q2
    rec.degree = n
    rec.delta = delta
    rec.covering = e
    rec.mu_rep = mu_rep
    rec.records = tuple(records)
    return rec


def _shear_components(P, xv, yv, sv, shear):
    """Eliminate the critical system for one shear x -> x + c y.

    The eliminant keeps its factor multiplicities: over a factor in
    general position the multiplicity is exactly the Milnor number of
    the single critical point above each root, which is what the
    downstream weights consume.
    """
    v3 = P.vars
    if shear:
        Pc = P.subs(
            {
                xv: MPoly.var(QQ, v3, xv)
                + MPoly.const(QQ, v3, QQ.from_int(shear)) * MPoly.var(QQ, v3, yv)
            }
        )
    else:
        Pc = P
    A = Pc.partial(xv)
    B = Pc.partial(yv)
    if A.is_zero() or B.is_zero():
        raise AssertionError("a partial vanished for an isolated-singularity family")
    day = A.degree_in(yv)
    dby = B.degree_in(yv)
    if day == 0 and dby == 0:
        # both conditions are conditions on x alone; coprimality was
        # already established, so there are no critical points at all
        return Pc, []
    if day == 0:
        base, power = A, dby
    elif dby == 0:
        base, power = B, day
    else:
        # keep the full resultant: a factor constant in the parameter is
        # genuine critical locus, not content to strip
        base, power = resultant(A, B, yv)[0], 1
        if base.is_zero():
            raise AssertionError("resultant vanished for a coprime critical pair")
    R2 = mp_primitive_in(base.drop_var(yv), xv)
    if R2.degree_in(xv) <= 0:
        return Pc, []
    _, facs = sfactor(R2, xv, sv)
    comps = []
    for qf, mult in facs:
        comps.append(_solve_component(Pc, qf, mult * power, A, B, xv, yv, sv))
    return Pc, comps


# -- family analysis ---------------------------------------------------


class _Family:
    __slots__ = (
        "xv",
        "yv",
        "sv",
        "d",
        "f0",
        "checks",
        "components",
        "branches",
        "mu_total",
        "exclusion",
    )


def _rational_roots_into(excl, f):
    if up_deg(f) >= 1:
        for r, _ in q_roots(f):
            excl.add(r)


@lru_cache(maxsize=32)
def _family_base(P):
    """Base-member data only; cheap enough for display paths."""
    xv, yv, sv = _family_vars(P)
    fam = _Family()
    fam.xv, fam.yv, fam.sv = xv, yv, sv
    d = _xy_degree(P, xv, yv)
    fam.d = d
    f0 = P.subs({sv: QQ.zero}).drop_var(sv)
    if f0.is_zero() or f0.total_degree() != d:
        raise ValueError("not constant degree: the top form dies at the origin of the parameter line")
    fam.f0 = f0

    pts = points_at_infinity(f0)
    W0 = tuple(pt for pt, m, _ in pts if m >= 2)
    sub = _homog_part(f0, d - 1)
    Sigma0 = tuple(pt for pt in W0 if _form_vanishes_on(sub, d - 1, pt))
    phi3 = P.partial(sv).subs({sv: QQ.zero})
    phi = phi3.drop_var(sv)
    phi_d = _homog_part(phi, d) if not phi.is_zero() else phi
    y_smooth = not any(_form_vanishes_on(phi_d, d, pt) for pt in Sigma0)
    yinf_smooth = not any(_form_vanishes_on(phi_d, d, pt) for pt in W0)

    gxy = mp_gcd(P.partial(xv), P.partial(yv))
    fisi = (not gxy.is_zero()) and _xy_degree(gxy, xv, yv) == 0 and is_fisi(f0)
    fam.checks = FamilyChecks(
        degree=d,
        W0=W0,
        Sigma0=Sigma0,
        phi=phi,
        phi_d=phi_d,
        y_smooth=y_smooth,
        yinf_smooth=yinf_smooth,
        is_fisi_deformation=fisi,
        gi_sufficient=fisi and yinf_smooth,
    )
    fam.components = None
    fam.branches = ()
    fam.mu_total = None
    fam.exclusion = frozenset()
    return fam


@lru_cache(maxsize=32)
def _family(P):
    base = _family_base(P)
    if not base.checks.is_fisi_deformation:
        return base
    fam = _Family()
    for slot in ("xv", "yv", "sv", "d", "f0", "checks"):
        setattr(fam, slot, getattr(base, slot))
    xv, yv, sv = fam.xv, fam.yv, fam.sv
    d = fam.d
    W0 = fam.checks.W0
    Sigma0 = fam.checks.Sigma0

    comps = None
    for shear in range(12):
        try:
            _, comps = _shear_components(P, xv, yv, sv, shear)
            break
        except _ShearFail:
            continue
    if comps is None:
        raise AssertionError("no shear separated the critical points")
    fam.components = tuple(comps)
    fam.mu_total = sum(rec.mu_rep * rec.degree for rec in comps)
    fam.branches = tuple(br for rec in comps for br in rec.records)

    W0set = set(W0)
    S0set = set(Sigma0)
    for br in fam.branches:
        if br.branch_type == "II" and not set(br.limit_points) <= S0set:
            raise AssertionError("type II branch escapes outside the degenerate boundary locus")
        if br.branch_type == "III" and not set(br.limit_points) <= W0set:
            raise AssertionError("type III branch escapes outside the multiple points at infinity")

    excl = set()
    cols = {}
    isv = P.vars.index(sv)
    ix = P.vars.index(xv)
    iy = P.vars.index(yv)
    gtop = ()
    for e, c in P.terms.items():
        if e[ix] + e[iy] != d:
            continue
        cur = cols.setdefault((e[ix], e[iy]), {})
        cur[e[isv]] = c
    for cur in cols.values():
        cs = [QQ.zero] * (max(cur) + 1)
        for k, c in cur.items():
            cs[k] = c
        gtop = up_gcd(QQ, gtop, up_norm(QQ, cs))
    _rational_roots_into(excl, gtop)
    for rec in comps:
        lead = up_norm(QQ, _fraction_lead(rec.q, xv, sv))
        _rational_roots_into(excl, lead)
        dlead = up_norm(QQ, _fraction_lead(rec.delta, VALUE_VAR, sv))
        _rational_roots_into(excl, dlead)
    fam.exclusion = frozenset(excl)
    return fam


def _fraction_lead(F, main, param):
    """Leading coefficient in main, as a coefficient tuple in param."""
    dm = F.degree_in(main)
    im = F.vars.index(main)
    ip = F.vars.index(param)
    out = {}
    for e, c in F.terms.items():
        if e[im] == dm:
            out[e[ip]] = c
    cs = [QQ.zero] * (max(out) + 1)
    for k, c in out.items():
        cs[k] = c
    return cs


def _require_deformation(fam):
    if fam.components is None:
        raise ValueError("not a FISI deformation: a member has non-isolated critical points")


def discriminant(P):
    """Irreducible factors of the affine discriminant in Q[s, t].

    Factors are monic for lex order s > t and canonically sorted; an
    empty tuple means the family has no critical points at all.
    """
    fam = _family(P)
    _require_deformation(fam)
    seen = {}
    for br in fam.branches:
        key = biv_key(br.factor, VALUE_VAR, fam.sv)
        seen[key] = br.factor
    return tuple(seen[k] for k in sorted(seen))


def classify_branches(P):
    """DiscriminantBranch records, one per branch germ of the critical curve."""
    fam = _family(P)
    _require_deformation(fam)
    return fam.branches


def mu_split(P):
    """Generic Milnor number split by branch type: (mu_I, mu_II, mu_III).

    Requires the family to carry the full count (d-1)^2 for s != 0;
    the type I part always equals the Milnor number of f_0, and the
    escaping part balances the boundary invariants of f_0.
    """
    fam = _family(P)
    _require_deformation(fam)
    d = fam.d
    if fam.mu_total != (d - 1) ** 2:
        raise ValueError(
            "not general at infinity: generic Milnor number %d, full count %d"
            % (fam.mu_total, (d - 1) ** 2)
        )
    split = {"I": 0, "II": 0, "III": 0}
    for br in fam.branches:
        split[br.branch_type] += br.mu_weight
    inv0 = invariants(fam.f0)
    if split["I"] != inv0.mu:
        raise AssertionError("type I weight disagrees with the Milnor number of the base member")
    beta = sum(pr.point.orbit_size * (pr.mu_gen + pr.mu_inf) for pr in inv0.profiles)
    if split["II"] + split["III"] != inv0.lam + beta:
        raise AssertionError("escaping Milnor mass does not balance the boundary invariants")
    return split["I"], split["II"], split["III"]


def exchange_check(P):
    """Verify the boundary exchange at every type II limit.

    At each limit pair (point at infinity, value) the Milnor jump of the
    boundary germ family must equal the contact order i_tau of the
    discriminant germ with the horizontal line, stay strictly below
    i_sigma, and the germ must be tangent to {s = 0}.  Mismatches are
    reported, not raised; a singular deformation space makes the
    statement inapplicable and short-circuits to precondition_failed.
    """
    fam = _family(P)
    _require_deformation(fam)
    if not fam.checks.y_smooth:
        return ExchangeReport(
            "precondition_failed",
            (),
            ("the deformation space is singular over the degenerate boundary locus",),
        )
    profs = infinity_profile(fam.f0)
    by_pt = {pr.point: pr for pr in profs}
    records = []
    notes = []
    ok = True
    second = [br for br in fam.branches if br.branch_type == "II"]
    for br in second:
        if br.i_tau is None:
            notes.append("a discriminant factor lies inside a coordinate line")
            ok = False
            continue
        t0 = br.limit[0]
        for pt in br.limit_points:
            pr = by_pt.get(pt)
            lam = 0
            if pr is not None:
                for jump in pr.jumps:
                    if jump.value == t0:
                        lam = jump.lam
                        break
            rec = ExchangeRecord(
                point=pt,
                value=t0,
                lam=lam,
                i_tau=br.i_tau,
                i_sigma=br.i_sigma,
                tangent=br.i_sigma // br.mu_rep >= 2,
                exchanged=lam == br.i_tau,
                bounded=lam < br.i_sigma,
            )
            records.append(rec)
            ok = ok and rec.exchanged and rec.bounded and rec.tangent
    deep = [pr for pr in profs if pr.m >= 2]
    if fam.d > 2 and deep and all(pr.generic_ade == "A_1" for pr in deep) and second:
        notes.append("type II branch despite only plain double points at infinity")
        ok = False
    return ExchangeReport("ok" if ok else "mismatch", tuple(records), tuple(notes))


def semicontinuity_check(P, seed=0):
    """Compare vanishing cycle counts: gamma(0) versus a generic member.

    Draws a random rational parameter value with numerator and
    denominator bounded by 2**16, rejecting values in the exact
    degeneracy set of the family, and returns (gamma0, gamma_s, ok).
    When the counts agree the boundary profile must not move either.
    """
    fam = _family(P)
    _require_deformation(fam)
    inv0 = invariants(fam.f0)
    g0 = inv0.vanishing_cycles
    rng = random.Random(seed)
    invs = None
    for _ in range(64):
        num = rng.randint(-(2**16), 2**16)
        den = rng.randint(1, 2**16)
        sval = Fraction(num, den)
        if sval == 0 or sval in fam.exclusion:
            continue
        fs = P.subs({fam.sv: sval}).drop_var(fam.sv)
        if fs.is_zero() or fs.total_degree() != fam.d:
            continue
        if not is_fisi(fs):
            continue
        cand = invariants(fs)
        if cand.mu != fam.mu_total:
            # the draw hit a special member: its critical points collided
            continue
        invs = cand
        break
    if invs is None:
        raise RuntimeError("no admissible parameter value found")
    gs = invs.vanishing_cycles
    ok = gs >= g0
    if ok and gs == g0:
        ok = _boundary_shape(inv0) == _boundary_shape(invs)
    return g0, gs, ok


def _boundary_shape(inv):
    # one entry per geometric point: how a conjugate orbit splits over Q
    # may change with the parameter without the boundary moving at all
    return tuple(
        sorted(
            (pr.m, pr.mu_gen, pr.mu_inf)
            for pr in inv.profiles
            for _ in range(pr.point.orbit_size)
        )
    )


def deformation_report(P, seed=0):
    """Full answer for one family: checks, branches, splits and verifications."""
    fam = _family(P)
    _require_deformation(fam)
    branches = classify_branches(P)
    try:
        ms = mu_split(P)
    except ValueError:
        ms = None
    g0, gs, ok = semicontinuity_check(P, seed=seed)
    return DeformationReport(
        checks=fam.checks,
        branches=branches,
        mu_split=ms,
        gamma0=g0,
        gamma_s=gs,
        semicontinuity_ok=ok,
        exchange=exchange_check(P),
    )
