"""Invariants of a plane polynomial map read off the line at infinity.

For f of degree d the fibers f = t compactify to projective curves that
all meet the line at infinity in the same points, the zeroes of the top
degree form.  Near such a point the fiber family is a one-parameter
family of curve germs; its generic member has a Milnor number mu_gen
that can jump upward at finitely many parameter values, and the total
jump lambda together with the affine Milnor number mu counts the
vanishing cycles of the generic fiber.  Two independent counts (mu +
lambda, and the degree formula) are computed and compared on every run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fields import (
    QQ,
    ExtensionField,
    FractionField,
    LoggingField,
    ProvisionalExtension,
    d5_run,
)
from .localgeom import (
    AlgebraicPointOrbit,
    Coordinate,
    ade_classify,
    is_infinite,
    milnor_number,
    rational_coordinate,
)
from .mpoly import MPoly, mp_gcd, resultant
from .qfactor import factor_univariate
from .upoly import up_deg, up_derivative, up_div_exact, up_gcd, up_monic, up_norm

_GERM_VARS = {"x=1": ("u", "z"), "y=1": ("v", "z")}
_ZERO = rational_coordinate(0)


@dataclass(frozen=True)
class Jump:
    """One parameter value where the local count at infinity goes up.

    `lam` sums mu(t0) - mu_gen over the conjugate points of the orbit at
    this single value; `value.degree()` counts its conjugate values.
    """

    value: Coordinate
    lam: int
    ade: str | None


@dataclass(frozen=True)
class InfinityProfile:
    point: AlgebraicPointOrbit
    m: int
    mu_inf: int
    mu_gen: int
    jumps: tuple
    generic_ade: str | None

    @property
    def jump_ade(self):
        return tuple(j.ade for j in self.jumps)


@dataclass(frozen=True)
class InvariantsReport:
    degree: int
    mu: int
    lam: int
    vanishing_cycles: int
    atypical_values: tuple
    chi_generic_fiber: int
    is_fisi: bool
    is_gi: bool
    profiles: tuple


def _check_poly(f):
    if len(f.vars) != 2:
        raise ValueError(
            "only plane polynomials are supported; got %d variables" % len(f.vars)
        )
    if not getattr(f.field, "is_rationals", False):
        raise ValueError("rational coefficients required")
    if f.total_degree() < 1:
        raise ValueError("constant polynomial has no fiber geometry")


def _coord_key(c):
    return (len(c.minpoly), c.minpoly)


def _as_upoly_in(P, var):
    """P as a dense one-variable tuple; other variables must not occur."""
    idx = P.vars.index(var)
    out = [P.field.zero] * (P.degree_in(var) + 1)
    for exps, c in P.terms.items():
        if any(e and k != idx for k, e in enumerate(exps)):
            raise ValueError("polynomial is not univariate in %s" % var)
        out[exps[idx]] = c
    return up_norm(P.field, out)


def _chart_germ(K, f, d, chart, tval):
    """Germ of the compactified fiber family in one affine chart.

    chart x=1 gives F(1, u, z) - t z^d in (u, z); chart y=1 gives
    F(v, 1, z) - t z^d in (v, z), where F is the degree-d homogenization
    and z cuts out the line at infinity.
    """
    vars2 = _GERM_VARS[chart]
    terms = {}
    for (i, j), c in f.terms.items():
        zz = d - i - j
        e = (j, zz) if chart == "x=1" else (i, zz)
        terms[e] = K.from_q(c)
    tv = K.neg(tval)
    if not K.is_zero(tv):
        terms[(0, d)] = K.add(terms.get((0, d), K.zero), tv)
    return MPoly(K, vars2, terms)


def points_at_infinity(f):
    """Galois orbits of the top form's zeroes on the projective line.

    Returns (orbit, m, mu_inf) triples with m the zero multiplicity and
    mu_inf = m - 1; the multiplicities weighted by orbit size add up to
    the degree.
    """
    _check_poly(f)
    d = f.total_degree()
    chi = [Fraction(0)] * (d + 1)
    for (i, j), c in f.terms.items():
        if i + j == d:
            chi[j] = c
    chi = up_norm(QQ, chi)
    out = []
    for q, m in factor_univariate(chi)[1]:
        pt = AlgebraicPointOrbit("x=1", (Coordinate(q), _ZERO))
        out.append((pt, m, m - 1))
    out.sort(key=lambda rec: _coord_key(rec[0].coords[0]))
    a = d - up_deg(chi)
    if a:
        out.append((AlgebraicPointOrbit("y=1", (_ZERO, _ZERO)), a, a - 1))
    if sum(rec[0].orbit_size * rec[1] for rec in out) != d:
        raise AssertionError("multiplicities at infinity do not add up to the degree")
    return out


def _point_mu_at_value(f, d, chart, u0, q):
    """Per-suborbit (points, mu, ade) at the parameter value with minpoly q.

    None signals a one-dimensional singular locus at the point.
    """
    loc = AlgebraicPointOrbit(chart, (u0, _ZERO))
    if len(q) == 2:
        germ = _chart_germ(QQ, f, d, chart, -q[0])
        mu = milnor_number(germ, loc)
        if is_infinite(mu):
            return None
        return [(u0.degree(), mu, ade_classify(germ, loc))]
    K0 = ExtensionField(QQ, q, "tv")
    germ = _chart_germ(K0, f, d, chart, K0.gen_elem())
    if u0.is_rational():
        mu = milnor_number(germ, loc)
        if is_infinite(mu):
            return None
        return [(1, mu, ade_classify(germ, loc))]
    # the point's minimal polynomial may factor over Q(t0): split on demand
    chi = tuple(K0.from_q(c) for c in u0.minpoly)
    L = ProvisionalExtension(K0, chi, "pa")
    uvar = _GERM_VARS[chart][0]

    def fn(field):
        GL = germ.map_coeffs(field, field.lift)
        U = MPoly.var(field, GL.vars, uvar)
        G = GL.subs({uvar: U + MPoly.const(field, GL.vars, field.gen_elem())})
        mu = milnor_number(G)
        if is_infinite(mu):
            return (mu, None)
        return (mu, ade_classify(G))

    out = []
    for mfac, (mu, tag) in d5_run(L, fn):
        if is_infinite(mu):
            return None
        out.append((up_deg(mfac), mu, tag))
    return out


def _profile_point(f, d, chart, u0):
    """(mu_gen, generic tag, jumps) for one orbit at infinity, or None.

    The generic count runs over Q(t) with every nonzero decision logged;
    parameter values where the count can change must zero one of the
    logged numerators or denominators, so they are rechecked one by one.
    """
    K = LoggingField(FractionField(QQ, "t"))
    germ = _chart_germ(K, f, d, chart, K.inner.gen())
    loc = AlgebraicPointOrbit(chart, (u0, _ZERO))
    mu_gen = milnor_number(germ, loc)
    if is_infinite(mu_gen):
        return None
    tag = ade_classify(germ, loc)
    cands = set()
    for e in list(K.nonzero_log) + list(K.invert_log):
        for poly in (e.num, e.den):
            if up_deg(poly) >= 1:
                for qf, _ in factor_univariate(poly)[1]:
                    cands.add(qf)
    jumps = []
    for q in sorted(cands, key=lambda t: (len(t), t)):
        pieces = _point_mu_at_value(f, d, chart, u0, q)
        if pieces is None:
            return None
        lam = sum(cnt * (mu - mu_gen) for cnt, mu, _ in pieces)
        if lam < 0:
            raise AssertionError("Milnor number dropped under specialization")
        if lam == 0:
            continue
        tags = sorted({t for _, _, t in pieces if t is not None})
        jumps.append(Jump(Coordinate(q), lam, "|".join(tags) if tags else None))
    return mu_gen, tag, jumps


def _affine_analysis(f):
    """Total affine Milnor number and critical values, or None.

    None means the critical locus contains a curve.  Critical points are
    grouped by the x-resultant's irreducible factors, then split in y on
    demand; each group carries its local Milnor number and the factored
    minimal polynomial of its critical values.
    """
    xvar, yvar = f.vars
    fx = f.partial(xvar)
    fy = f.partial(yvar)
    if mp_gcd(fx, fy).total_degree() > 0:
        return None
    if fx.is_zero() or fy.is_zero():
        # the other partial is a nonzero constant: no critical points
        return 0, {}
    if fx.degree_in(yvar) == 0:
        r = _as_upoly_in(fx, xvar)
    elif fy.degree_in(yvar) == 0:
        r = _as_upoly_in(fy, xvar)
    else:
        r = _as_upoly_in(resultant(fx, fy, yvar)[1], xvar)
    if up_deg(r) < 1:
        return 0, {}
    tvar = "T" if "T" not in f.vars else "T0"
    vars3 = (xvar, yvar, tvar)
    f3 = MPoly(QQ, vars3, {(i, j, 0): c for (i, j), c in f.terms.items()})
    val3 = MPoly.var(QQ, vars3, tvar) - f3
    mu_total = 0
    fiber = {}
    for px, _ in factor_univariate(r)[1]:
        if up_deg(px) == 1:
            K1 = QQ
            xi = -px[0]
            fK, fxK, fyK = f, fx, fy
        else:
            K1 = ExtensionField(QQ, px, "ax")
            xi = K1.gen_elem()
            fK = f.map_coeffs(K1, K1.lift)
            fxK = fx.map_coeffs(K1, K1.lift)
            fyK = fy.map_coeffs(K1, K1.lift)
        at_xi = {xvar: MPoly.const(K1, f.vars, xi)}
        A = _as_upoly_in(fxK.subs(at_xi), yvar)
        B = _as_upoly_in(fyK.subs(at_xi), yvar)
        gy = up_gcd(K1, A, B)
        if up_deg(gy) < 1:
            continue
        gys = up_monic(K1, up_div_exact(K1, gy, up_gcd(K1, gy, up_derivative(K1, gy))))
        pieces = []
        if up_deg(gys) == 1:
            G = fK.subs(
                {
                    xvar: MPoly.var(K1, f.vars, xvar) + MPoly.const(K1, f.vars, xi),
                    yvar: MPoly.var(K1, f.vars, yvar)
                    + MPoly.const(K1, f.vars, K1.neg(gys[0])),
                }
            )
            mu = milnor_number(G - MPoly.const(K1, f.vars, G.coeff((0, 0))))
            pieces.append((gys, mu))
        else:
            L = ProvisionalExtension(K1, gys, "ay")

            def fn(field, _f=fK, _xi=xi):
                FL = _f.map_coeffs(field, field.lift)
                G = FL.subs(
                    {
                        xvar: MPoly.var(field, _f.vars, xvar)
                        + MPoly.const(field, _f.vars, field.lift(_xi)),
                        yvar: MPoly.var(field, _f.vars, yvar)
                        + MPoly.const(field, _f.vars, field.gen_elem()),
                    }
                )
                return milnor_number(G - MPoly.const(field, _f.vars, G.coeff((0, 0))))

            pieces = list(d5_run(L, fn))
        for gfac, mu in pieces:
            if is_infinite(mu):
                raise AssertionError("curve component escaped the gcd check")
            npoints = up_deg(px) * up_deg(gfac)
            mu_total += npoints * mu
            # minimal polynomial of the f-values on this orbit: eliminate
            # y against the monic group factor, then x against px
            gterms = {}
            for k, c in enumerate(gfac):
                for ik, cc in enumerate(c if K1 is not QQ else (c,)):
                    if not QQ.is_zero(cc):
                        gterms[(ik, k, 0)] = cc
            g3 = MPoly(QQ, vars3, gterms)
            N = resultant(g3, val3, yvar)[0]
            px3 = MPoly(
                QQ, vars3, {(k, 0, 0): c for k, c in enumerate(px) if not QQ.is_zero(c)}
            )
            if N.degree_in(xvar) == 0:
                # same values over every conjugate of xi
                M = N ** up_deg(px)
            else:
                M = resultant(px3, N, xvar)[0]
            Mq = _as_upoly_in(M, tvar)
            covered = 0
            for q, e in factor_univariate(Mq)[1]:
                fiber[q] = fiber.get(q, 0) + e * mu
                covered += e * up_deg(q)
            if covered != npoints:
                raise AssertionError("critical values do not cover the orbit")
    return mu_total, fiber


class _Analysis:
    def __init__(self, d, points, fisi, profiles, affine_mu, fiber_mu):
        self.d = d
        self.points = points
        self.fisi = fisi
        self.profiles = profiles
        self.affine_mu = affine_mu
        self.fiber_mu = fiber_mu


@lru_cache(maxsize=64)
def _analyze(f):
    points = points_at_infinity(f)
    d = f.total_degree()
    affine = _affine_analysis(f)
    if affine is None:
        return _Analysis(d, points, False, None, None, None)
    mu_total, fiber = affine
    profiles = []
    for pt, m, mu_inf in points:
        if m == 1:
            profiles.append(InfinityProfile(pt, m, 0, 0, (), "smooth"))
            continue
        res = _profile_point(f, d, pt.chart, pt.coords[0])
        if res is None:
            return _Analysis(d, points, False, None, None, None)
        mu_gen, tag, jumps = res
        profiles.append(InfinityProfile(pt, m, mu_inf, mu_gen, tuple(jumps), tag))
    return _Analysis(d, points, True, tuple(profiles), mu_total, fiber)


def is_fisi(f):
    """Whether every fiber of f has only isolated singularities, the
    compactified ones at infinity included."""
    return _analyze(f).fisi


def _require_fisi(f):
    a = _analyze(f)
    if not a.fisi:
        raise ValueError("not FISI: a fiber is singular along a curve")
    return a


def infinity_profile(f):
    """Per-point data at infinity: multiplicity, generic Milnor number,
    type tag, and the parameter values where the count jumps."""
    return _require_fisi(f).profiles


def invariants(f):
    """Degree, mu, lambda, vanishing cycles (by two routes that must
    agree), atypical values, and the per-point profiles."""
    a = _require_fisi(f)
    lam = sum(j.lam * j.value.degree() for p in a.profiles for j in p.jumps)
    b_local = a.affine_mu + lam
    b_degree = (a.d - 1) ** 2 - sum(
        p.point.orbit_size * (p.mu_gen + p.mu_inf) for p in a.profiles
    )
    if b_local != b_degree:
        raise AssertionError(
            "vanishing cycle routes disagree: mu + lambda = %d, degree count = %d"
            % (b_local, b_degree)
        )
    values = set(a.fiber_mu)
    for p in a.profiles:
        for j in p.jumps:
            values.add(j.value.minpoly)
    atypical = tuple(Coordinate(q) for q in sorted(values, key=lambda t: (len(t), t)))
    gi = b_local == (a.d - 1) ** 2
    if gi != all(p.m == 1 for p in a.profiles):
        raise AssertionError("degenerate top form with a full cycle count")
    return InvariantsReport(
        degree=a.d,
        mu=a.affine_mu,
        lam=lam,
        vanishing_cycles=b_local,
        atypical_values=atypical,
        chi_generic_fiber=1 - b_local,
        is_fisi=True,
        is_gi=gi,
        profiles=a.profiles,
    )


def chi_fiber(f, t0):
    """Euler characteristic of the fiber f = t0.

    t0 is rational or a Coordinate; a value off the atypical set gives
    the generic fiber.
    """
    a = _require_fisi(f)
    if isinstance(t0, Coordinate):
        q = t0.minpoly
    else:
        q = (Fraction(-Fraction(t0)), Fraction(1))
    inf_sum = 0
    for p in a.profiles:
        inf_sum += p.point.orbit_size * (p.mu_gen + p.mu_inf)
        for j in p.jumps:
            if j.value.minpoly == q:
                inf_sum += j.lam
    return 1 - (a.d - 1) ** 2 + inf_sum + a.fiber_mu.get(q, 0)


def _ade(tag):
    if tag == "smooth":
        return ("A", 0)
    for letter in ("A", "D", "E"):
        if tag.startswith(letter + "_"):
            try:
                return (letter, int(tag[2:]))
            except ValueError:
                break
    raise ValueError("cannot classify from tag %r" % (tag,))


def classify_fraction(pair, d):
    """Simple type of a boundary pair (interior, boundary) at degree d.

    Returns the type tag when the pair is on the simple list and the
    degree side condition holds, else "not simple".
    """
    li, ki = _ade(pair[0])
    lb, kb = _ade(pair[1])
    if (li, ki) == ("A", 0):
        if (lb, kb) == ("A", 0):
            return "A_0"
        if lb == "A" and kb >= 1 and d > 1:
            return "A_%d" % kb
        if lb == "D" and d > 1:
            return "D_%d" % kb
        if lb == "E" and kb in (6, 7, 8) and d > 1:
            return "E_%d" % kb
        return "not simple"
    if li == "A" and ki >= 1 and (lb, kb) == ("A", 1) and d > ki + 1:
        return "B_%d" % (ki + 1)
    if (li, ki) == ("A", 1) and lb == "A" and kb >= 2 and d > 1:
        return "C_%d" % (kb + 1)
    if (li, ki) == ("A", 2) and (lb, kb) == ("A", 2) and d > 2:
        return "F_4"
    return "not simple"
