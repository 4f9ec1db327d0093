"""Invariants at infinity: multiplicities, jumps, cycle counts, atypical values."""

import random
from fractions import Fraction

import pytest
import sympy

from polydeform.atinfty import (
    chi_fiber,
    classify_fraction,
    infinity_profile,
    invariants,
    is_fisi,
    points_at_infinity,
)
from polydeform.fields import QQ
from polydeform.localgeom import Coordinate
from polydeform.mpoly import MPoly

XY = ("x", "y")


def P(**monomials):
    terms = {}
    for key, coeff in monomials.items():
        e = [0, 0]
        i = 0
        while i < len(key):
            v = key[i]
            i += 1
            digits = ""
            while i < len(key) and key[i].isdigit():
                digits += key[i]
                i += 1
            if v == "c":
                continue
            e[XY.index(v)] = int(digits) if digits else 1
        terms[tuple(e)] = Fraction(coeff)
    return MPoly(QQ, XY, terms)


BROUGHTON = P(x2y=1, x=1)
MIXED = P(xy4=1, x2y2=1, y=1)
MORSE = P(x2=1, y2=1)


def _by_chart(items):
    return {rec[0].chart: rec for rec in items}


def _minpoly_of(v):
    return (Fraction(-Fraction(v)), Fraction(1))


def test_points_at_infinity_examples():
    pts = _by_chart(points_at_infinity(BROUGHTON))
    orbit, m, mu_inf = pts["y=1"]  # [0:1]
    assert (m, mu_inf, orbit.orbit_size) == (2, 1, 1)
    orbit, m, mu_inf = pts["x=1"]  # [1:0]
    assert (m, mu_inf) == (1, 0)
    assert orbit.coords[0].rational_value() == 0

    pts = _by_chart(points_at_infinity(MIXED))
    assert pts["x=1"][1:] == (4, 3)
    assert pts["y=1"][1:] == (1, 0)

    # one conjugate pair of simple transverse points
    [(orbit, m, mu_inf)] = points_at_infinity(MORSE)
    assert (orbit.orbit_size, m, mu_inf) == (2, 1, 0)
    assert orbit.coords[0].minpoly == (Fraction(1), Fraction(0), Fraction(1))


def test_points_at_infinity_weighted_degree_sum():
    rng = random.Random(20240823)
    for _ in range(20):
        terms = {}
        for _ in range(rng.randint(2, 6)):
            i, j = rng.randint(0, 3), rng.randint(0, 3)
            c = rng.randint(-5, 5)
            if (i, j) != (0, 0) and c:
                terms[(i, j)] = Fraction(c)
        if not terms:
            continue
        f = MPoly(QQ, XY, terms)
        d = f.total_degree()
        assert sum(o.orbit_size * m for o, m, _ in points_at_infinity(f)) == d


def test_points_at_infinity_rejects_bad_input():
    with pytest.raises(ValueError, match="constant"):
        points_at_infinity(P(c=3))
    g = MPoly(QQ, ("x", "y", "z"), {(1, 1, 1): Fraction(1)})
    with pytest.raises(ValueError, match="plane"):
        points_at_infinity(g)


def test_profile_jump_at_degenerate_point():
    profs = {p.point.chart: p for p in infinity_profile(BROUGHTON)}
    p = profs["y=1"]
    assert (p.m, p.mu_inf, p.mu_gen, p.generic_ade) == (2, 1, 2, "A_2")
    assert [(j.value.minpoly, j.lam, j.ade) for j in p.jumps] == [
        (_minpoly_of(0), 1, "A_3")
    ]
    assert p.jump_ade == ("A_3",)
    q = profs["x=1"]
    assert (q.m, q.mu_gen, q.jumps) == (1, 0, ())


def test_profile_deep_jump():
    [p, q] = infinity_profile(MIXED)
    assert p.point.chart == "x=1"
    assert (p.m, p.mu_inf, p.mu_gen, p.generic_ade) == (4, 3, 6, "D_6")
    assert [(j.value.minpoly, j.lam, j.ade) for j in p.jumps] == [
        (_minpoly_of(0), 2, "D_8")
    ]
    assert (q.m, q.mu_gen) == (1, 0)


def test_profile_smooth_family_despite_multiplicity():
    # y^4 + x^3: high contact with the line at infinity but every fiber
    # stays smooth there, so no count can jump
    f = P(y4=1, x3=1)
    [p] = infinity_profile(f)
    assert (p.m, p.mu_inf, p.mu_gen, p.jumps) == (4, 3, 0, ())


def test_invariants_examples():
    r = invariants(BROUGHTON)
    assert (r.degree, r.mu, r.lam, r.vanishing_cycles) == (3, 0, 1, 1)
    assert [c.minpoly for c in r.atypical_values] == [_minpoly_of(0)]
    assert not r.is_gi
    assert r.is_fisi
    assert r.chi_generic_fiber == 0

    r = invariants(MIXED)
    assert (r.degree, r.mu, r.lam, r.vanishing_cycles) == (5, 5, 2, 7)
    assert not r.is_gi
    assert r.chi_generic_fiber == -6
    assert _minpoly_of(0) in [c.minpoly for c in r.atypical_values]

    r = invariants(MORSE)
    assert (r.degree, r.mu, r.lam, r.vanishing_cycles) == (2, 1, 0, 1)
    assert r.is_gi
    assert [c.minpoly for c in r.atypical_values] == [_minpoly_of(0)]


def test_invariants_power_family():
    for k in range(2, 6):
        f = P(**{"y%d" % (k + 1): 1, "x%d" % k: 1})
        r = invariants(f)
        assert (r.degree, r.mu, r.lam) == (k + 1, k * (k - 1), 0)
        assert r.vanishing_cycles == k * (k - 1)
        assert [c.minpoly for c in r.atypical_values] == [_minpoly_of(0)]
        [p] = r.profiles
        assert (p.m, p.mu_gen) == (k + 1, 0)


def test_chi_fiber_examples():
    assert chi_fiber(BROUGHTON, 0) == 1
    assert chi_fiber(BROUGHTON, 7) == 0
    assert chi_fiber(MORSE, 0) == 1
    assert chi_fiber(MORSE, 3) == 0


def test_chi_fiber_constant_off_atypical_values():
    rng = random.Random(20240824)
    for f in (BROUGHTON, MIXED):
        r = invariants(f)
        rational_bad = {
            c.rational_value() for c in r.atypical_values if c.is_rational()
        }
        seen = 0
        while seen < 3:
            t0 = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            if t0 in rational_bad:
                continue
            assert chi_fiber(f, t0) == r.chi_generic_fiber
            seen += 1
        for c in r.atypical_values:
            if c.is_rational():
                assert chi_fiber(f, c.rational_value()) > r.chi_generic_fiber


def test_chi_fiber_at_algebraic_value():
    # the five degenerate fibers of the mixed example each lose one cycle
    r = invariants(MIXED)
    [quintic] = [c for c in r.atypical_values if c.degree() == 5]
    assert chi_fiber(MIXED, quintic) == r.chi_generic_fiber + 1


def _sympy_affine_mu(f):
    xs, ys = sympy.symbols("x y")
    e = sum(sympy.Rational(c) * xs**i * ys**j for (i, j), c in f.terms.items())
    fx, fy = sympy.expand(e.diff(xs)), sympy.expand(e.diff(ys))
    g = sympy.gcd(sympy.Poly(fx, xs, ys), sympy.Poly(fy, xs, ys))
    if sympy.Poly(g, xs, ys).total_degree() > 0:
        return None
    G = sympy.groebner([fx, fy], xs, ys, order="grevlex")
    if G.exprs == [sympy.Integer(1)]:
        return 0
    lms = [p.monoms(order="grevlex")[0] for p in G.polys]
    ax = min((i for i, j in lms if j == 0), default=None)
    by = min((j for i, j in lms if i == 0), default=None)
    assert ax is not None and by is not None
    return sum(
        1
        for i in range(ax)
        for j in range(by)
        if not any(i >= li and j >= lj for li, lj in lms)
    )


def _sympy_divides_value_chain(f, minpoly):
    """Whether the critical-value candidate polynomial from the direct
    resultant chain is divisible by minpoly; spurious chain factors make
    this a one-sided check, which is all it is used for."""
    xs, ys, ts = sympy.symbols("x y T")
    e = sum(sympy.Rational(c) * xs**i * ys**j for (i, j), c in f.terms.items())
    fx, fy = sympy.expand(e.diff(xs)), sympy.expand(e.diff(ys))
    a = sympy.resultant(sympy.Poly(fx, xs), sympy.Poly(ts - e, xs))
    b = sympy.resultant(sympy.Poly(fy, xs), sympy.Poly(ts - e, xs))
    r = sympy.resultant(sympy.Poly(a, ys), sympy.Poly(b, ys))
    q = sum(sympy.Rational(c) * ts**k for k, c in enumerate(minpoly))
    if r == 0:
        return True
    return sympy.rem(sympy.Poly(r, ts), sympy.Poly(q, ts)) == 0


def test_affine_mu_matches_quotient_dimension():
    for f in (MORSE, MIXED, BROUGHTON, P(y4=1, x3=1)):
        assert invariants(f).mu == _sympy_affine_mu(f)


def test_affine_mu_randomized_against_quotient_dimension():
    rng = random.Random(20240822)
    agree = 0
    for _ in range(30):
        terms = {}
        for _ in range(rng.randint(2, 5)):
            i, j = rng.randint(0, 3), rng.randint(0, 3)
            if (i, j) != (0, 0):
                terms[(i, j)] = Fraction(rng.randint(-4, 4))
        terms = {k: v for k, v in terms.items() if v}
        if not terms or max(i + j for i, j in terms) < 1:
            continue
        f = MPoly(QQ, XY, terms)
        oracle = _sympy_affine_mu(f)
        if oracle is None:
            assert not is_fisi(f)
            continue
        assert is_fisi(f)
        r = invariants(f)
        assert r.mu == oracle
        jump_polys = {j.value.minpoly for p in r.profiles for j in p.jumps}
        for c in r.atypical_values:
            if c.minpoly in jump_polys:
                continue
            assert _sympy_divides_value_chain(f, c.minpoly)
        agree += 1
    assert agree >= 15


def test_algebraic_orbit_with_algebraic_values():
    # (x^2 - 2y^2)^2 + y: a conjugate pair of degenerate points at
    # infinity and an irrational triple of critical values
    f = P(x4=1, x2y2=-4, y4=4, y=1)
    r = invariants(f)
    assert r.mu == _sympy_affine_mu(f) == 3
    [p] = r.profiles
    assert p.point.orbit_size == 2
    assert p.point.coords[0].minpoly == (Fraction(-1, 2), Fraction(0), Fraction(1))
    assert (p.m, p.mu_gen, p.generic_ade, p.jumps) == (2, 2, "A_2", ())
    assert r.vanishing_cycles == r.mu + r.lam == 3
    assert [c.minpoly for c in r.atypical_values] == [
        (Fraction(27, 1024), Fraction(0), Fraction(0), Fraction(1))
    ]


def test_non_isolated_critical_locus_is_rejected():
    for f in (P(x2y2=1), P(x4=1, x2y2=2, y4=1)):
        assert not is_fisi(f)
        with pytest.raises(ValueError, match="FISI"):
            invariants(f)
        with pytest.raises(ValueError, match="FISI"):
            infinity_profile(f)
        with pytest.raises(ValueError, match="FISI"):
            chi_fiber(f, 0)


def test_classifier_table():
    assert classify_fraction(("A_0", "A_0"), 1) == "A_0"
    assert classify_fraction(("A_0", "A_3"), 5) == "A_3"
    assert classify_fraction(("smooth", "A_2"), 2) == "A_2"
    assert classify_fraction(("A_0", "D_6"), 5) == "D_6"
    assert classify_fraction(("smooth", "E_7"), 4) == "E_7"
    assert classify_fraction(("A_1", "A_1"), 4) == "B_2"
    assert classify_fraction(("A_3", "A_1"), 5) == "B_4"
    assert classify_fraction(("A_1", "A_3"), 2) == "C_4"
    assert classify_fraction(("A_2", "A_2"), 3) == "F_4"


def test_classifier_degree_side_conditions():
    assert classify_fraction(("A_3", "A_1"), 3) == "not simple"
    assert classify_fraction(("A_3", "A_1"), 4) == "not simple"
    assert classify_fraction(("A_0", "A_2"), 1) == "not simple"
    assert classify_fraction(("A_2", "A_2"), 2) == "not simple"
    assert classify_fraction(("A_2", "A_3"), 9) == "not simple"
    assert classify_fraction(("D_4", "A_1"), 9) == "not simple"


def test_classifier_rejects_unusable_tags():
    with pytest.raises(ValueError, match="classify"):
        classify_fraction(("unclassified(10, 3)", "A_1"), 5)
    with pytest.raises(ValueError, match="classify"):
        classify_fraction(("A_1", "Z_9"), 5)


def test_chi_fiber_accepts_coordinate_values():
    r = invariants(BROUGHTON)
    assert chi_fiber(BROUGHTON, Coordinate(_minpoly_of(0))) == 1
    assert chi_fiber(BROUGHTON, Fraction(1, 3)) == r.chi_generic_fiber
