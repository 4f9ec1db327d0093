"""Plane-curve germs: local intersection numbers, Milnor numbers, types.

Everything is exact and field-generic: the same recursion runs unchanged
over Q, Q(t), and algebraic extensions of either, so generic-parameter
and special-parameter computations share one code path.  Non-isolated
behavior is reported with the INFINITE sentinel, which refuses to be
mistaken for a number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import ExtensionField
from .mpoly import MPoly, newton_polygon
from .upoly import up_deg, up_derivative, up_gcd, up_norm, up_ord


class _InfiniteType:
    __slots__ = ()

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteType()


def is_infinite(v):
    return v is INFINITE


@dataclass(frozen=True)
class Coordinate:
    """One coordinate of an algebraic point: monic minimal polynomial
    over Q as a low-to-high Fraction tuple, plus optional isolating data
    used only for display."""

    minpoly: tuple
    isolating: tuple | None = None

    def degree(self):
        return len(self.minpoly) - 1

    def is_rational(self):
        return len(self.minpoly) == 2

    def rational_value(self):
        return -self.minpoly[0] / self.minpoly[1]


def rational_coordinate(v):
    return Coordinate((Fraction(-Fraction(v)), Fraction(1)))


@dataclass(frozen=True)
class AlgebraicPointOrbit:
    """A Galois orbit of points, one Coordinate per ambient variable."""

    chart: str
    coords: tuple
    orbit_size: int = 0

    def __post_init__(self):
        size = 1
        for c in self.coords:
            size *= c.degree()
        if self.orbit_size == 0:
            object.__setattr__(self, "orbit_size", size)
        elif self.orbit_size != size:
            raise ValueError("orbit_size inconsistent with minimal polynomials")


def origin_orbit(chart="affine", nvars=2):
    return AlgebraicPointOrbit(chart, tuple(rational_coordinate(0) for _ in range(nvars)))


def _check_germ(g):
    if len(g.vars) != 2:
        raise ValueError("two-variable germs only")
    if g.is_zero():
        raise ValueError("zero germ")


def _localize_many(polys, p, gen="a"):
    """Move an orbit point to the origin, extending the field if needed.

    Returns (field, translated polys).  At most one coordinate may be
    irrational; computations then run over base[gen]/(minpoly) and stand
    for any one representative of the orbit.
    """
    K = polys[0].field
    vars = polys[0].vars
    if p is None:
        return K, list(polys)
    if len(p.coords) != len(vars):
        raise ValueError("point has %d coordinates, germ has %d variables" % (len(p.coords), len(vars)))
    algebraic = [c for c in p.coords if not c.is_rational()]
    if len(algebraic) > 1:
        raise ValueError("at most one irrational coordinate is supported")
    L = K
    if algebraic:
        modulus = tuple(K.from_q(c) for c in algebraic[0].minpoly)
        L = ExtensionField(K, modulus, gen)
        polys = [q.map_coeffs(L, L.lift) for q in polys]
    values = []
    for c in p.coords:
        values.append(L.from_q(c.rational_value()) if c.is_rational() else L.gen_elem())
    assignments = {}
    for name, v in zip(vars, values):
        if not L.is_zero(v):
            assignments[name] = MPoly.var(L, vars, name) + MPoly.const(L, vars, v)
    if assignments:
        polys = [q.subs(assignments) for q in polys]
    return L, list(polys)


def _second_var_zero(K, P):
    """P restricted to {second variable = 0}, as a UPoly in the first."""
    cs = {}
    for (i, j), c in P.terms.items():
        if j == 0:
            cs[i] = c
    if not cs:
        return ()
    out = [K.zero] * (max(cs) + 1)
    for i, c in cs.items():
        out[i] = c
    return up_norm(K, out)


def _strip_second_var(P):
    return MPoly(P.field, P.vars, {(i, j - 1): c for (i, j), c in P.terms.items()})


def _origin_intersection(K, A, B):
    """Local intersection number of A, B at the origin.

    Reduction rules: swap, divide off the second variable when one germ
    restricts to zero on its axis, and cancel leading coefficients of
    the axis restrictions against each other, which never changes the
    number.  A running total exceeding the Bezout bound of the inputs
    proves a shared component, hence INFINITE.
    """
    fuse = max(1, A.total_degree()) * max(1, B.total_degree())
    total = 0
    while True:
        if A.is_zero() or B.is_zero():
            return INFINITE
        if not K.is_zero(A.coeff((0, 0))) or not K.is_zero(B.coeff((0, 0))):
            return total
        a = _second_var_zero(K, A)
        b = _second_var_zero(K, B)
        if not a and not b:
            return INFINITE
        if not a:
            A, B, a, b = B, A, b, a
        if not b:
            total += up_ord(K, a)
            if total > fuse:
                return INFINITE
            B = _strip_second_var(B)
            continue
        if up_deg(a) > up_deg(b):
            A, B, a, b = B, A, b, a
        k = up_deg(b) - up_deg(a)
        mono = MPoly(K, A.vars, {(k, 0): K.one})
        B = B.scale(a[-1]) - (A * mono).scale(b[-1])


def intersection_multiplicity(A, B, p=None):
    """Local intersection number of two germs at an orbit point.

    Returns an integer, or INFINITE when the germs share a component
    through the point.  The value is per orbit representative; callers
    summing over the orbit multiply by p.orbit_size.
    """
    _check_germ(A)
    _check_germ(B)
    if A.vars != B.vars or A.field is not B.field:
        raise ValueError("germs must share one ring")
    L, (GA, GB) = _localize_many([A, B], p)
    return _origin_intersection(L, GA, GB)


def _origin_milnor(K, G):
    uvar, vvar = G.vars
    Gu = G.partial(uvar)
    Gv = G.partial(vvar)
    smooth = False
    if not Gu.is_zero() and not K.is_zero(Gu.coeff((0, 0))):
        smooth = True
    if not Gv.is_zero() and not K.is_zero(Gv.coeff((0, 0))):
        smooth = True
    if smooth:
        return 0
    if Gu.is_zero() or Gv.is_zero():
        return INFINITE
    return _origin_intersection(K, Gu, Gv)


def milnor_number(g, p=None):
    """Milnor number of the curve germ {g = 0} at an orbit point.

    INFINITE signals a non-isolated singularity; a germ not vanishing at
    the point is an error.
    """
    _check_germ(g)
    L, (G,) = _localize_many([g], p)
    if not L.is_zero(G.coeff((0, 0))):
        raise ValueError("germ is a unit at the point")
    return _origin_milnor(L, G)


def _germ_multiplicity(G):
    return min(sum(e) for e in G.terms)


def _classify_tag(K, G, mu):
    if mu == 0:
        return "smooth"
    m = _germ_multiplicity(G)
    if m == 2:
        return "A_%d" % mu
    if m == 3:
        w = up_norm(K, [G.coeff((i, 3 - i)) for i in range(4)])
        mv = 3 - up_deg(w)
        triple = mv == 3 or (
            mv == 0 and up_deg(up_gcd(K, w, up_derivative(K, w))) == 2
        )
        if not triple:
            return "D_%d" % mu
        if mu in (6, 7, 8):
            return "E_%d" % mu
    return "unclassified(%d, %d)" % (mu, m)


def ade_classify(g, p=None):
    """Name a simple singular germ: A_k, D_k, E_6/E_7/E_8, or smooth.

    Multiplicity-2 germs are A_mu; multiplicity 3 splits into D_mu when
    the cubic part keeps a simple linear factor and E_mu (mu in 6..8)
    for a perfect-cube cubic part.  Anything else is reported as
    unclassified with its (mu, multiplicity) pair.
    """
    _check_germ(g)
    L, (G,) = _localize_many([g], p)
    if not L.is_zero(G.coeff((0, 0))):
        raise ValueError("germ is a unit at the point")
    mu = _origin_milnor(L, G)
    if is_infinite(mu):
        raise ValueError("non-isolated germ")
    return _classify_tag(L, G, mu)


@dataclass(frozen=True)
class GermReport:
    multiplicity: int
    milnor: object
    newton: object
    ade_type: str | None


def germ_report(g, p=None):
    """Multiplicity, Milnor number, Newton polygon, and type of a germ."""
    _check_germ(g)
    L, (G,) = _localize_many([g], p)
    if not L.is_zero(G.coeff((0, 0))):
        raise ValueError("germ is a unit at the point")
    mu = _origin_milnor(L, G)
    tag = None if is_infinite(mu) else _classify_tag(L, G, mu)
    return GermReport(
        multiplicity=_germ_multiplicity(G),
        milnor=mu,
        newton=newton_polygon(G),
        ade_type=tag,
    )
