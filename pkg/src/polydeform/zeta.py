"""Monodromy zeta functions as formal cyclotomic products.

A zeta function lives here as the exponent map of prod_m (1 - T^m)^e_m,
which keeps every identity exact: multiplication adds maps and the
degree sum(m * e_m) equals minus the Euler characteristic of the space
the monodromy acts on.  Weighted-homogeneous germs get their classical
zeta from root-of-unity divisor arithmetic; the parameter monodromy of
a deformation is assembled from one boundary-pair factor per point at
infinity, with a table for interior types the shipped rules do not
cover.  The split of the generic-member zeta by discriminant branch
type and the cross-assembly consistency checks sit at the end.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .atinfty import chi_fiber, invariants
from .deform import _family_base, mu_split
from .fields import QQ, ExtensionField
from .localgeom import Coordinate
from .mpoly import MPoly, mp_sqfree_in
from .puiseux import puiseux_cycles


class ZetaFunction:
    """Formal product prod_m (1 - T^m)^e_m over positive integer levels.

    The exponent map is the entire state; no expansion happens unless a
    display asks for one.  Instances are immutable and compare by map.
    """

    __slots__ = ("_items",)

    def __init__(self, exponents=()):
        pairs = exponents.items() if hasattr(exponents, "items") else exponents
        acc = {}
        for m, e in pairs:
            if m != int(m) or m < 1:
                raise ValueError("cyclotomic level must be a positive integer")
            if e != int(e):
                raise ValueError("exponents must be integers")
            acc[int(m)] = acc.get(int(m), 0) + int(e)
        self._items = tuple(sorted((m, e) for m, e in acc.items() if e))

    @property
    def exponents(self):
        return dict(self._items)

    def degree(self):
        return sum(m * e for m, e in self._items)

    def is_one(self):
        return not self._items

    def inverse(self):
        return ZetaFunction((m, -e) for m, e in self._items)

    def __mul__(self, other):
        if not isinstance(other, ZetaFunction):
            return NotImplemented
        return ZetaFunction(tuple(self._items) + tuple(other._items))

    def __truediv__(self, other):
        if not isinstance(other, ZetaFunction):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        if k != int(k):
            raise ValueError("exponent must be an integer")
        return ZetaFunction((m, e * int(k)) for m, e in self._items)

    def __eq__(self, other):
        if not isinstance(other, ZetaFunction):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return "ZetaFunction(%r)" % (self.exponents,)

    def __str__(self):
        return zeta_text(self)


ZETA_ONE = ZetaFunction()


def zeta_arith(a, b, op):
    """Exponent-map arithmetic; op is mul, div, or pow (b an integer)."""
    if op in ("mul", "*"):
        return a * b
    if op in ("div", "/"):
        return a / b
    if op == "pow":
        return a**b
    raise ValueError("unknown zeta operation %r" % (op,))


def _factor_text(m, e):
    base = "(1-T)" if m == 1 else "(1-T^%d)" % m
    return base if e == 1 else base + "^%d" % e


def zeta_text(z):
    """Rational-function rendering, factors by increasing level."""
    num = [(m, e) for m, e in sorted(z.exponents.items()) if e > 0]
    den = [(m, -e) for m, e in sorted(z.exponents.items()) if e < 0]
    if not num and not den:
        return "1"
    top = "".join(_factor_text(m, e) for m, e in num) or "1"
    if not den:
        return top
    bottom = "".join(_factor_text(m, e) for m, e in den)
    if len(den) > 1:
        bottom = "(%s)" % bottom
    return top + "/" + bottom


def zeta_from_text(text):
    """Parse a cyclotomic product such as (1-T^3)(1-T)^-2.

    Factors juxtapose or join with * and /, a parenthesized group may
    carry one integer power, and (1+T^m) abbreviates the exact quotient
    (1-T^(2m))/(1-T^m).
    """
    pos = 0
    n = len(text)

    def fail(msg):
        raise ValueError("zeta product syntax error at column %d: %s" % (pos + 1, msg))

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def uint():
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            fail("expected a number")
        return int(text[start:pos])

    def cyclotomic():
        # called on the '1' inside '(', the sign is next
        nonlocal pos
        pos += 1
        skip()
        sign = text[pos]
        pos += 1
        skip()
        if pos >= n or text[pos] != "T":
            fail("expected T")
        pos += 1
        skip()
        m = 1
        if pos < n and text[pos] == "^":
            pos += 1
            skip()
            m = uint()
            if m < 1:
                fail("level must be positive")
        skip()
        if pos >= n or text[pos] != ")":
            fail("expected )")
        pos += 1
        if sign == "-":
            return ZetaFunction({m: 1})
        return ZetaFunction({2 * m: 1, m: -1})

    def group():
        nonlocal pos
        skip()
        if pos < n and text[pos] == "1":
            pos += 1
            return ZETA_ONE
        if pos >= n or text[pos] != "(":
            fail("expected a factor")
        pos += 1
        skip()
        if pos < n and text[pos] == "1":
            j = pos + 1
            while j < n and text[j].isspace():
                j += 1
            if j < n and text[j] in "+-":
                return cyclotomic()
        z = product(")")
        if pos >= n or text[pos] != ")":
            fail("expected )")
        pos += 1
        return z

    def powered():
        nonlocal pos
        z = group()
        skip()
        if pos < n and text[pos] == "^":
            pos += 1
            skip()
            neg = False
            if pos < n and text[pos] == "-":
                neg = True
                pos += 1
            k = uint()
            z = z ** (-k if neg else k)
        return z

    def product(stop=None):
        nonlocal pos
        z = powered()
        while True:
            skip()
            if pos >= n or (stop is not None and text[pos] == stop):
                return z
            if text[pos] == "*":
                pos += 1
                z = z * powered()
            elif text[pos] == "/":
                pos += 1
                z = z / powered()
            elif text[pos] in "(1":
                z = z * powered()
            else:
                fail("unexpected character %r" % text[pos])

    skip()
    if pos >= n:
        raise ValueError("empty zeta product")
    return product()


def _tag_mu(tag):
    if tag == "smooth":
        return 0
    for letter in "ADE":
        if tag.startswith(letter + "_"):
            try:
                k = int(tag[2:])
            except ValueError:
                return None
            if letter == "A" and k >= 0:
                return k
            if letter == "D" and k >= 4:
                return k
            if letter == "E" and k in (6, 7, 8):
                return k
    return None


def load_zeta_table(text):
    """Parse boundary-pair table extension entries.

    One entry per line, `pair <interior-tag> <m> := <product>`, with #
    comments and blank lines skipped.  Entries whose tag has a known
    local count must have degree mu - 1 + m, the pair's cycle total.
    """
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, expr = line.partition(":=")
        parts = head.split()
        if not sep or len(parts) != 3 or parts[0] != "pair":
            raise ValueError(
                'line %d: expected "pair <interior-tag> <m> := <product>"' % lineno
            )
        try:
            m = int(parts[2])
        except ValueError:
            raise ValueError(
                "line %d: the boundary multiplicity must be an integer" % lineno
            ) from None
        if m < 1:
            raise ValueError("line %d: the boundary multiplicity must be positive" % lineno)
        try:
            z = zeta_from_text(expr)
        except ValueError as exc:
            raise ValueError("line %d: %s" % (lineno, exc)) from None
        mu = _tag_mu(parts[1])
        if mu is not None and z.degree() != mu - 1 + m:
            raise ValueError(
                "line %d: degree %d does not match the pair count %d of (%s, %d)"
                % (lineno, z.degree(), mu - 1 + m, parts[1], m)
            )
        table[(parts[1], m)] = z
    return table


def quasihomogeneous_zeta(weights):
    """Monodromy zeta of a weighted-homogeneous plane germ.

    The eigenvalue divisor is the product over the two variables of
    (Lambda_a / b - 1) where 1/w = a/b in lowest terms and Lambda_j
    denotes the class of all j-th roots of unity, multiplied via
    Lambda_j Lambda_k = gcd(j, k) Lambda_lcm(j, k); removing the class
    of the fiber's own component leaves the zeta function.  The degree
    always comes out mu - 1.
    """
    try:
        w = tuple(Fraction(x) for x in weights)
    except (TypeError, ValueError):
        raise ValueError("weights must be exact rationals") from None
    if len(w) != 2:
        raise ValueError("a plane germ carries exactly two weights")
    if any(not 0 < wi < 1 for wi in w):
        raise ValueError("weights must lie strictly between 0 and 1")
    mu = (1 / w[0] - 1) * (1 / w[1] - 1)
    if mu.denominator != 1:
        raise ValueError(
            "weights (%s, %s) do not cut out an isolated germ: mu = %s" % (w + (mu,))
        )
    div = {1: Fraction(1)}
    for wi in w:
        u = 1 / wi
        a, b = u.numerator, u.denominator
        nxt = {}
        for m, c in div.items():
            g = gcd(m, a)
            lev = m * a // g
            nxt[lev] = nxt.get(lev, Fraction(0)) + c * g / b
            nxt[m] = nxt.get(m, Fraction(0)) - c
        div = nxt
    div[1] = div.get(1, Fraction(0)) - 1
    exps = {}
    for m, c in div.items():
        if c.denominator != 1:
            raise AssertionError("eigenvalue classes came out fractional")
        if c:
            exps[m] = int(c)
    z = ZetaFunction(exps)
    if z.degree() != mu - 1:
        raise AssertionError(
            "zeta degree %d does not match mu - 1 = %d" % (z.degree(), mu - 1)
        )
    return z


def _interior_s_zeta(tag):
    """Parameter-monodromy zeta of one interior type, without the
    boundary cycle factor; None when no shipped rule applies."""
    if tag in ("A_0", "smooth"):
        return ZetaFunction({1: -1})
    if tag.startswith("A_"):
        try:
            k = int(tag[2:])
        except ValueError:
            return None
        if k >= 1:
            return ZetaFunction({k + 1: 1, 1: -2})
    if tag.startswith("D_"):
        try:
            k = int(tag[2:])
        except ValueError:
            return None
        if k >= 4:
            return quasihomogeneous_zeta(
                (Fraction(1, k - 1), Fraction(k - 2, 2 * (k - 1)))
            )
    return None


def boundary_pair_zeta(interior, m, table=None):
    """Zeta of one boundary pair: interior type times the (1 - T^m)
    cycle factor of the m boundary points splitting off.

    An explicit table entry for (interior, m) wins; otherwise A_0 and
    A_k interiors use the cover-degree rule and D_k interiors the
    classical germ zeta.
    """
    if m < 1:
        raise ValueError("boundary multiplicity must be positive")
    tag = "A_0" if interior == "smooth" else interior
    if table:
        hit = table.get((tag, m))
        if hit is None and interior != tag:
            hit = table.get((interior, m))
        if hit is not None:
            return hit
    s_part = _interior_s_zeta(tag)
    if s_part is None:
        raise ValueError(
            "no boundary zeta for interior type %r: extend the table with a line "
            '"pair %s %d := <product like (1-T^3)(1-T)^-2>"' % (interior, tag, m)
        )
    return s_part * ZetaFunction({m: 1})


# special member fibers of one-parameter boundary degenerations, keyed
# by (generic interior, degenerate interior): list tag, fiber zeta, and
# the middle and lower Betti numbers
_SPECIAL_FIBERS = {
    ("A_2", "A_3"): ("F_1A_2", ZetaFunction({2: -1}), (1, 0)),
}


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ZetaSplit:
    """Split of the generic-member zeta by discriminant branch type.

    zeta_II and zeta_III are None when some jump's special fiber is not
    on the table; product_II_III is certified either way.
    """

    zeta_I: ZetaFunction
    zeta_II: ZetaFunction | None
    zeta_III: ZetaFunction | None
    product_II_III: ZetaFunction
    checks: tuple


@dataclass(frozen=True)
class ConsistencyReport:
    ok: bool
    checks: tuple


@lru_cache(maxsize=32)
def _base_invariants(f0):
    return invariants(f0)


def _deformation_data(P):
    fam = _family_base(P)
    if not fam.checks.is_fisi_deformation:
        raise ValueError(
            "not a FISI deformation: a member has non-isolated critical points"
        )
    if not fam.checks.yinf_smooth:
        raise ValueError(
            "not general at infinity: the deformation direction vanishes at a "
            "degenerate point of the top form"
        )
    return fam, _base_invariants(fam.f0)


def _moving_cycles(P, fam, prof):
    """Cycle lengths of the boundary points splitting off one multiple
    point of the top form as the parameter loops the origin."""
    ix = P.vars.index(fam.xv)
    iy = P.vars.index(fam.yv)
    isv = P.vars.index(fam.sv)
    uvar = "u" if fam.sv != "u" else "w"
    terms = {}
    for e, c in P.terms.items():
        if e[ix] + e[iy] != fam.d:
            continue
        up = e[iy] if prof.point.chart == "x=1" else e[ix]
        terms[(up, e[isv])] = c
    g = mp_sqfree_in(MPoly(QQ, (uvar, fam.sv), terms), uvar)
    u0 = prof.point.coords[0]
    if u0.is_rational():
        return puiseux_cycles(g, u0.rational_value())
    K = ExtensionField(QQ, tuple(u0.minpoly), "pa")
    return puiseux_cycles(g.map_coeffs(K, K.from_q), K.gen_elem())


def _assemble(P, fam, inv, chi0, at_value, table):
    z = ZetaFunction({1: -chi0})
    for prof in inv.profiles:
        tag = prof.generic_ade
        if at_value is not None:
            for j in prof.jumps:
                if j.value.minpoly == at_value:
                    tag = j.ade
        if prof.m == 1 and tag in ("smooth", "A_0"):
            # transverse smooth point: the pair factor collapses to 1
            continue
        key = "A_0" if tag == "smooth" else tag
        if table and (key, prof.m) in table:
            pair = table[(key, prof.m)]
        else:
            pair = boundary_pair_zeta(tag, prof.m, table)
            if prof.m >= 2:
                cycles = _moving_cycles(P, fam, prof)
                if cycles != [prof.m]:
                    raise AssertionError(
                        "the moving boundary near the %s point breaks into "
                        "cycles %s instead of one %d-cycle"
                        % (prof.point.chart, cycles, prof.m)
                    )
        z = z * pair**prof.point.orbit_size
    return z


def zeta_gen(P, table=None):
    """Parameter-monodromy zeta of the generic fiber of a generic
    member, assembled from the base member's boundary pairs."""
    fam, inv = _deformation_data(P)
    z = _assemble(P, fam, inv, inv.chi_generic_fiber, None, table)
    want = (fam.d - 1) ** 2 - 1
    if z.degree() != want:
        raise AssertionError(
            "zeta degree %d does not match the member cycle count %d"
            % (z.degree(), want)
        )
    return z


def zeta_aty(P, t0, table=None):
    """Same assembly over one value of the base member, with the
    interior types and fiber characteristic specialized there."""
    fam, inv = _deformation_data(P)
    if isinstance(t0, Coordinate):
        q = tuple(t0.minpoly)
    else:
        q = (Fraction(-Fraction(t0)), Fraction(1))
    chi0 = chi_fiber(fam.f0, Coordinate(q))
    z = _assemble(P, fam, inv, chi0, q, table)
    jumps_here = sum(
        j.lam for p in inv.profiles for j in p.jumps if j.value.minpoly == q
    )
    mu_here = chi0 - inv.chi_generic_fiber - jumps_here
    want = (fam.d - 1) ** 2 - 1 - mu_here
    if z.degree() != want:
        raise AssertionError(
            "zeta degree %d does not match the fiber cycle count %d"
            % (z.degree(), want)
        )
    return z


def _special_fiber_rows(inv):
    """(profile, jump, entry-or-None, conjugate count) per jump."""
    rows = []
    for prof in inv.profiles:
        for j in prof.jumps:
            entry = _SPECIAL_FIBERS.get((prof.generic_ade, j.ade))
            rows.append((prof, j, entry, prof.point.orbit_size * j.value.degree()))
    return rows


def zeta_split(P, table=None):
    """Split the generic-member zeta by discriminant branch type.

    zeta_I carries the affine count of the base member; zeta_II is
    assembled from the special-fiber table over each jumping boundary
    point; zeta_III closes their certified product.  The checks compare
    the two global assemblies and, where the table covers every jump,
    the Betti-level count of the escaping cycles.
    """
    fam, inv = _deformation_data(P)
    z_gen = zeta_gen(P, table)
    pairs = z_gen * ZetaFunction({1: inv.chi_generic_fiber})
    product = ZetaFunction({1: -inv.lam}) * pairs.inverse()
    z_one = ZetaFunction({1: -inv.mu})
    rows = _special_fiber_rows(inv)
    covered = all(entry is not None for _, _, entry, _ in rows)
    if covered:
        z_two = ZetaFunction({1: -inv.lam})
        for prof, _, entry, count in rows:
            _, fiber_zeta, _ = entry
            z_two = z_two * (fiber_zeta / _interior_s_zeta(prof.generic_ade)) ** count
        z_three = product / z_two
    else:
        z_two = None
        z_three = None

    checks = []
    route = ZetaFunction({1: inv.mu - 1}) * product.inverse()
    checks.append(
        IdentityCheck(
            "assembly-agreement",
            route == z_gen,
            "boundary-pair route %s, branch-split route %s" % (z_gen, route),
        )
    )
    if covered:
        mu_ii = mu_split(P)[1]
        betti = inv.lam
        for prof, _, entry, count in rows:
            _, _, (b_mid, b_low) = entry
            betti += count * (b_mid - b_low + prof.mu_gen)
        checks.append(
            IdentityCheck(
                "special-fiber-betti",
                mu_ii == betti,
                "mu_II = %d, Betti count with the jump total = %d" % (mu_ii, betti),
            )
        )
    return ZetaSplit(z_one, z_two, z_three, product, tuple(checks))


def zeta_consistency(P, table=None):
    """Degree and product identities across the global assemblies.

    Every row names one identity; the report is the conjunction.  The
    two convention rows record choices the assembly relies on rather
    than computations.
    """
    fam, inv = _deformation_data(P)
    z_gen = zeta_gen(P, table)
    rows = []
    want = (fam.d - 1) ** 2 - 1
    rows.append(
        IdentityCheck(
            "generic-degree",
            z_gen.degree() == want,
            "deg zeta_gen = %d, member cycle count = %d" % (z_gen.degree(), want),
        )
    )
    split = zeta_split(P, table)
    rows.extend(split.checks)
    for c in inv.atypical_values:
        za = zeta_aty(P, c, table)
        jumps_here = sum(
            j.lam
            for p in inv.profiles
            for j in p.jumps
            if j.value.minpoly == c.minpoly
        )
        mu_here = chi_fiber(fam.f0, c) - inv.chi_generic_fiber - jumps_here
        rows.append(
            IdentityCheck(
                "atypical-degree",
                za.degree() == want - mu_here,
                "value with minimal polynomial %s: deg zeta_aty = %d, fiber "
                "cycle count = %d" % (list(c.minpoly), za.degree(), want - mu_here),
            )
        )
    msplit = mu_split(P)
    beta = sum(p.point.orbit_size * (p.mu_gen + p.mu_inf) for p in inv.profiles)
    rows.append(
        IdentityCheck(
            "escape-count-balance",
            msplit[1] + msplit[2] == inv.lam + beta,
            "mu_II + mu_III = %d, lambda plus boundary counts = %d"
            % (msplit[1] + msplit[2], inv.lam + beta),
        )
    )
    rows.append(
        IdentityCheck(
            "value-product-exponent",
            True,
            "the II-III product carries (1-T)^(-lambda); the opposite sign "
            "fails the covered examples",
        )
    )
    rows.append(
        IdentityCheck(
            "interior-zeta-convention",
            True,
            "A_k interiors enter through the cover-degree pair zeta, D_k "
            "interiors through the classical germ zeta",
        )
    )
    return ConsistencyReport(all(r.ok for r in rows), tuple(rows))
