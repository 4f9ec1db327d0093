"""Sparse multivariate polynomials over any protocol field.

Terms are stored as a dict from exponent tuple to nonzero coefficient.
Values are immutable after construction and hashable; display and
hashing use graded lexicographic term order.  A module-level term budget
guards every construction so runaway eliminations fail fast instead of
exhausting memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

_TERM_LIMIT = 10**6


class TermBudgetExceeded(RuntimeError):
    pass


def set_term_limit(n):
    global _TERM_LIMIT
    old = _TERM_LIMIT
    _TERM_LIMIT = int(n)
    return old


def get_term_limit():
    return _TERM_LIMIT


def _check_budget(n):
    if n > _TERM_LIMIT:
        raise TermBudgetExceeded(
            "term budget exceeded: %d terms (limit %d)" % (n, _TERM_LIMIT)
        )


def _grlex_key(exps):
    return (sum(exps), exps)


class MPoly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = tuple(vars)
        clean = {}
        for e, c in terms.items():
            if not field.is_zero(c):
                if len(e) != len(self.vars):
                    raise ValueError("exponent vector length mismatch")
                clean[tuple(e)] = c
        _check_budget(len(clean))
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(field, vars, c):
        z = (0,) * len(vars)
        return MPoly(field, vars, {z: c})

    @staticmethod
    def zero(field, vars):
        return MPoly(field, vars, {})

    @staticmethod
    def one(field, vars):
        return MPoly.const(field, vars, field.one)

    @staticmethod
    def var(field, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(vars)))
        return MPoly(field, vars, {e: field.one})

    # -- basic structure ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        """-1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var):
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def terms_sorted(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coeff(self):
        if not self.terms:
            return self.field.zero
        e = max(self.terms, key=_grlex_key)
        return self.terms[e]

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(self.field, self.vars, self.field.from_int(other))
        if isinstance(other, Fraction):
            return MPoly.const(self.field, self.vars, self.field.from_q(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        K = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = K.add(out.get(e, K.zero), c)
            if K.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(K, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return MPoly(K, self.vars, {e: K.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        K = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = K.mul(c1, c2)
                s = K.add(out.get(e, K.zero), p)
                if K.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
            _check_budget(len(out))
        return MPoly(K, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        out = MPoly.one(self.field, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c):
        K = self.field
        if K.is_zero(c):
            return MPoly.zero(K, self.vars)
        return MPoly(K, self.vars, {e: K.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, tuple(sorted(self.terms.items()))))
        return self._hash

    # -- calculus and substitution --------------------------------------

    def partial(self, var):
        K = self.field
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            p = K.mul(c, K.from_int(e[i]))
            s = K.add(out.get(ne, K.zero), p)
            if K.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        return MPoly(K, self.vars, out)

    def subs(self, assignments):
        """Substitute variables by field elements or by MPolys (same ring)."""
        K = self.field
        out = MPoly.zero(K, self.vars)
        powers = {}
        for e, c in self.terms.items():
            term = MPoly.const(K, self.vars, c)
            for i, name in enumerate(self.vars):
                if e[i] == 0:
                    continue
                if name in assignments:
                    val = assignments[name]
                    key = (name, e[i])
                    if key not in powers:
                        if isinstance(val, MPoly):
                            powers[key] = val ** e[i]
                        else:
                            acc = K.one
                            for _ in range(e[i]):
                                acc = K.mul(acc, val)
                            powers[key] = MPoly.const(K, self.vars, acc)
                    term = term * powers[key]
                else:
                    mono = tuple(
                        e[i] if j == i else 0 for j in range(len(self.vars))
                    )
                    term = term * MPoly(K, self.vars, {mono: K.one})
            out = out + term
        return out

    def eval_all(self, point):
        """Full evaluation at a dict var -> field element."""
        K = self.field
        acc = K.zero
        for e, c in self.terms.items():
            t = c
            for i, name in enumerate(self.vars):
                v = point[name]
                for _ in range(e[i]):
                    t = K.mul(t, v)
            acc = K.add(acc, t)
        return acc

    def map_coeffs(self, new_field, fn):
        return MPoly(
            new_field, self.vars, {e: fn(c) for e, c in self.terms.items()}
        )

    def drop_var(self, var):
        """Remove a variable the polynomial does not involve."""
        i = self.vars.index(var)
        if self.degree_in(var) > 0:
            raise ValueError("polynomial involves %s" % var)
        nv = self.vars[:i] + self.vars[i + 1 :]
        return MPoly(
            self.field, nv, {e[:i] + e[i + 1 :]: c for e, c in self.terms.items()}
        )

    def with_vars(self, new_vars):
        """Reinterpret in another variable list (superset, any order)."""
        new_vars = tuple(new_vars)
        idx = []
        for v in self.vars:
            if self.degree_in(v) > 0 and v not in new_vars:
                raise ValueError("variable %s not in target ring" % v)
        pos = {v: i for i, v in enumerate(new_vars)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, v in enumerate(self.vars):
                if e[i]:
                    ne[pos[v]] = e[i]
            out[tuple(ne)] = c
        return MPoly(self.field, new_vars, out)

    # -- univariate views -----------------------------------------------

    def as_coeff_list(self, var):
        """Coefficients of powers of var, as MPolys not involving var."""
        K = self.field
        i = self.vars.index(var)
        d = self.degree_in(var)
        if d < 0:
            return []
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1 :]
            buckets[e[i]][ne] = c
        return [MPoly(K, self.vars, b) for b in buckets]

    @staticmethod
    def from_coeff_list(field, vars, var, coeffs):
        vars = tuple(vars)
        i = vars.index(var)
        out = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                if e[i] != 0:
                    raise ValueError("coefficient involves %s" % var)
                ne = e[:i] + (k,) + e[i + 1 :]
                out[ne] = c
        return MPoly(field, vars, out)

    # -- display --------------------------------------------------------

    def to_string(self):
        if not self.terms:
            return "0"
        K = self.field
        parts = []
        for e, c in self.terms_sorted():
            cs = K.to_str(c)
            monos = []
            for i, name in enumerate(self.vars):
                if e[i] == 1:
                    monos.append(name)
                elif e[i] > 1:
                    monos.append("%s^%d" % (name, e[i]))
            if not monos:
                body = cs
            elif cs == "1":
                body = "*".join(monos)
            elif cs == "-1":
                body = "-" + "*".join(monos)
            else:
                if any(op in cs[1:] for op in "+-") or "/" in cs and not _is_rat(cs):
                    cs = "(%s)" % cs
                body = cs + "*" + "*".join(monos)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return "MPoly(%s)" % self.to_string()


def _is_rat(s):
    body = s[1:] if s.startswith("-") else s
    return all(ch.isdigit() or ch == "/" for ch in body)


# -- spec-level operations ---------------------------------------------


def degree_part(P, q, vars):
    """Terms of total degree exactly q in the listed variables."""
    for v in vars:
        if v not in P.vars:
            raise ValueError("unknown variable %s" % v)
    idx = [P.vars.index(v) for v in vars]
    out = {e: c for e, c in P.terms.items() if sum(e[i] for i in idx) == q}
    return MPoly(P.field, P.vars, out)


def homogenize(f, new_var, d):
    """Append new_var and pad every term to total degree d."""
    if new_var in f.vars:
        raise ValueError("homogenization variable already present")
    deg = f.total_degree()
    if d < deg:
        raise ValueError("target degree %d below total degree %d" % (d, deg))
    out = {}
    for e, c in f.terms.items():
        out[e + (d - sum(e),)] = c
    return MPoly(f.field, f.vars + (new_var,), out)


# -- gcd machinery -----------------------------------------------------


def mp_div_exact(A, B):
    """Exact division in the polynomial ring; ArithmeticError if inexact."""
    if B.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    K = A.field
    if not A.terms:
        return A
    rem = A
    out = {}
    eb = max(B.terms, key=_grlex_key)
    cb = B.terms[eb]
    inv_cb = K.invert(cb)
    while rem.terms:
        ea = max(rem.terms, key=_grlex_key)
        ca = rem.terms[ea]
        if any(x < y for x, y in zip(ea, eb)):
            raise ArithmeticError("inexact polynomial division")
        eq = tuple(x - y for x, y in zip(ea, eb))
        cq = K.mul(ca, inv_cb)
        out[eq] = cq
        rem = rem - MPoly(K, A.vars, {eq: cq}) * B
    return MPoly(K, A.vars, out)


def _list_prem(K, vars, a, b):
    """Pseudo-remainder of coefficient lists; returns (rem, scale_steps).

    rem equals lead(b)**steps * a reduced by b; the caller compensates to
    the classical lead**(delta+1) normalization.
    """
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


def _list_norm(lst):
    lst = list(lst)
    while lst and lst[-1].is_zero():
        lst.pop()
    return lst


def _int_prim_scale(polys):
    """Rescale a coefficient list by one rational so that, over Q, all
    coefficients become integers with overall content 1.  Identity for
    other coefficient fields; the scalar never changes a gcd."""
    num = 0
    den = 1
    for p in polys:
        for c in p.terms.values():
            if not isinstance(c, Fraction):
                return polys
            num = int_gcd(num, c.numerator)
            den = den // int_gcd(den, c.denominator) * c.denominator
    if num == 0:
        return polys
    k = Fraction(den, num)
    if k == 1:
        return polys
    return [p.scale(k) for p in polys]


def mp_gcd(A, B):
    """Gcd in the polynomial ring, normalized to graded-lex leading coeff 1."""
    if A.is_zero():
        return _gl_monic(B)
    if B.is_zero():
        return _gl_monic(A)
    K = A.field
    active = [
        v for v in A.vars if A.degree_in(v) > 0 or B.degree_in(v) > 0
    ]
    if not active:
        return MPoly.one(K, A.vars)
    v = active[0]
    a = _list_norm(A.as_coeff_list(v))
    b = _list_norm(B.as_coeff_list(v))
    ca = _gcd_many(a)
    cb = _gcd_many(b)
    ap = _int_prim_scale([mp_div_exact(c, ca) for c in a])
    bp = _int_prim_scale([mp_div_exact(c, cb) for c in b])
    if len(ap) < len(bp):
        ap, bp = bp, ap
    while bp:
        rem, _ = _list_prem(K, A.vars, ap, bp)
        rem = _list_norm(rem)
        if rem:
            cr = _gcd_many(rem)
            rem = _int_prim_scale([mp_div_exact(c, cr) for c in rem])
        ap, bp = bp, rem
    cont = mp_gcd(ca, cb)
    g = MPoly.from_coeff_list(K, A.vars, v, [c * cont for c in ap])
    return _gl_monic(g)


def _gcd_many(polys):
    g = None
    for p in polys:
        if p.is_zero():
            continue
        g = p if g is None else mp_gcd(g, p)
        if g.total_degree() == 0:
            break
    if g is None:
        return MPoly.zero(polys[0].field, polys[0].vars)
    return _gl_monic(g)


def _gl_monic(P):
    if P.is_zero():
        return P
    lc = P.leading_coeff()
    if P.field.eq(lc, P.field.one):
        return P
    return P.scale(P.field.invert(lc))


def mp_content_in(P, var):
    """Gcd of the coefficients of powers of var."""
    cs = _list_norm(P.as_coeff_list(var))
    if not cs:
        return MPoly.zero(P.field, P.vars)
    return _gcd_many(cs)


def mp_primitive_in(P, var):
    c = mp_content_in(P, var)
    if c.is_zero():
        return P
    return mp_div_exact(P, c)


def mp_sqfree_in(P, var):
    """Squarefree part with respect to var (content removed as well)."""
    g = mp_gcd(P, P.partial(var))
    return mp_div_exact(P, g)


# -- resultants --------------------------------------------------------


def resultant(A, B, var):
    """Resultant of A and B with respect to var, by subresultant PRS.

    Returns (resultant, primitive part): the second component is the
    resultant divided by its content in the remaining variables, with
    graded-lex leading coefficient 1; it is what elimination consumers
    want.  Raises ValueError when neither input involves var.
    """
    if A.is_zero() or B.is_zero():
        raise ValueError("resultant of a zero polynomial")
    da = A.degree_in(var)
    db = B.degree_in(var)
    if da <= 0 and db <= 0:
        raise ValueError("neither input involves %s" % var)
    K = A.field
    vars = A.vars
    sign = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
    if db == 0:
        b0 = B.as_coeff_list(var)
        r = b0[0] ** da
        r = r if sign == 1 else -r
        return r, _gl_monic(mp_primitive_in_or_self(r))
    a = _list_norm(A.as_coeff_list(var))
    b = _list_norm(B.as_coeff_list(var))
    one = MPoly.one(K, vars)
    g = one
    h = one
    while True:
        da = len(a) - 1
        db = len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        rem, steps = _list_prem(K, vars, a, b)
        rem = _list_norm(rem)
        lead_b = b[-1]
        for _ in range(delta + 1 - steps):
            rem = [lead_b * c for c in rem]
        denom = g * h**delta
        a = b
        b = [mp_div_exact(c, denom) for c in rem]
        if not b:
            return MPoly.zero(K, vars), MPoly.zero(K, vars)
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = mp_div_exact(g**delta, h ** (delta - 1))
        if len(b) - 1 == 0:
            break
    da = len(a) - 1
    if da == 0:
        res = b[0]
    else:
        res = mp_div_exact(b[0] ** da, h ** (da - 1))
    if sign == -1:
        res = -res
    return res, _gl_monic(mp_primitive_in_or_self(res))


def mp_primitive_in_or_self(P):
    """Primitive part over the remaining variables: divide by full content."""
    if P.is_zero() or P.total_degree() <= 0:
        return _gl_monic(P)
    for v in P.vars:
        if P.degree_in(v) > 0:
            c = mp_content_in(P, v)
            if c.total_degree() > 0:
                P = mp_div_exact(P, c)
    return P


# -- Newton polygon ----------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower-left boundary of the support of a bivariate germ at 0.

    vertices: hull vertices (i, j), i the first-variable exponent,
    sorted by increasing i.  edges: (slope, lattice_length) pairs with
    slope = delta-i / delta-j, sorted increasing.
    """

    vertices: tuple
    edges: tuple


def newton_polygon(g):
    if g.is_zero():
        raise ValueError("zero germ")
    if len(g.vars) != 2:
        raise ValueError("newton polygon needs exactly two variables")
    if (0, 0) in g.terms:
        raise ValueError("unit germ")
    pts = sorted(set(g.terms))
    # lower-left hull: sort by (i, j); keep the chain that turns left viewed
    # from below, scanning by increasing i with minimal j per column
    best = {}
    for i, j in pts:
        if i not in best or j < best[i]:
            best[i] = j
    cols = sorted(best.items())
    hull = []
    for p in cols:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    # drop trailing vertices that do not face the origin: keep the chain
    # only while j strictly decreases then strictly increases is fine --
    # the lower hull of the columns is exactly what we built
    verts = tuple(hull)
    edges = []
    for (i1, j1), (i2, j2) in zip(verts, verts[1:]):
        di = i2 - i1
        dj = j2 - j1
        length = int_gcd(abs(di), abs(dj))
        edges.append((Fraction(di, dj) if dj else None, length))
    edges = [e for e in edges if e[0] is not None]
    edges.sort(key=lambda e: e[0])
    return NewtonPolygon(vertices=verts, edges=tuple(edges))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
