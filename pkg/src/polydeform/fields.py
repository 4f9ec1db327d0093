"""Coefficient fields: rationals, algebraic extensions, rational functions.

Every field object exposes the same small protocol — ``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul``, ``div``, ``invert``, ``is_zero``,
``eq``, ``from_int``, ``from_q``, ``sort_key``, ``to_str`` — and its
elements are immutable and hashable.  Polynomial code in `upoly` is
written against this protocol only, so towers compose freely:
``FractionField(ExtensionField(QQ, m, "a"), "t")`` is a perfectly good
coefficient field.

`ProvisionalExtension` supports working modulo a squarefree but possibly
reducible modulus; an ambiguous zero test or a failed inversion raises
`SplitRequired`, and `d5_run` restarts the computation on each factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .upoly import (
    up_add,
    up_deg,
    up_div_exact,
    up_eval,
    up_gcd,
    up_monic,
    up_mul,
    up_norm,
    up_rem,
    up_scale,
    up_sub,
    up_xgcd,
)


class RationalField:
    """The rationals, with `fractions.Fraction` elements."""

    is_rationals = True

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        return Fraction(n)

    def from_q(self, q):
        return Fraction(q)

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class ModField:
    """Prime field Z/p, used only inside factorization routines."""

    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero mod %d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def from_int(self, n):
        return n % self.p

    def from_q(self, q):
        return self.div(q.numerator % self.p, q.denominator % self.p)

    def sort_key(self, a):
        return a % self.p

    def to_str(self, a):
        return str(a % self.p)

    def __repr__(self):
        return "GF(%d)" % self.p


@dataclass(frozen=True)
class FElem:
    """Reduced fraction of polynomials: den monic, gcd(num, den) = 1."""

    num: tuple
    den: tuple


class FractionField:
    """Rational functions base(var), elements `FElem` in canonical form."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self._one_poly = (base.one,)
        self.zero = FElem((), self._one_poly)
        self.one = FElem(self._one_poly, self._one_poly)

    def make(self, num, den):
        """Canonical element from a numerator/denominator pair of UPolys."""
        K = self.base
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return FElem((), self._one_poly)
        g = up_gcd(K, num, den)
        if up_deg(g) >= 1:
            num = up_div_exact(K, num, g)
            den = up_div_exact(K, den, g)
        lc = den[-1]
        if not K.eq(lc, K.one):
            inv = K.invert(lc)
            num = up_scale(K, num, inv)
            den = up_scale(K, den, inv)
        return FElem(num, den)

    def from_poly(self, num):
        return self.make(num, self._one_poly)

    def gen(self):
        return FElem((self.base.zero, self.base.one), self._one_poly)

    def add(self, a, b):
        K = self.base
        if a.den == b.den:
            return self.make(up_add(K, a.num, b.num), a.den)
        num = up_add(K, up_mul(K, a.num, b.den), up_mul(K, b.num, a.den))
        return self.make(num, up_mul(K, a.den, b.den))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return FElem(tuple(self.base.neg(c) for c in a.num), a.den)

    def mul(self, a, b):
        K = self.base
        return self.make(up_mul(K, a.num, b.num), up_mul(K, a.den, b.den))

    def invert(self, a):
        if not a.num:
            raise ZeroDivisionError("division by zero")
        return self.make(a.den, a.num)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a):
        return not a.num

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        if n == 0:
            return self.zero
        return FElem((self.base.from_int(n),), self._one_poly)

    def from_q(self, q):
        if not q:
            return self.zero
        return FElem((self.base.from_q(q),), self._one_poly)

    def sort_key(self, a):
        kb = self.base.sort_key
        return (
            len(a.num),
            len(a.den),
            tuple(kb(c) for c in a.num),
            tuple(kb(c) for c in a.den),
        )

    def to_str(self, a):
        num = format_upoly(self.base, a.num, self.var)
        if up_deg(a.den) < 1 and a.den and self.base.eq(a.den[0], self.base.one):
            return num
        den = format_upoly(self.base, a.den, self.var)
        return "(%s)/(%s)" % (num, den)

    def __repr__(self):
        return "%r(%s)" % (self.base, self.var)


class ExtensionField:
    """base[x]/(modulus) for a monic irreducible modulus of degree >= 2.

    Elements are reduced residues stored as coefficient tuples (degree
    below the modulus degree, trailing zeros stripped).
    """

    def __init__(self, base, modulus, gen):
        if up_deg(modulus) < 2:
            raise ValueError("extension modulus must have degree >= 2")
        if not base.eq(modulus[-1], base.one):
            raise ValueError("extension modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.gen = gen
        self.zero = ()
        self.one = (base.one,)

    def degree(self):
        return up_deg(self.modulus)

    def gen_elem(self):
        return (self.base.zero, self.base.one)

    def reduce(self, rep):
        return up_rem(self.base, up_norm(self.base, rep), self.modulus)

    def add(self, a, b):
        return up_add(self.base, a, b)

    def sub(self, a, b):
        return up_sub(self.base, a, b)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        return up_rem(self.base, up_mul(self.base, a, b), self.modulus)

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        d, u, _ = up_xgcd(self.base, a, self.modulus)
        if up_deg(d) != 0:
            raise ArithmeticError(
                "non-invertible element: modulus is reducible (internal inconsistency)"
            )
        return up_rem(self.base, u, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a):
        return not a

    def eq(self, a, b):
        return a == b

    def from_int(self, n):
        c = self.base.from_int(n)
        return () if self.base.is_zero(c) else (c,)

    def from_q(self, q):
        c = self.base.from_q(q)
        return () if self.base.is_zero(c) else (c,)

    def lift(self, c):
        """Embed a base-field element."""
        return () if self.base.is_zero(c) else (c,)

    def sort_key(self, a):
        kb = self.base.sort_key
        return (len(a), tuple(kb(c) for c in a))

    def to_str(self, a):
        return format_upoly(self.base, a, self.gen)

    def __repr__(self):
        return "%r[%s]/(%s)" % (
            self.base,
            self.gen,
            format_upoly(self.base, self.modulus, self.gen),
        )


class SplitRequired(Exception):
    """A provisional modulus was caught being reducible; carry the split."""

    def __init__(self, field, factors):
        self.field = field
        self.factors = factors
        super().__init__(
            "provisional modulus splits into %d factors" % len(factors)
        )


class ProvisionalExtension:
    """base[x]/(modulus) for a squarefree, not necessarily irreducible modulus.

    Behaves like `ExtensionField` until an operation needs to decide
    something the reducible modulus cannot decide (ambiguous zero test,
    inversion of a zero divisor); then it raises `SplitRequired` with the
    factors, and `d5_run` reruns the computation over each factor.
    """

    def __init__(self, base, modulus, gen):
        if up_deg(modulus) < 1:
            raise ValueError("provisional modulus must have degree >= 1")
        self.base = base
        self.modulus = up_monic(base, modulus)
        self.gen = gen
        self.zero = ()
        self.one = (base.one,)

    def degree(self):
        return up_deg(self.modulus)

    def gen_elem(self):
        return up_rem(self.base, (self.base.zero, self.base.one), self.modulus)

    def add(self, a, b):
        return up_add(self.base, a, b)

    def sub(self, a, b):
        return up_sub(self.base, a, b)

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        return up_rem(self.base, up_mul(self.base, a, b), self.modulus)

    def _split(self, g):
        cof = up_div_exact(self.base, self.modulus, g)
        raise SplitRequired(self, [g, cof])

    def invert(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        d, u, _ = up_xgcd(self.base, a, self.modulus)
        if up_deg(d) == 0:
            return up_rem(self.base, u, self.modulus)
        self._split(d)

    def div(self, a, b):
        return self.mul(a, self.invert(b))

    def is_zero(self, a):
        if not a:
            return True
        g = up_gcd(self.base, a, self.modulus)
        if up_deg(g) == 0:
            return False
        if up_deg(g) == up_deg(self.modulus):
            return True
        self._split(g)

    def eq(self, a, b):
        return self.is_zero(up_sub(self.base, a, b))

    def from_int(self, n):
        c = self.base.from_int(n)
        rep = () if self.base.is_zero(c) else (c,)
        return up_rem(self.base, rep, self.modulus)

    def from_q(self, q):
        c = self.base.from_q(q)
        rep = () if self.base.is_zero(c) else (c,)
        return up_rem(self.base, rep, self.modulus)

    def lift(self, c):
        return () if self.base.is_zero(c) else (c,)

    def sort_key(self, a):
        kb = self.base.sort_key
        return (len(a), tuple(kb(c) for c in a))

    def to_str(self, a):
        return format_upoly(self.base, a, self.gen)

    def __repr__(self):
        return "%r[%s]/(%s ~provisional)" % (
            self.base,
            self.gen,
            format_upoly(self.base, self.modulus, self.gen),
        )


def d5_run(field, fn):
    """Evaluate fn(field) over a provisional extension, splitting as needed.

    Returns a list of (modulus factor, result) pairs covering the
    squarefree modulus of `field`.  `fn` must compute from scratch given
    the field, since a split discards partial work.
    """
    try:
        return [(field.modulus, fn(field))]
    except SplitRequired as e:
        if e.field.modulus != field.modulus:
            raise
        out = []
        for m in e.factors:
            if up_deg(m) < 1:
                continue
            sub = ProvisionalExtension(field.base, m, field.gen)
            out.extend(d5_run(sub, fn))
        return out


class LoggingField:
    """Pass-through field wrapper recording zero-test and inversion traffic.

    Every element decided nonzero and every inverted element is logged;
    with coefficients in a rational-function field these logs are exactly
    where specialization can change the course of a computation.
    """

    def __init__(self, inner):
        self.inner = inner
        self.zero = inner.zero
        self.one = inner.one
        self.nonzero_log = []
        self.invert_log = []

    def add(self, a, b):
        return self.inner.add(a, b)

    def sub(self, a, b):
        return self.inner.sub(a, b)

    def neg(self, a):
        return self.inner.neg(a)

    def mul(self, a, b):
        return self.inner.mul(a, b)

    def invert(self, a):
        self.invert_log.append(a)
        return self.inner.invert(a)

    def div(self, a, b):
        self.invert_log.append(b)
        return self.inner.div(a, b)

    def is_zero(self, a):
        z = self.inner.is_zero(a)
        if not z:
            self.nonzero_log.append(a)
        return z

    def eq(self, a, b):
        return self.inner.eq(a, b)

    def from_int(self, n):
        return self.inner.from_int(n)

    def from_q(self, q):
        return self.inner.from_q(q)

    def sort_key(self, a):
        return self.inner.sort_key(a)

    def to_str(self, a):
        return self.inner.to_str(a)

    def __repr__(self):
        return "Logging(%r)" % (self.inner,)


def format_upoly(K, f, var):
    """Human-readable polynomial string, highest degree first."""
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if K.is_zero(c):
            continue
        cs = K.to_str(c)
        if i == 0:
            parts.append(cs)
            continue
        xs = var if i == 1 else "%s^%d" % (var, i)
        if cs == "1":
            parts.append(xs)
        elif cs == "-1":
            parts.append("-" + xs)
        elif any(op in cs[1:] for op in "+-") or "/" in cs:
            parts.append("(%s)*%s" % (cs, xs))
        else:
            parts.append("%s*%s" % (cs, xs))
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def extension_arith(field, a, b, op):
    """Apply a field operation designated by symbol: one of + - * / (÷ ×)."""
    if op in ("+",):
        return field.add(a, b)
    if op in ("-", "−"):
        return field.sub(a, b)
    if op in ("*", "×"):
        return field.mul(a, b)
    if op in ("/", "÷"):
        return field.div(a, b)
    raise ValueError("unknown operation %r" % (op,))


class SpecializationPole(ArithmeticError):
    """A coefficient denominator vanishes at the substitution point."""

    def __init__(self, denominator, message):
        self.denominator = denominator
        super().__init__(message)


def specialize_elem(F, c, t0):
    """Evaluate one element of FractionField F at t0, landing in F.base.

    A vanishing denominator raises `SpecializationPole` carrying the
    offending denominator; its roots are exactly the points where the
    specialization degenerates.
    """
    K = F.base
    dv = up_eval(K, c.den, t0)
    if K.is_zero(dv):
        raise SpecializationPole(
            c.den,
            "denominator %s vanishes at substitution point"
            % format_upoly(K, c.den, F.var),
        )
    return K.div(up_eval(K, c.num, t0), dv)


def specialize(F, f, t0):
    """Evaluate the coefficients of a UPoly over FractionField F at t0.

    t0 must be an element of F.base; the result is a UPoly over F.base.
    """
    return up_norm(F.base, [specialize_elem(F, c, t0) for c in f])
