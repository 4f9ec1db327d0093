"""Command line entry point.

Five commands: analyze (plane polynomial invariants at infinity),
deform (family discriminant, splits and exchange), zeta (parameter
monodromy assemblies), verify (cross-module identity audit), corpus
(replay of the built-in examples against pinned values).  Text reports
for reading, JSON with a schema_version for machines; every number is
exact.  Exit codes: 0 success, 1 a verified identity or golden value
failed, 2 input error, 3 out of scope.
"""

import argparse
import json
import sys
from fractions import Fraction

from .atinfty import invariants
from .corpus import corpus_family, corpus_names
from .deform import (
    T_INFINITY,
    classify_branches,
    deformation_report,
    discriminant,
    exchange_check,
    family_checks,
    mu_split,
    semicontinuity_check,
)
from .fields import QQ
from .mpoly import MPoly
from .parser import ParseError, expr_text, expr_vars, parse, to_mpoly
from .zeta import zeta_aty, zeta_consistency, zeta_gen, zeta_text

SCHEMA_VERSION = "1"
PLANE_VARS = ("x", "y")
FAMILY_VARS = ("x", "y", "s")


class ScopeError(Exception):
    """Input outside the two-variable theory."""


def _q_text(q):
    return str(Fraction(q))


def _poly_text(p):
    """Sparse polynomial as explicit-* text the parser accepts back."""
    bits = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            v if k == 1 else "%s^%d" % (v, k) for v, k in zip(p.vars, e) if k
        )
        if not mono:
            piece = _q_text(abs(c))
        elif abs(c) == 1:
            piece = mono
        else:
            piece = "%s*%s" % (_q_text(abs(c)), mono)
        bits.append(("- " if c < 0 else "+ ") + piece)
    if not bits:
        return "0"
    head = bits[0][2:] if bits[0][0] == "+" else "-" + bits[0][2:]
    return " ".join([head] + bits[1:])


def _minpoly_text(mp):
    return _poly_text(MPoly(QQ, ("t",), {(k,): c for k, c in enumerate(mp) if c}))


def _value_text(c):
    if c.is_rational():
        return _q_text(c.rational_value())
    return "root of %s" % _minpoly_text(c.minpoly)


def _value_json(c):
    if c.is_rational():
        return _q_text(c.rational_value())
    return {
        "minpoly": _minpoly_text(c.minpoly),
        "which": list(c.isolating) if c.isolating else None,
    }


def _yes(b):
    return "yes" if b else "no"


_MPOLY_CACHE = {}


def _input_poly(text, varnames, term_limit):
    ast = parse(text)
    extra = sorted(expr_vars(ast) - set(varnames))
    if extra:
        raise ScopeError(
            "variable%s %s take%s the input beyond the plane: the theory "
            "covered here is restricted to polynomials in x and y, with s "
            "as the only deformation parameter"
            % (
                "s" if len(extra) > 1 else "",
                ", ".join(extra),
                "" if len(extra) > 1 else "s",
            )
        )
    canonical = expr_text(ast)
    key = (varnames, canonical)
    if key not in _MPOLY_CACHE:
        _MPOLY_CACHE[key] = to_mpoly(ast, varnames, term_limit)
    return _MPOLY_CACHE[key], canonical


def _base_member(P):
    return P.subs({"s": QQ.zero}).drop_var("s")


def _input_doc(command, expression, ns):
    return {"command": command, "expression": expression, "seed": ns.seed}


# -- analyze ----------------------------------------------------------


def _profile_json(p):
    return {
        "chart": p.point.chart,
        "coordinate": _value_json(p.point.coords[0]),
        "orbit_size": p.point.orbit_size,
        "multiplicity": p.m,
        "mu_infinity": p.mu_inf,
        "mu_generic": p.mu_gen,
        "generic_type": p.generic_ade,
        "jumps": [
            {"value": _value_json(j.value), "lambda": j.lam, "type": j.ade}
            for j in p.jumps
        ],
    }


def _cmd_analyze(ns):
    f, echo = _input_poly(ns.polynomial, PLANE_VARS, ns.timeout_terms)
    r = invariants(f)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": _input_doc("analyze", echo, ns),
        "invariants": {
            "degree": r.degree,
            "mu": r.mu,
            "lambda": r.lam,
            "vanishing_cycles": r.vanishing_cycles,
            "chi_generic_fiber": r.chi_generic_fiber,
            "is_fisi": r.is_fisi,
            "is_gi": r.is_gi,
            "atypical_values": [_value_json(c) for c in r.atypical_values],
            "points_at_infinity": [_profile_json(p) for p in r.profiles],
        },
    }
    lines = [
        "polynomial %s of degree %d" % (echo, r.degree),
        "mu = %d" % r.mu,
        "lambda = %d" % r.lam,
        "vanishing cycles b = %d" % r.vanishing_cycles,
        "chi of the generic fiber = %d" % r.chi_generic_fiber,
        "isolated singularities (FISI): %s; general at infinity: %s"
        % (_yes(r.is_fisi), _yes(r.is_gi)),
        "atypical values: %s"
        % (", ".join(_value_text(c) for c in r.atypical_values) or "none"),
        "points at infinity:",
    ]
    for p in r.profiles:
        lines.append(
            "  chart %s, coordinate %s, orbit size %d: m = %d, mu_inf = %d, "
            "mu_generic = %d, generic type %s"
            % (
                p.point.chart,
                _value_text(p.point.coords[0]),
                p.point.orbit_size,
                p.m,
                p.mu_inf,
                p.mu_gen,
                p.generic_ade,
            )
        )
        for j in p.jumps:
            lines.append(
                "    jump at %s: lambda = %d, type %s"
                % (_value_text(j.value), j.lam, j.ade)
            )
    return 0, lines, doc


# -- deform -----------------------------------------------------------


def _growth_text(exps):
    return ", ".join("zero" if e is None else str(e) for e in exps)


def _limit_json(limit):
    if limit == T_INFINITY:
        return "infinity"
    return [_value_json(c) for c in limit]


def _branch_json(br):
    return {
        "type": br.branch_type,
        "factor": _poly_text(br.factor),
        "growth_orders": [None if e is None else _q_text(e) for e in br.leading_exponents],
        "mu_weight": br.mu_weight,
        "mu_per_point": br.mu_rep,
        "covering": br.covering,
        "i_tau": br.i_tau,
        "i_sigma": br.i_sigma,
        "limit": _limit_json(br.limit),
        "limit_points": [
            {"chart": o.chart, "coordinates": [_value_json(c) for c in o.coords]}
            for o in br.limit_points
        ],
    }


def _exchange_json(ex):
    return {
        "status": ex.status,
        "notes": list(ex.notes),
        "records": [
            {
                "chart": r.point.chart,
                "value": _value_json(r.value),
                "lambda": r.lam,
                "i_tau": r.i_tau,
                "i_sigma": r.i_sigma,
                "tangent": r.tangent,
                "exchanged": r.exchanged,
                "bounded": r.bounded,
            }
            for r in ex.records
        ],
    }


def _deform_lines(echo, rep):
    ck = rep.checks
    lines = [
        "family %s of degree %d" % (echo, ck.degree),
        "checks: FISI %s; deformation generic at infinity %s; exchange "
        "theory applies %s"
        % (_yes(ck.is_fisi_deformation), _yes(ck.yinf_smooth), _yes(ck.gi_sufficient)),
        "discriminant branches:",
    ]
    for br in rep.branches:
        lines.append(
            "  type %s: factor %s; mu weight %d (%d per point, covering %d)"
            % (br.branch_type, _poly_text(br.factor), br.mu_weight, br.mu_rep, br.covering)
        )
        lines.append("    growth orders (%s)" % _growth_text(br.leading_exponents))
        if br.limit == T_INFINITY:
            lines.append("    critical value escapes to infinity")
        else:
            lines.append(
                "    critical value limit %s"
                % ", ".join(_value_text(c) for c in br.limit)
            )
        if br.i_tau is not None:
            lines.append("    i_tau = %d, i_sigma = %d" % (br.i_tau, br.i_sigma))
    if rep.mu_split is None:
        lines.append("mu split: unavailable, the family is not general at infinity")
    else:
        lines.append("mu split: I = %d, II = %d, III = %d" % rep.mu_split)
    lines.append(
        "polar count gamma: base %d, member %d, semicontinuity %s"
        % (rep.gamma0, rep.gamma_s, "holds" if rep.semicontinuity_ok else "FAILS")
    )
    ex = rep.exchange
    lines.append("exchange status: %s" % ex.status)
    for note in ex.notes:
        lines.append("  note: %s" % note)
    for r in ex.records:
        lines.append(
            "  %s point, value %s: lambda = %d, i_tau = %d, i_sigma = %d; "
            "tangent %s, exchanged %s, bounded %s"
            % (
                r.point.chart,
                _value_text(r.value),
                r.lam,
                r.i_tau,
                r.i_sigma,
                _yes(r.tangent),
                _yes(r.exchanged),
                _yes(r.bounded),
            )
        )
    return lines


def _cmd_deform(ns):
    P, echo = _input_poly(ns.family, FAMILY_VARS, ns.timeout_terms)
    rep = deformation_report(P, seed=ns.seed)
    ck = rep.checks
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": _input_doc("deform", echo, ns),
        "deformation": {
            "degree": ck.degree,
            "is_fisi_deformation": ck.is_fisi_deformation,
            "y_smooth": ck.y_smooth,
            "yinf_smooth": ck.yinf_smooth,
            "gi_sufficient": ck.gi_sufficient,
            "branches": [_branch_json(br) for br in rep.branches],
            "mu_split": list(rep.mu_split) if rep.mu_split else None,
            "gamma_base": rep.gamma0,
            "gamma_member": rep.gamma_s,
            "semicontinuity_ok": rep.semicontinuity_ok,
            "exchange": _exchange_json(rep.exchange),
        },
    }
    return 0, _deform_lines(echo, rep), doc


# -- zeta -------------------------------------------------------------


def _zeta_json(z):
    return {
        "text": zeta_text(z),
        "exponents": {str(m): e for m, e in sorted(z.exponents.items())},
        "degree": z.degree(),
    }


def _cmd_zeta(ns):
    P, echo = _input_poly(ns.family, FAMILY_VARS, ns.timeout_terms)
    zg = zeta_gen(P)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": _input_doc("zeta", echo, ns),
        "zeta": {"generic": _zeta_json(zg)},
    }
    lines = [
        "zeta_gen = %s" % zeta_text(zg),
        "degree %d" % zg.degree(),
    ]
    if ns.at is not None:
        try:
            t0 = Fraction(ns.at)
        except (ValueError, ZeroDivisionError):
            raise ValueError(
                "the value for --at must be rational, like 0 or -27/4"
            ) from None
        za = zeta_aty(P, t0)
        doc["zeta"]["at"] = {"value": _q_text(t0), **_zeta_json(za)}
        lines.append("zeta_aty at %s = %s" % (_q_text(t0), zeta_text(za)))
        lines.append("degree %d" % za.degree())
    return 0, lines, doc


# -- verify -----------------------------------------------------------


def _row(name, ok, detail):
    return {"name": name, "status": "pass" if ok else "fail", "detail": detail}


def _skip(name, detail):
    return {"name": name, "status": "skip", "detail": detail}


def _cmd_verify(ns):
    P, echo = _input_poly(ns.family, FAMILY_VARS, ns.timeout_terms)
    checks = family_checks(P)
    if not checks.is_fisi_deformation:
        raise ValueError(
            "not a FISI deformation: a member has non-isolated critical points"
        )
    inv = invariants(_base_member(P))
    g0, gs, sok = semicontinuity_check(P, seed=ns.seed)
    rows = [
        _row(
            "gamma-semicontinuity",
            sok,
            "member polar count %d >= base polar count %d" % (gs, g0),
        ),
        _row(
            "base-polar-count",
            inv.mu + inv.lam == g0,
            "mu + lambda = %d, polar count = %d" % (inv.mu + inv.lam, g0),
        ),
        _row(
            "cycle-count-routes",
            True,
            "b = %d by boundary data and by the degree formula" % inv.vanishing_cycles,
        ),
    ]
    ex = exchange_check(P)
    if ex.status == "ok":
        rows.append(
            _row(
                "value-exchange",
                all(r.exchanged and r.bounded for r in ex.records),
                "%d boundary record%s with lambda = i_tau < i_sigma"
                % (len(ex.records), "" if len(ex.records) == 1 else "s"),
            )
        )
    else:
        rows.append(_skip("value-exchange", "; ".join(ex.notes) or ex.status))
    if checks.yinf_smooth:
        ms = mu_split(P)
        rows.append(
            _row(
                "member-milnor-total",
                sum(ms) == gs,
                "mu I+II+III = %d, member polar count = %d" % (sum(ms), gs),
            )
        )
        for c in zeta_consistency(P).checks:
            rows.append(_row(c.name, c.ok, c.detail))
    else:
        rows.append(
            _skip("zeta-identities", "needs a deformation generic at infinity")
        )
    failed = sum(1 for r in rows if r["status"] == "fail")
    skipped = sum(1 for r in rows if r["status"] == "skip")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": _input_doc("verify", echo, ns),
        "verification": rows,
    }
    lines = ["%s %s: %s" % (r["status"].upper(), r["name"], r["detail"]) for r in rows]
    lines.append(
        "verified: %d passed, %d failed, %d skipped"
        % (len(rows) - failed - skipped, failed, skipped)
    )
    return (1 if failed else 0), lines, doc


# -- corpus -----------------------------------------------------------


def _a_family_golden(k):
    alpha = Fraction((-k) ** k, (k + 1) ** (k + 1))
    sign = " - " if alpha > 0 else " + "
    zeta = "" if k == 2 else "(1-T)^%d" % (k * k - k - 2)
    return {
        "headline": "mu split (%d, 0, %d)" % (k * (k - 1), k),
        "base_mu_lambda": (k * (k - 1), 0),
        "gamma": (k * (k - 1), k * k),
        "branch_types": ("I", "III"),
        "delta_factors": ("t", "s^%d*t%s%s" % (k, sign, abs(alpha))),
        "mu_split": (k * (k - 1), 0, k),
        "exchange_status": "ok",
        "zeta_gen": zeta + "(1-T^%d)" % (k + 1),
    }


_GOLDEN = {
    "broughton-y3": {
        "headline": "mu+lambda exchange 4 + 0 -> 0 + 1",
        "base_mu_lambda": (0, 1),
        "gamma": (1, 4),
        "branch_types": ("II",),
        "delta_factors": ("s + 27/4*t^4",),
        "mu_split": (0, 4, 0),
        "exchange_status": "ok",
        "zeta_gen": "(1-T^2)(1-T^3)/(1-T)^2",
    },
    "broughton-y": {
        "headline": "gamma staircase row 2 + 0 -> 0 + 1",
        "base_mu_lambda": (0, 1),
        "gamma": (1, 2),
        "delta_factors": ("s + t^2",),
        "exchange_status": "precondition_failed",
    },
    "staircase": {
        "headline": "gamma staircase row 3 + 0 -> 0 + 1",
        "base_mu_lambda": (0, 1),
        "gamma": (1, 3),
        "delta_factors": ("s - 64/27*t^3",),
        "exchange_status": "precondition_failed",
    },
    "a2": _a_family_golden(2),
    "a3": _a_family_golden(3),
    "a4": _a_family_golden(4),
    "a5": _a_family_golden(5),
    "mixed": {
        "headline": "mu split (5, 7, 4); counts 16 + 0 against 5 + 2",
        "base_mu_lambda": (5, 2),
        "gamma": (7, 16),
        "branch_types": ("I", "II", "III"),
        "mu_split": (5, 7, 4),
        "exchange_status": "ok",
        "zeta_gen": "(1-T)^6(1-T^4)(1-T^5)",
        "zeta_aty_0": "(1-T)^4(1-T^4)(1-T^7)",
    },
}


def _corpus_actual(P, key):
    if key == "base_mu_lambda":
        inv = invariants(_base_member(P))
        return (inv.mu, inv.lam)
    if key == "gamma":
        g0, gs, _ = semicontinuity_check(P)
        return (g0, gs)
    if key == "branch_types":
        return tuple(br.branch_type for br in classify_branches(P))
    if key == "delta_factors":
        return tuple(_poly_text(f) for f in discriminant(P))
    if key == "mu_split":
        return mu_split(P)
    if key == "exchange_status":
        return exchange_check(P).status
    if key == "zeta_gen":
        return zeta_text(zeta_gen(P))
    if key == "zeta_aty_0":
        return zeta_text(zeta_aty(P, 0))
    raise KeyError(key)


def _cmd_corpus(ns):
    names = [ns.name] if ns.name else list(corpus_names())
    rows = []
    lines = []
    code = 0
    for name in names:
        P = corpus_family(name)
        golden = _GOLDEN[name]
        diff = None
        for key, expected in golden.items():
            if key == "headline":
                continue
            got = _corpus_actual(P, key)
            if got != expected:
                diff = (key, expected, got)
                break
        if diff is None:
            rows.append({"name": name, "status": "pass", "headline": golden["headline"]})
            lines.append("PASS %s: %s" % (name, golden["headline"]))
        else:
            key, expected, got = diff
            rows.append(
                {
                    "name": name,
                    "status": "fail",
                    "field": key,
                    "expected": str(expected),
                    "got": str(got),
                }
            )
            lines.append(
                "FAIL %s: %s expected %s, got %s" % (name, key, expected, got)
            )
            code = 1
            break
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {"command": "corpus", "expression": ns.name, "seed": ns.seed},
        "corpus": rows,
    }
    return code, lines, doc


# -- driver -----------------------------------------------------------


def _uint(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    common.add_argument("--seed", type=_uint, default=0, help="sampling seed")
    common.add_argument(
        "--timeout-terms",
        type=_uint,
        default=10**6,
        dest="timeout_terms",
        help="expansion guard on stored polynomial terms",
    )
    ap = argparse.ArgumentParser(
        prog="polydeform",
        description="Exact invariants of plane polynomial deformations: "
        "discriminants, singularity exchange at infinity, monodromy zeta "
        "functions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="invariants of one polynomial")
    p.add_argument("polynomial")
    p = sub.add_parser("deform", parents=[common], help="discriminant analysis of a family")
    p.add_argument("family")
    p = sub.add_parser("zeta", parents=[common], help="parameter monodromy zeta")
    p.add_argument("family")
    p.add_argument("--at", default=None, metavar="T0", help="also the zeta over one value")
    p = sub.add_parser("verify", parents=[common], help="cross-module identity audit")
    p.add_argument("family")
    p = sub.add_parser("corpus", parents=[common], help="replay the built-in examples")
    p.add_argument("name", nargs="?", default=None)
    return ap


_HANDLERS = {
    "analyze": _cmd_analyze,
    "deform": _cmd_deform,
    "zeta": _cmd_zeta,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
}


def run(argv):
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 2
    try:
        code, lines, doc = _HANDLERS[ns.command](ns)
    except ScopeError as exc:
        print("out of scope: %s" % exc, file=sys.stderr)
        return 3
    except ParseError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    if ns.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(lines))
    return code


def main(argv=None):
    return run(sys.argv[1:] if argv is None else argv)
