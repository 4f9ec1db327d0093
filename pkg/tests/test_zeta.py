"""Zeta layer checked at eigenvalue level.

The germ zeta functions are compared against an independent eigenvalue
enumeration: a Groebner routine produces the monomial basis of the
local algebra of each weighted homogeneous germ, the weighted degrees
of the basis give the monodromy eigenvalue phases, and that multiset
must agree with the phases encoded by the cyclotomic exponent map.
The global assemblies are pinned on the example families and re-checked
through their own degree and product identities.
"""

import random
from collections import Counter
from fractions import Fraction

import pytest
import sympy

from polydeform.atinfty import invariants
from polydeform.corpus import corpus_family
from polydeform.fields import QQ
from polydeform.mpoly import MPoly
from polydeform.zeta import (
    ZETA_ONE,
    ZetaFunction,
    boundary_pair_zeta,
    load_zeta_table,
    quasihomogeneous_zeta,
    zeta_arith,
    zeta_aty,
    zeta_consistency,
    zeta_from_text,
    zeta_gen,
    zeta_split,
    zeta_text,
)

Z = ZetaFunction
XYS = ("x", "y", "s")


def P(**monomials):
    terms = {}
    for key, coeff in monomials.items():
        e = [0, 0, 0]
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
            e[XYS.index(v)] += int(digits) if digits else 1
        terms[tuple(e)] = Fraction(coeff)
    return MPoly(QQ, XYS, terms)


# germ exponent supports and their normalized weights
GERMS = {
    "A_1": (((2, 0), (0, 2)), (Fraction(1, 2), Fraction(1, 2))),
    "A_2": (((3, 0), (0, 2)), (Fraction(1, 3), Fraction(1, 2))),
    "A_3": (((4, 0), (0, 2)), (Fraction(1, 4), Fraction(1, 2))),
    "D_5": (((4, 0), (1, 2)), (Fraction(1, 4), Fraction(3, 8))),
    "D_6": (((5, 0), (1, 2)), (Fraction(1, 5), Fraction(2, 5))),
    "D_8": (((7, 0), (1, 2)), (Fraction(1, 7), Fraction(3, 7))),
    "E_8": (((3, 0), (0, 5)), (Fraction(1, 3), Fraction(1, 5))),
}


def _algebra_phases(exps, weights):
    """Eigenvalue phases of the germ monodromy, enumerated through the
    monomial basis of the local algebra."""
    u, v = sympy.symbols("u v")
    f = sum(u**i * v**j for i, j in exps)
    G = sympy.groebner([f.diff(u), f.diff(v)], u, v, order="grevlex")
    lms = [p.monoms(order="grevlex")[0] for p in G.polys]
    au = min(i for i, j in lms if j == 0)
    bv = min(j for i, j in lms if i == 0)
    wu, wv = weights
    phases = Counter()
    for i in range(au):
        for j in range(bv):
            if any(i >= li and j >= lj for li, lj in lms):
                continue
            phases[((i + 1) * wu + (j + 1) * wv) % 1] += 1
    return phases


def _zeta_phases(z):
    """Phase multiset of det(1 - T h) = z * (1 - T)."""
    det = (z * Z({1: 1})).exponents
    phases = Counter()
    for m, e in det.items():
        for k in range(m):
            phases[Fraction(k, m)] += e
    assert all(c >= 0 for c in phases.values())
    return +phases


@pytest.mark.parametrize("germ", sorted(GERMS))
def test_quasihomogeneous_zeta_matches_eigenvalue_enumeration(germ):
    exps, weights = GERMS[germ]
    assert _zeta_phases(quasihomogeneous_zeta(weights)) == _algebra_phases(
        exps, weights
    )


def test_quasihomogeneous_zeta_values():
    assert quasihomogeneous_zeta(GERMS["A_1"][1]) == ZETA_ONE
    assert quasihomogeneous_zeta(GERMS["A_2"][1]) == Z({6: 1, 3: -1, 2: -1})
    assert quasihomogeneous_zeta(GERMS["A_3"][1]) == Z({4: 1, 2: -1})
    assert quasihomogeneous_zeta(GERMS["D_5"][1]) == Z({8: 1, 4: -1})
    assert quasihomogeneous_zeta(GERMS["D_6"][1]) == Z({5: 1})
    assert quasihomogeneous_zeta(GERMS["D_8"][1]) == Z({7: 1})
    assert quasihomogeneous_zeta(GERMS["E_8"][1]) == Z({15: 1, 5: -1, 3: -1})


def test_quasihomogeneous_zeta_degree_is_mu_minus_one():
    for k in range(1, 9):
        z = quasihomogeneous_zeta((Fraction(1, k + 1), Fraction(1, 2)))
        assert z.degree() == k - 1
    for k in range(4, 10):
        z = quasihomogeneous_zeta((Fraction(1, k - 1), Fraction(k - 2, 2 * (k - 1))))
        assert z.degree() == k - 1


def test_quasihomogeneous_zeta_rejects():
    with pytest.raises(ValueError, match="between 0 and 1"):
        quasihomogeneous_zeta((Fraction(3, 2), Fraction(1, 2)))
    with pytest.raises(ValueError, match="isolated"):
        quasihomogeneous_zeta((Fraction(2, 5), Fraction(1, 2)))
    with pytest.raises(ValueError, match="two weights"):
        quasihomogeneous_zeta((Fraction(1, 2),))


def test_exponent_map_algebra():
    a = Z({1: 2, 3: -1})
    b = Z({3: 1, 5: 4})
    assert (a * b).exponents == {1: 2, 5: 4}
    assert (a / b).exponents == {1: 2, 3: -2, 5: -4}
    assert (a**3).exponents == {1: 6, 3: -3}
    assert a * a.inverse() == ZETA_ONE
    assert a.degree() == -1
    assert (a * b).degree() == a.degree() + b.degree()
    assert ZETA_ONE.is_one() and ZETA_ONE.degree() == 0
    assert Z({2: 0}) == ZETA_ONE
    assert zeta_arith(a, b, "mul") == a * b
    assert zeta_arith(a, b, "div") == a / b
    assert zeta_arith(a, 0, "pow") == ZETA_ONE
    assert zeta_arith(a, -2, "pow") == (a**2).inverse()
    with pytest.raises(ValueError, match="unknown zeta operation"):
        zeta_arith(a, b, "plus")
    with pytest.raises(ValueError, match="positive integer"):
        Z({0: 1})
    with pytest.raises(ValueError, match="integers"):
        Z({2: Fraction(1, 2)})


def test_zeta_text_rendering():
    assert zeta_text(ZETA_ONE) == "1"
    assert zeta_text(Z({2: 1, 3: 1, 1: -2})) == "(1-T^2)(1-T^3)/(1-T)^2"
    assert zeta_text(Z({1: 1, 2: -1, 3: -1})) == "(1-T)/((1-T^2)(1-T^3))"
    assert zeta_text(Z({1: -3})) == "1/(1-T)^3"
    assert zeta_text(Z({4: 1})) == "(1-T^4)"
    assert str(Z({4: 1, 1: 1})) == "(1-T)(1-T^4)"


def test_zeta_parse_examples():
    assert zeta_from_text("(1-T^3)(1-T)^-2") == Z({3: 1, 1: -2})
    assert zeta_from_text("((1-T^3)(1+T))^-1") == Z({1: 1, 2: -1, 3: -1})
    assert zeta_from_text("(1+T)") == Z({2: 1, 1: -1})
    assert zeta_from_text("1") == ZETA_ONE
    assert zeta_from_text("(1-T^2)(1-T^3) / (1-T)^2") == Z({2: 1, 3: 1, 1: -2})
    assert zeta_from_text("(1-T) * (1-T)") == Z({1: 2})
    assert zeta_from_text("(1-T^6)/((1-T^2)(1-T^3))") == Z({6: 1, 2: -1, 3: -1})
    assert zeta_from_text("(1+T^3)^2") == Z({6: 2, 3: -2})


def test_zeta_parse_errors():
    with pytest.raises(ValueError, match="column 2: expected a factor"):
        zeta_from_text("(2-T)")
    with pytest.raises(ValueError, match="expected \\)"):
        zeta_from_text("(1-T")
    with pytest.raises(ValueError, match="column 6"):
        zeta_from_text("(1-T))")
    with pytest.raises(ValueError, match="level must be positive"):
        zeta_from_text("(1-T^0)")
    with pytest.raises(ValueError, match="empty"):
        zeta_from_text("   ")
    with pytest.raises(ValueError, match="expected a number"):
        zeta_from_text("(1-T)^x")


def test_zeta_text_round_trip():
    rng = random.Random(7)
    for _ in range(60):
        z = Z(
            {
                rng.randint(1, 9): rng.randint(-4, 4)
                for _ in range(rng.randint(0, 5))
            }
        )
        assert zeta_from_text(zeta_text(z)) == z


def test_boundary_pair_values():
    assert boundary_pair_zeta("A_2", 2) == Z({3: 1, 2: 1, 1: -2})
    assert boundary_pair_zeta("A_0", 5) == Z({5: 1, 1: -1})
    assert boundary_pair_zeta("smooth", 5) == boundary_pair_zeta("A_0", 5)
    assert boundary_pair_zeta("D_6", 4) == Z({5: 1, 4: 1})
    assert boundary_pair_zeta("D_8", 4) == Z({7: 1, 4: 1})
    for k in range(1, 6):
        assert boundary_pair_zeta("A_%d" % k, 1) == Z({k + 1: 1, 1: -1})


def test_boundary_pair_degree_counts_cycles():
    for tag, mu in (("A_0", 0), ("A_1", 1), ("A_4", 4), ("D_5", 5), ("D_7", 7)):
        for m in (1, 2, 3):
            assert boundary_pair_zeta(tag, m).degree() == mu - 1 + m


def test_boundary_pair_unknown_interior():
    with pytest.raises(ValueError, match=r'"pair E_6 3 :='):
        boundary_pair_zeta("E_6", 3)
    with pytest.raises(ValueError, match=r"unclassified\(7, 4\)"):
        boundary_pair_zeta("unclassified(7, 4)", 2)
    with pytest.raises(ValueError, match="must be positive"):
        boundary_pair_zeta("A_1", 0)


def test_zeta_table_loading():
    table = load_zeta_table(
        "# local overrides\n"
        "\n"
        "pair E_6 3 := (1-T^12)(1-T^4)^-1\n"
        "pair X_9 2 := (1-T^2)^5\n"
    )
    assert table[("E_6", 3)] == Z({12: 1, 4: -1})
    assert table[("X_9", 2)] == Z({2: 5})
    assert boundary_pair_zeta("E_6", 3, table) == table[("E_6", 3)]
    assert boundary_pair_zeta("X_9", 2, table) == table[("X_9", 2)]
    assert boundary_pair_zeta("A_2", 2, table) == Z({3: 1, 2: 1, 1: -2})


def test_zeta_table_errors():
    with pytest.raises(ValueError, match="line 1.*expected"):
        load_zeta_table("pair E_6 3 = (1-T)")
    with pytest.raises(ValueError, match="line 2.*degree"):
        load_zeta_table("# comment\npair A_2 2 := (1-T^5)")
    with pytest.raises(ValueError, match="must be positive"):
        load_zeta_table("pair A_2 0 := (1-T)")
    with pytest.raises(ValueError, match="must be an integer"):
        load_zeta_table("pair A_2 two := (1-T)")
    with pytest.raises(ValueError, match="line 1.*column"):
        load_zeta_table("pair A_2 2 := (1-T^3)(1-")


BROUGHTON3 = corpus_family("broughton-y3")
MIXED = corpus_family("mixed")


def test_zeta_gen_corpus():
    assert zeta_gen(BROUGHTON3) == Z({2: 1, 3: 1, 1: -2})
    for k in range(2, 6):
        z = zeta_gen(corpus_family("a%d" % k))
        assert z == Z({1: k * k - k - 2, k + 1: 1})
        assert z.degree() == k * k - 1
    z = zeta_gen(MIXED)
    assert z == Z({1: 6, 5: 1, 4: 1})
    assert z.degree() == 15


def test_zeta_gen_scope_errors():
    with pytest.raises(ValueError, match="not general at infinity"):
        zeta_gen(corpus_family("broughton-y"))
    with pytest.raises(ValueError, match="not general at infinity"):
        zeta_gen(corpus_family("staircase"))
    with pytest.raises(ValueError, match="not a FISI deformation"):
        zeta_gen(P(x2y2=1, x3=1, sy3=1, sx3=1))


def test_zeta_aty_corpus():
    assert zeta_aty(BROUGHTON3, 0) == Z({1: -3, 2: 1, 4: 1})
    assert zeta_aty(BROUGHTON3, Fraction(1, 3)) == zeta_gen(BROUGHTON3)
    for k in range(2, 6):
        assert zeta_aty(corpus_family("a%d" % k), 0) == Z({1: -2, k + 1: 1})
    assert zeta_aty(MIXED, 0) == Z({1: 4, 7: 1, 4: 1})


def test_zeta_aty_algebraic_value():
    f0 = MIXED.subs({"s": QQ.zero}).drop_var("s")
    [quintic] = [c for c in invariants(f0).atypical_values if c.degree() == 5]
    z = zeta_aty(MIXED, quintic)
    assert z == Z({1: 5, 5: 1, 4: 1})
    assert z.degree() == 14


def test_zeta_split_single_jump():
    sp = zeta_split(BROUGHTON3)
    assert sp.zeta_I == ZETA_ONE
    assert sp.zeta_II == Z({1: 1, 2: -1, 3: -1})
    assert sp.zeta_III == ZETA_ONE
    assert sp.product_II_III == sp.zeta_II
    assert [c.name for c in sp.checks] == ["assembly-agreement", "special-fiber-betti"]
    assert all(c.ok for c in sp.checks)


def test_zeta_split_escape_only():
    for k in (2, 5):
        sp = zeta_split(corpus_family("a%d" % k))
        assert sp.zeta_I == Z({1: -k * (k - 1)})
        assert sp.zeta_II == ZETA_ONE
        assert sp.zeta_III == Z({1: 1, k + 1: -1})
        assert sp.product_II_III == Z({1: 1, k + 1: -1})
        assert all(c.ok for c in sp.checks)


def test_zeta_split_uncovered_jump():
    sp = zeta_split(MIXED)
    assert sp.zeta_I == Z({1: -5})
    assert sp.zeta_II is None
    assert sp.zeta_III is None
    assert sp.product_II_III == Z({1: -2, 4: -1, 5: -1})
    assert [c.name for c in sp.checks] == ["assembly-agreement"]
    assert sp.checks[0].ok


def test_zeta_consistency_corpus():
    rep = zeta_consistency(BROUGHTON3)
    assert rep.ok
    assert [c.name for c in rep.checks] == [
        "generic-degree",
        "assembly-agreement",
        "special-fiber-betti",
        "atypical-degree",
        "escape-count-balance",
        "value-product-exponent",
        "interior-zeta-convention",
    ]
    rep = zeta_consistency(corpus_family("a3"))
    assert rep.ok
    rep = zeta_consistency(MIXED)
    assert rep.ok
    names = [c.name for c in rep.checks]
    assert names.count("atypical-degree") == 2
    assert "special-fiber-betti" not in names


def test_assemblies_are_instance_stable():
    fresh = P(x2y=1, x=1, sy3=1)
    assert zeta_gen(fresh) == zeta_gen(BROUGHTON3)
    assert zeta_aty(fresh, 0) == zeta_aty(BROUGHTON3, 0)
