from fractions import Fraction

from polydeform.fields import QQ
from polydeform.mpoly import MPoly
from polydeform import deform as D

VARS = ("x", "y", "s")


def P(**mono):
    terms = {}
    for key, c in mono.items():
        e = [0, 0, 0]
        i = 0
        while i < len(key):
            v = key[i]
            i += 1
            n = ""
            while i < len(key) and key[i].isdigit():
                n += key[i]
                i += 1
            e[VARS.index(v)] += int(n) if n else 1
        terms[tuple(e)] = QQ.add(terms.get(tuple(e), QQ.zero), Fraction(c))
    return MPoly(QQ, VARS, terms)


def show(name, fam):
    print("==", name)
    ch = D.family_checks(fam)
    print("  d =", ch.degree, "W0:", [(o.chart, o.coords[0].minpoly) for o in ch.W0])
    print("  Sigma0:", [(o.chart, o.coords[0].minpoly) for o in ch.Sigma0])
    print("  y_smooth", ch.y_smooth, "yinf", ch.yinf_smooth, "fisi", ch.is_fisi_deformation, "gi", ch.gi_sufficient)
    for dl in D.discriminant(fam):
        print("  delta:", sorted(dl.terms.items()))
    for br in D.classify_branches(fam):
        print("  branch", br.branch_type, "exps", br.leading_exponents,
              "mu", br.mu_weight, "rep", br.mu_rep, "cov", br.covering,
              "itau", br.i_tau, "isig", br.i_sigma)
        print("    limit", br.limit if isinstance(br.limit, str) else [c.minpoly for c in br.limit],
              "pts", [(o.chart, o.coords[0].minpoly) for o in br.limit_points])
    try:
        print("  mu_split", D.mu_split(fam))
    except ValueError as ex:
        print("  mu_split error:", ex)
    ex = D.exchange_check(fam)
    print("  exchange", ex.status, ex.notes)
    for r in ex.records:
        print("    rec lam", r.lam, "itau", r.i_tau, "isig", r.i_sigma,
              "tan", r.tangent, "exch", r.exchanged, "bd", r.bounded)
    print("  semicontinuity", D.semicontinuity_check(fam))


if __name__ == "__main__":
    show("broughton-y3", P(x2y=1, x=1, sy3=1))
    show("broughton-y", P(x2y=1, x=1, sy=1))
    show("staircase-sy2", P(x2y=1, x=1, sy2=1))
    show("yomdin-a2", P(y3=1, x2=1, sx3=1))
    for k in (2, 3):
        terms = {"y%d" % (k + 1): 1, "x%d" % k: 1, ("sx%d" % (k + 1)): 1}
        show("a_%d" % k, P(**terms))
