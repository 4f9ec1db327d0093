"""Built-in example families.

Each entry is a three-variable polynomial over the rationals, plane
variables first and the deformation parameter last.  They cover the
qualitatively different ways a constant-degree deformation can move
critical points: none escaping, escaping with bounded values, escaping
values, and a mixture of all three on a single irreducible critical
component.
"""

from fractions import Fraction

from .fields import QQ
from .mpoly import MPoly

_VARS = ("x", "y", "s")


def _fam(terms):
    return MPoly(QQ, _VARS, {e: Fraction(c) for e, c in terms.items()})


def _a_family(k):
    # y^(k+1) + x^k + s x^(k+1): the escaping critical point carries
    # an A_(k-1) tail whose value grows like s^-k
    return _fam({(0, k + 1, 0): 1, (k, 0, 0): 1, (k + 1, 0, 1): 1})


_FAMILIES = {
    "broughton-y3": _fam({(2, 1, 0): 1, (1, 0, 0): 1, (0, 3, 1): 1}),
    "broughton-y": _fam({(2, 1, 0): 1, (1, 0, 0): 1, (0, 1, 1): 1}),
    "staircase": _fam({(2, 1, 0): 1, (1, 0, 0): 1, (0, 2, 1): 1}),
    "a2": _a_family(2),
    "a3": _a_family(3),
    "a4": _a_family(4),
    "a5": _a_family(5),
    "mixed": _fam({(1, 4, 0): 1, (2, 2, 0): 1, (0, 1, 0): 1, (5, 0, 1): 1}),
}

_NOTES = {
    "broughton-y3": "x^2 y + x + s y^3, one bounded escaping value",
    "broughton-y": "x^2 y + x + s y, singular deformation space",
    "staircase": "x^2 y + x + s y^2, singular deformation space",
    "a2": "y^3 + x^2 + s x^3, value escaping at a double point",
    "a3": "y^4 + x^3 + s x^4, value escaping at a triple point",
    "a4": "y^5 + x^4 + s x^5, value escaping at a quadruple point",
    "a5": "y^6 + x^5 + s x^6, value escaping at a quintuple point",
    "mixed": "x y^4 + x^2 y^2 + y + s x^5, all three branch types at once",
}


def corpus_names():
    return tuple(sorted(_FAMILIES))


def corpus_family(name):
    if name not in _FAMILIES:
        raise ValueError("unknown corpus family: %s" % name)
    return _FAMILIES[name]


def corpus_note(name):
    if name not in _NOTES:
        raise ValueError("unknown corpus family: %s" % name)
    return _NOTES[name]
