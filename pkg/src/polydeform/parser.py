"""Polynomial expression parsing for the command line.

The grammar is strict on purpose: multiplication always takes an
explicit *, exponents are nonnegative integers, variables are single
letters, and t is reserved for the fiber value.  Errors carry 1-based
column positions.  ASTs are plain tuples so they compare and print
deterministically: ("const", Fraction), ("var", name), ("add"|"sub"|
"mul", left, right), ("pow", base, exponent), ("neg", node).
"""

from fractions import Fraction

from .fields import QQ
from .mpoly import MPoly

VALUE_VAR = "t"


class ParseError(ValueError):
    """Syntax defect in an input expression, located by column."""

    def __init__(self, column, message):
        super().__init__("column %d: %s" % (column, message))
        self.column = column


def parse(text):
    """Expression text to AST under the grammar
    expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    factor := base ('^' uint)?; base := rational | var | '(' expr ')'
    | '-' base."""
    pos = 0
    n = len(text)

    def fail(msg, at=None):
        raise ParseError((pos if at is None else at) + 1, msg)

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

    def base():
        nonlocal pos
        skip()
        if pos >= n:
            fail("expected a value")
        ch = text[pos]
        if ch == "-":
            pos += 1
            return ("neg", base())
        if ch == "(":
            pos += 1
            node = expr()
            skip()
            if pos >= n or text[pos] != ")":
                fail("expected )")
            pos += 1
            return node
        if ch.isdigit():
            num = uint()
            skip()
            if pos < n and text[pos] == "/":
                mark = pos
                pos += 1
                skip()
                den = uint()
                if den == 0:
                    fail("division by zero", mark)
                return ("const", Fraction(num, den))
            return ("const", Fraction(num))
        if ch.isalpha():
            if ch == VALUE_VAR:
                fail("the variable t is reserved for the fiber value")
            pos += 1
            return ("var", ch)
        fail("expected a value")

    def factor():
        nonlocal pos
        node = base()
        skip()
        if pos < n and text[pos] == "^":
            pos += 1
            skip()
            if pos < n and text[pos] == "-":
                fail("negative exponents are not polynomial")
            node = ("pow", node, uint())
        return node

    def term():
        nonlocal pos
        node = factor()
        while True:
            skip()
            if pos < n and text[pos] == "*":
                pos += 1
                node = ("mul", node, factor())
            else:
                return node

    def expr():
        nonlocal pos
        node = term()
        while True:
            skip()
            if pos < n and text[pos] in "+-":
                op = "add" if text[pos] == "+" else "sub"
                pos += 1
                node = (op, node, term())
            else:
                return node

    skip()
    if pos >= n:
        raise ParseError(1, "empty expression")
    node = expr()
    skip()
    if pos < n:
        fail("expected an operator")
    return node


def expr_vars(node):
    """All variable names in the AST."""
    kind = node[0]
    if kind == "var":
        return {node[1]}
    if kind == "const":
        return set()
    if kind in ("neg", "pow"):
        return expr_vars(node[1])
    return expr_vars(node[1]) | expr_vars(node[2])


def _as_base(node):
    if node[0] in ("var", "const"):
        return _render(node)
    if node[0] == "neg":
        return "-" + _as_base(node[1])
    return "(" + _render(node) + ")"


def _as_factor(node):
    if node[0] == "pow":
        return _as_base(node[1]) + "^%d" % node[2]
    return _as_base(node)


def _as_term(node):
    if node[0] == "mul":
        return _as_term(node[1]) + "*" + _as_factor(node[2])
    return _as_factor(node)


def _render(node):
    if node[0] == "var":
        return node[1]
    if node[0] == "const":
        return str(node[1])
    if node[0] in ("add", "sub"):
        op = " + " if node[0] == "add" else " - "
        return _render(node[1]) + op + _as_term(node[2])
    return _as_term(node)


def expr_text(node):
    """Canonical rendering; parsing it back yields the same AST."""
    return _render(node)


def to_mpoly(node, varnames, term_limit=10**6):
    """Evaluate the AST into an exact sparse polynomial over Q.

    term_limit bounds the stored terms of every intermediate result, so
    sparse high-degree input stays cheap while expansion bombs fail
    early instead of filling memory.
    """
    width = len(varnames)
    zero_e = (0,) * width

    def const(c):
        c = Fraction(c)
        return MPoly(QQ, varnames, {zero_e: c} if c else {})

    def guard(p):
        if len(p.terms) > term_limit:
            raise ValueError(
                "the expression expands past the %d-term guard" % term_limit
            )
        return p

    def power(b, k):
        out = const(1)
        acc = b
        while k:
            if k & 1:
                out = guard(out * acc)
            k >>= 1
            if k:
                acc = guard(acc * acc)
        return out

    def ev(nd):
        kind = nd[0]
        if kind == "const":
            return const(nd[1])
        if kind == "var":
            e = [0] * width
            e[varnames.index(nd[1])] = 1
            return MPoly(QQ, varnames, {tuple(e): Fraction(1)})
        if kind == "neg":
            return -ev(nd[1])
        if kind == "pow":
            return power(ev(nd[1]), nd[2])
        a, b = ev(nd[1]), ev(nd[2])
        if kind == "add":
            return guard(a + b)
        if kind == "sub":
            return guard(a - b)
        return guard(a * b)

    return ev(node)
