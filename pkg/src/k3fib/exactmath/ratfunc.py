"""Reduced multivariate rational functions and simultaneous substitution."""

import ast
from fractions import Fraction

from .fields import QQ
from .gcd import poly_cofactors, poly_gcd
from .poly import MultiPoly, NotExactDivision


class SubstitutionError(ZeroDivisionError):
    pass


class MultiRat:
    """num/den with gcd(num, den) = 1 and den having lex-leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, MultiPoly):
            raise TypeError("numerator must be a MultiPoly")
        F = num.field
        if den is None:
            den = MultiPoly.constant(1, F)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.constant(den, F)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = num, MultiPoly.constant(1, F)
        elif reduce:
            _, num, den = poly_cofactors(num, den)
        lc = den.leading_coeff()
        if lc != F.one:
            inv = F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num.trim()
        self.den = den.trim()

    @property
    def field(self):
        return self.num.field

    @classmethod
    def var(cls, name, field=QQ):
        return cls(MultiPoly.variable(name, field))

    @classmethod
    def const(cls, c, field=QQ):
        if isinstance(c, Fraction):
            return cls(MultiPoly.constant(c.numerator, field), MultiPoly.constant(c.denominator, field))
        return cls(MultiPoly.constant(c, field))

    def _lift(self, o):
        if isinstance(o, MultiRat):
            if o.field != self.field:
                raise ValueError("field mismatch")
            return o
        if isinstance(o, MultiPoly):
            return MultiRat(o, reduce=False)
        return MultiRat.const(o, self.field)

    # arithmetic

    def __add__(self, o):
        o = self._lift(o)
        if self.den == o.den:
            return MultiRat(self.num + o.num, self.den)
        if self.den.is_constant() and o.den.is_constant():
            return MultiRat(self.num * o.den + o.num * self.den, self.den * o.den, reduce=False)
        g, d1, d2 = poly_cofactors(self.den, o.den)
        num = self.num * d2 + o.num * d1
        # common factors of num can only come from g
        return MultiRat(num, d1 * d2 * g) if not g.is_constant() else MultiRat(num, d1 * d2, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return MultiRat(-self.num, self.den, reduce=False)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        if self.num.is_zero() or o.num.is_zero():
            return MultiRat(MultiPoly.zero(self.field))
        _, a, d = poly_cofactors(self.num, o.den)
        _, c, b = poly_cofactors(o.num, self.den)
        return MultiRat(a * c, b * d, reduce=False)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return MultiRat(self.den, self.num, reduce=False)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer exponents only")
        if n < 0:
            return self.inverse() ** (-n)
        return MultiRat(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, o):
        if not isinstance(o, (MultiRat, MultiPoly, int, Fraction)):
            return NotImplemented
        o = self._lift(o)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    # queries

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num.scale(self.field.inv(self.den.constant_value()))

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        F = self.field
        return F.div(self.num.constant_value(), self.den.constant_value())

    def free_vars(self):
        return tuple(sorted(set(self.num.free_vars()) | set(self.den.free_vars())))

    def degree(self, var):
        return self.num.degree(var) - self.den.degree(var)

    def diff(self, var):
        return MultiRat(self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den ** 2)

    def to_field(self, field):
        num, den = self.num.to_field(field), self.den.to_field(field)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator vanishes in {field}")
        return MultiRat(num, den)

    def evaluate(self, values):
        num = self.num.evaluate(values)
        den = self.den.evaluate(values)
        if den.is_zero():
            raise SubstitutionError("evaluation hits a pole")
        return MultiRat(num, den)

    def subs(self, bindings):
        return substitute(self, bindings)

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == self.field.one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"MultiRat[{self.field}]({self})"


def as_rat(x, field=QQ):
    if isinstance(x, MultiRat):
        return x
    if isinstance(x, MultiPoly):
        return MultiRat(x, reduce=False)
    if isinstance(x, str):
        return parse(x, field)
    return MultiRat.const(x, field)


def _subs_poly(P, bindings):
    """P evaluated at var -> N/D; returns (numerator, denominator) polynomials."""
    F = P.field
    bound = {v: b for v, b in bindings.items() if P.degree(v) > 0}
    if not bound:
        return P, MultiPoly.constant(1, F)
    degs = {v: P.degree(v) for v in bound}
    # N^e D^(d-e) for every occurring e, via running power lists
    npow = {v: [MultiPoly.constant(1, F)] for v in bound}
    dpow = {v: [MultiPoly.constant(1, F)] for v in bound}
    for v, b in bound.items():
        for _ in range(degs[v]):
            npow[v].append(npow[v][-1] * b.num)
            dpow[v].append(dpow[v][-1] * b.den)
    ordered = [v for v in P.vars if v in bound]
    groups = {}
    for exps, c in P.exponents():
        key = tuple(e for v, e in zip(P.vars, exps) if v in bound)
        free = tuple(e if v not in bound else 0 for v, e in zip(P.vars, exps))
        groups.setdefault(key, {})[free] = c
    num = MultiPoly.zero(F)
    for key, mons in groups.items():
        term = MultiPoly.from_dict(F, P.vars, mons)
        for v, e in zip(ordered, key):
            term = term * npow[v][e] * dpow[v][degs[v] - e]
        num = num + term
    den = MultiPoly.constant(1, F)
    for v in ordered:
        den = den * dpow[v][degs[v]]
    return num, den


def substitute(f, bindings):
    """Simultaneous substitution var -> MultiRat into a MultiRat (or MultiPoly)."""
    f = as_rat(f)
    F = f.field
    b = {}
    for v, val in bindings.items():
        val = as_rat(val, F)
        if val.field != F:
            raise ValueError("field mismatch in substitution")
        b[v] = val
    numA, denA = _subs_poly(f.num, b)
    numB, denB = _subs_poly(f.den, b)
    if numB.is_zero():
        raise SubstitutionError("substitution makes the denominator identically zero")
    return MultiRat(numA * denB, denA * numB)


# text parsing

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse(text, field=QQ):
    """Parse an arithmetic expression in named variables into a MultiRat.

    Accepts + - * / and ^ (or **) with integer exponents, integers, and
    identifiers such as t1, s, w.
    """
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty expression")
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _eval(tree.body, field)


def _eval(node, F):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return MultiRat.const(node.value, F)
    if isinstance(node, ast.Name):
        return MultiRat.var(node.id, F)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, F)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
        if isinstance(node.op, ast.Pow):
            e = node.right
            sign = 1
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                sign, e = -1, e.operand
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise ValueError("exponent must be an integer literal")
            return _eval(node.left, F) ** (sign * e.value)
        a, b = _eval(node.left, F), _eval(node.right, F)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        return a / b
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def parse_poly(text, field=QQ):
    r = parse(text, field)
    return r.as_poly()


__all__ = ["MultiRat", "substitute", "parse", "parse_poly", "as_rat", "SubstitutionError",
           "poly_gcd", "NotExactDivision"]
