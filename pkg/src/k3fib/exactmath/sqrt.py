"""Exact square roots of polynomials and rational functions."""

from fractions import Fraction
from math import isqrt

from .fields import RationalField
from .poly import MultiPoly, _divides, _guard, pack, unpack
from .ratfunc import MultiRat


def _scalar_sqrt(field, c):
    if isinstance(field, RationalField):
        c = Fraction(c)
        if c < 0:
            return None
        n, d = c.numerator, c.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn != n or rd * rd != d:
            return None
        return field.coerce(Fraction(rn, rd))
    return field.sqrt(c)


def poly_sqrt(f):
    """g with g*g == f, or None.  The lex-leading coefficient of g is the chosen root."""
    F = f.field
    if f.is_zero():
        return f
    n = len(f.vars)
    terms = f.terms
    lm = max(terms)
    e = unpack(lm, n)
    if any(x % 2 for x in e):
        return None
    h = pack([x // 2 for x in e])
    c0 = _scalar_sqrt(F, terms[lm])
    if c0 is None:
        return None
    # exponent caps: a square root has half the degree in every variable
    caps = [f.degree(v) // 2 for v in f.vars]
    g = {h: c0}
    inv2c0 = F.inv(F.mul(2, c0))
    r = _sub_sq(F, dict(terms), {h: c0}, {})
    guard = _guard(n)
    while r:
        m = max(r)
        if not _divides(h, m, guard):
            return None
        d = m - h
        if d >= h or any(x > cap for x, cap in zip(unpack(d, n), caps)):
            return None
        c = F.mul(r[m], inv2c0)
        r = _sub_sq(F, r, {d: c}, g)
        g[d] = c
    return MultiPoly(F, f.vars, g)


def _sub_sq(F, r, new, old):
    """r - (2 * new * old + new^2), with monomials packed additively."""
    norm = F.normalize
    (dn, cn), = new.items()
    for m, c in old.items():
        k = dn + m
        v = norm(r.get(k, 0) - 2 * cn * c)
        if v:
            r[k] = v
        else:
            r.pop(k, None)
    k = dn + dn
    v = norm(r.get(k, 0) - cn * cn)
    if v:
        r[k] = v
    else:
        r.pop(k, None)
    return r


def rat_sqrt(f):
    """Square root of a reduced rational function, or None."""
    if not isinstance(f, MultiRat):
        f = MultiRat(f)
    if f.is_zero():
        return f
    a = poly_sqrt(f.num)
    b = poly_sqrt(f.den)
    if a is not None and b is not None:
        return MultiRat(a, b)
    # num/den = (num*den)/den^2; num and den may carry a common square class
    c = poly_sqrt(f.num * f.den)
    if c is None:
        return None
    return MultiRat(c, f.den)


def is_square(f):
    return rat_sqrt(f) is not None
