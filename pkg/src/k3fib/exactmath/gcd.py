"""Multivariate polynomial gcd.

The gcd itself is delegated to sympy's sparse polynomial rings (heuristic gcd
over ZZ, modular gcd over GF(p)).  Every answer is checked by exact division
in our own arithmetic before it is returned, so a wrong gcd cannot silently
corrupt a reduced fraction.
"""

from functools import lru_cache

from .fields import RationalField
from .poly import MultiPoly, unpack, pack


@lru_cache(maxsize=256)
def _ring(vars, tag, p):
    from sympy.polys.domains import ZZ, GF as sGF
    from sympy.polys.rings import ring

    dom = ZZ if tag == "QQ" else sGF(p)
    R, *_ = ring(",".join(vars) if vars else "_dummy", dom)
    return R


def _to_sympy(f, R):
    n = len(f.vars)
    if n == 0:
        return R({(0,): int(f.terms.get(0, 0))}) if f.terms else R(0)
    return R({tuple(unpack(m, n)): int(c) for m, c in f.terms.items()})


def _from_sympy(g, field, vars):
    out = {}
    n = len(vars)
    for exps, c in g.items():
        c = int(c)
        if n == 0:
            out[0] = field.coerce(c)
        else:
            out[pack(exps)] = field.coerce(c)
    return MultiPoly(field, vars, {m: c for m, c in out.items() if c})


def _integral(f):
    """Primitive integer polynomial with positive lex-leading coefficient."""
    _, pp = f.primitive()
    return pp


def poly_gcd(a, b):
    """Normalized gcd (over QQ: primitive integer with positive lc; else monic)."""
    return poly_cofactors(a, b)[0]


def poly_cofactors(a, b):
    """(g, a/g, b/g) with g = poly_gcd(a, b)."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    F = a.field
    one = MultiPoly.constant(1, F)
    if a.is_zero():
        g = normalize_gcd(b)
        return g, a, (b.exquo(g) if g else b)
    if b.is_zero():
        g = normalize_gcd(a)
        return g, a.exquo(g), b
    if a.is_constant() or b.is_constant():
        return one, a, b
    vars = tuple(sorted(set(a.trim().vars) | set(b.trim().vars)))
    a2, b2 = a.trim().with_vars(vars), b.trim().with_vars(vars)
    if isinstance(F, RationalField):
        a2, b2 = _integral(a2), _integral(b2)
        R = _ring(vars, "QQ", 0)
    else:
        R = _ring(vars, "GF", F.p)
    g = _to_sympy(a2, R).gcd(_to_sympy(b2, R))
    g = normalize_gcd(_from_sympy(g, F, vars))
    if g.is_constant():
        return one, a, b
    # the exact divisions double as a correctness check on g
    return g, a.exquo(g), b.exquo(g)


def normalize_gcd(g):
    if g.is_zero():
        return g
    if isinstance(g.field, RationalField):
        return _integral(g)
    return g.monic()
