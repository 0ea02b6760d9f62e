"""Univariate factorization over GF(p) and QQ.

Dense coefficient lists, lowest degree first.  Over GF(p): squarefree
decomposition, distinct-degree splitting, then Cantor-Zassenhaus.  Over QQ:
Yun's squarefree decomposition, rational roots, then Zassenhaus (factor mod a
good prime, Hensel lift, recombine) for the part of degree at most 12.
"""

import random
from fractions import Fraction
from math import gcd, isqrt
from itertools import combinations

from .fields import QQ, RationalField, is_prime
from .poly import MultiPoly

MAX_ZASSENHAUS_DEGREE = 12


class UnsupportedDegree(NotImplementedError):
    pass


# dense helpers mod p

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def p_norm(a, p):
    return _trim([c % p for c in a])


def p_add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def p_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def p_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def p_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def p_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def p_gcd(a, b, p):
    a, b = p_norm(a, p), p_norm(b, p)
    while b:
        a, b = b, p_divmod(a, b, p)[1]
    return p_monic(a, p)


def p_powmod(a, e, m, p):
    result = [1]
    base = p_divmod(a, m, p)[1]
    while e:
        if e & 1:
            result = p_divmod(p_mul(result, base, p), m, p)[1]
        e >>= 1
        if e:
            base = p_divmod(p_mul(base, base, p), m, p)[1]
    return result


def p_deriv(a, p):
    return _trim([(i * a[i]) % p for i in range(1, len(a))])


def p_xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = p_norm(a, p), p_norm(b, p)
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = p_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, p), p)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return [c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0]


def p_squarefree(f, p):
    """[(g, m)] with f = lc * prod g^m, g monic squarefree, pairwise coprime."""
    f = p_monic(p_norm(f, p), p)
    out = {}

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = p_deriv(f, p)
        if not d:
            # f is a p-th power
            root = [f[i] for i in range(0, len(f), p)]
            rec(root, mult * p)
            return
        c = p_gcd(f, d, p)
        w = p_divmod(f, c, p)[0]
        i = 1
        while len(w) > 1:
            y = p_gcd(w, c, p)
            z = p_divmod(w, y, p)[0]
            if len(z) > 1:
                out[tuple(z)] = out.get(tuple(z), 0) + i * mult
            w = y
            c = p_divmod(c, y, p)[0]
            i += 1
        if len(c) > 1:
            root = [c[i] for i in range(0, len(c), p)]
            rec(root, mult * p)

    rec(f, 1)
    return [(list(g), m) for g, m in out.items()]


def p_distinct_degree(f, p):
    """Split squarefree monic f into [(product of irreducibles of degree d, d)]."""
    out = []
    h = [0, 1]
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = p_powmod(h, p, f, p)
        g = p_gcd(f, p_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = p_divmod(f, g, p)[0]
            h = p_divmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def p_equal_degree(f, d, p, rng):
    """Irreducible factors of f, all of degree d (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = p_norm([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, b = list(a), list(a)
            for _ in range(d - 1):
                b = p_divmod(p_mul(b, b, p), f, p)[1]
                t = p_add(t, b, p)
            g = p_gcd(f, t, p)
        else:
            b = p_powmod(a, (p ** d - 1) // 2, f, p)
            g = p_gcd(f, p_sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = p_divmod(f, g, p)[0]
            return p_equal_degree(g, d, p, rng) + p_equal_degree(p_monic(h, p), d, p, rng)


def factor_mod_p(f, p, seed=0):
    """(lc, [(monic irreducible, multiplicity)]) for a dense poly over GF(p)."""
    f = p_norm(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    lc = f[-1]
    rng = random.Random(seed)
    out = []
    for g, m in p_squarefree(f, p):
        for h, d in p_distinct_degree(g, p):
            for q in p_equal_degree(h, d, p, rng):
                out.append((q, m))
    out.sort(key=lambda qm: (len(qm[0]), qm[0][::-1], qm[1]))
    return lc, out


# dense helpers over ZZ / QQ

def z_trim(a):
    return _trim(list(a))


def z_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def q_divmod(a, b):
    """Division over QQ of dense lists of Fractions/ints."""
    a = [Fraction(c) for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [Fraction(0)] * (len(a) - db)
    lb = Fraction(b[-1])
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lb
        q[k - db] = c
        if c:
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    return _trim(q), _trim(a[:db])


def q_gcd(a, b):
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b:
        a, b = b, q_divmod(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def z_primitive(a):
    """Clear denominators and content; positive leading coefficient."""
    a = [Fraction(c) for c in a]
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return []
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def z_exact_div(a, b):
    """a / b over ZZ when exact, else None."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None if any(a) else []
    q = [0] * (len(a) - db)
    lb = b[-1]
    for k in range(len(a) - 1, db - 1, -1):
        if a[k] % lb:
            return None
        c = a[k] // lb
        q[k - db] = c
        if c:
            for j in range(db + 1):
                a[k - db + j] -= c * b[j]
    if any(a[:db]):
        return None
    return _trim(q)


def q_squarefree(f):
    """Yun: [(g, m)] with g primitive integral squarefree."""
    f = z_primitive(f)
    out = []
    if len(f) <= 1:
        return out
    d = _trim([i * f[i] for i in range(1, len(f))])
    a0 = q_gcd(f, d)
    b = q_divmod(f, a0)[0]
    c = q_divmod(d, a0)[0]
    db = [Fraction(i * b[i]) for i in range(1, len(b))]
    dd = _trim([x - y for x, y in _zip_pad(c, db)])
    i = 1
    while len(b) > 1:
        a = q_gcd(b, dd)
        if len(a) > 1:
            out.append((z_primitive(a), i))
        b = q_divmod(b, a)[0]
        c = q_divmod(dd, a)[0]
        db = [Fraction(k * b[k]) for k in range(1, len(b))]
        dd = _trim([x - y for x, y in _zip_pad(c, db)])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def _divisors(n):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _eval_z(f, x):
    r = Fraction(0)
    for c in reversed(f):
        r = r * x + c
    return r


def rational_roots(f):
    """Rational roots of an integral polynomial (with zero handled)."""
    f = z_trim(f)
    roots = []
    k = 0
    while k < len(f) and f[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        f = f[k:]
    if len(f) <= 1:
        return roots
    for q in _divisors(f[-1]):
        for pn in _divisors(f[0]):
            for sgn in (1, -1):
                r = Fraction(sgn * pn, q)
                if r not in roots and _eval_z(f, r) == 0:
                    roots.append(r)
    return sorted(set(roots))


def _sym(a, m):
    h = m // 2
    return [c - m if c > h else c for c in (x % m for x in a)]


def _hensel_step(f, g, h, s, t, m):
    """Lift f = g h (mod m) with s g + t h = 1 (mod m) to mod m^2.  h monic."""
    m2 = m * m

    def sub(a, b):
        return p_sub(a, b, m2)

    def mul(a, b):
        return p_mul(a, b, m2)

    def dvm(a, b):
        return _divmod_monic(a, b, m2)

    e = sub(p_norm(f, m2), mul(g, h))
    q, r = dvm(mul(s, e), h)
    g2 = p_add(p_add(g, mul(t, e), m2), mul(q, g), m2)
    h2 = p_add(h, r, m2)
    b = sub(p_add(mul(s, g2), mul(t, h2), m2), [1])
    c, d = dvm(mul(s, b), h2)
    s2 = sub(s, d)
    t2 = sub(sub(t, mul(t, b)), mul(c, g2))
    return g2, h2, s2, t2


def _divmod_monic(a, b, m):
    """Division by a monic polynomial modulo any m."""
    a = [c % m for c in a]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % m
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % m
    return _trim(q), _trim(a[:db])


def _lift_factors(f, factors, p, k):
    """Lift monic factors of f mod p (lc(f) a unit mod p) to mod p^k."""
    M = p ** k
    out = []
    cur = list(f)
    rest = list(factors)
    while len(rest) > 1:
        gi = rest.pop(0)
        lc = cur[-1] % p
        g = [c * lc % p for c in gi]
        h = [1]
        for r in rest:
            h = p_mul(h, r, p)
        _, s, t = p_xgcd(g, h, p)
        m = p
        while m < M:
            g, h, s, t = _hensel_step(cur, g, h, s, t, m)
            m *= m
        g = [c % M for c in g]
        h = [c % M for c in h]
        inv = pow(g[-1], -1, M)
        out.append([c * inv % M for c in g])
        cur = h
    out.append([c % M for c in cur])
    inv = pow(out[-1][-1], -1, M)
    out[-1] = [c * inv % M for c in out[-1]]
    return out


def _good_prime(f):
    lc = f[-1]
    p = 3
    while True:
        if is_prime(p) and lc % p:
            fp = p_norm(f, p)
            if len(p_gcd(fp, p_deriv(fp, p), p)) == 1:
                return p
        p += 2


def zassenhaus(f):
    """Irreducible factors over ZZ of a primitive squarefree f, without content."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    if n > MAX_ZASSENHAUS_DEGREE:
        raise UnsupportedDegree(f"factoring degree {n} > {MAX_ZASSENHAUS_DEGREE} over QQ is unsupported")
    p = _good_prime(f)
    _, modfac = factor_mod_p(f, p)
    modfac = [g for g, _ in modfac]
    if len(modfac) == 1:
        return [f]
    norm2 = isqrt(sum(c * c for c in f)) + 1
    bound = 2 * abs(f[-1]) * (2 ** n) * norm2
    k = 1
    while p ** k <= bound:
        k += 1
    M = p ** k
    lifted = _lift_factors(f, modfac, p, k)
    result = []
    cur = list(f)
    s = 1
    while 2 * s <= len(lifted):
        found = False
        for S in combinations(range(len(lifted)), s):
            lc = cur[-1]
            g = [lc]
            for i in S:
                g = [c % M for c in z_mul(g, lifted[i])]
            g = z_primitive(_sym(g, M))
            q = z_exact_div(cur, g)
            if q is not None:
                result.append(g)
                cur = q
                lifted = [lifted[i] for i in range(len(lifted)) if i not in S]
                found = True
                break
        if not found:
            s += 1
    result.append(z_primitive(cur))
    return result


def factor_rational(f):
    """(content, [(primitive integral irreducible, multiplicity)]) for dense QQ poly."""
    f = _trim([Fraction(c) for c in f])
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    prim = z_primitive(f)
    content = f[-1] / prim[-1]
    out = []
    for g, m in q_squarefree(prim):
        roots = rational_roots(g)
        for r in roots:
            lin = z_primitive([-r, 1])
            out.append((lin, m))
            g = z_exact_div(g, lin)
        if len(g) > 1:
            for h in zassenhaus(z_primitive(g)):
                out.append((h, m))
    return content, out


# MultiPoly front end

def _univariate_var(f):
    fv = f.free_vars()
    if len(fv) > 1:
        raise ValueError(f"factor_univariate needs one variable, got {fv}")
    return fv[0] if fv else None


def factor_univariate(f):
    """Factor a one-variable MultiPoly.

    Returns (unit, [(factor, multiplicity)]) with monic, pairwise distinct
    irreducible factors and unit * prod factor^m == f.
    """
    if not isinstance(f, MultiPoly):
        raise TypeError("expected MultiPoly")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    F = f.field
    var = _univariate_var(f)
    if var is None:
        return f.constant_value(), []
    coeffs = [c.constant_value() if not c.is_zero() else 0 for c in f.coeff_list(var)]
    factors = []
    if isinstance(F, RationalField):
        _, fac = factor_rational(coeffs)
        for g, m in fac:
            lc = Fraction(g[-1])
            factors.append(([Fraction(c) / lc for c in g], m))
    else:
        p = F.p
        _, fac = factor_mod_p([F.coerce(c) for c in coeffs], p)
        factors = fac
    polys = []
    for g, m in factors:
        gp = MultiPoly.from_coeff_list([F.coerce(c) for c in g], var, F)
        polys.append((gp, m))
    polys.sort(key=lambda gm: (gm[0].degree(), str(gm[0]), gm[1]))
    unit = f.leading_coeff()
    return unit, polys


def expand_factorization(unit, factors, field=QQ):
    out = MultiPoly.constant(unit, field)
    for g, m in factors:
        out = out * g ** m
    return out


def roots_in_field(f):
    """Roots of a one-variable polynomial lying in its coefficient field."""
    _, fac = factor_univariate(f)
    out = []
    for g, m in fac:
        if g.degree() == 1:
            var = g.free_vars()[0]
            c = g.coeff_list(var)
            c0 = c[0].constant_value() if not c[0].is_zero() else 0
            out.append((g.field.neg(c0), m))
    return out
