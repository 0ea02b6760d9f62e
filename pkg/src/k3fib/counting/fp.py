"""Small F_p helpers: quadratic characters, reduction of exact objects, truncated power series."""

from fractions import Fraction
from functools import lru_cache
from math import inf

from ..exactmath import MultiRat, QQ, GF, as_rat, is_prime, substitute


class CountingError(ValueError):
    pass


@lru_cache(maxsize=64)
def chi_table(p):
    """chi[a] for a in range(p): 0, 1 or -1."""
    t = [-1] * p
    t[0] = 0
    for x in range(1, (p + 1) // 2 + 1):
        t[x * x % p] = 1
    return tuple(t)


def chi(a, p):
    return chi_table(p)[a % p]


def check_prime(p):
    p = int(p)
    if not is_prime(p):
        raise CountingError(f"{p} is not prime")
    return p


def fp(c, p):
    """Reduce an int, Fraction or field constant mod p."""
    if isinstance(c, int):
        return c % p
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise CountingError(f"{c} has a pole mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    if hasattr(c, "value"):
        return c.value % p
    raise TypeError(f"cannot reduce {c!r} mod {p}")


def specialize(f, params):
    """Substitute numeric parameter values (dict name -> int/Fraction) into a MultiRat."""
    if not params:
        return f
    binds = {k: MultiRat.const(v) for k, v in params.items() if k in f.free_vars()}
    return substitute(f, binds) if binds else f


def univariate_mod_p(f, var, p):
    """(num, den) coefficient lists (low to high, ints mod p) of a MultiRat in one variable."""
    f = as_rat(f)
    extra = set(f.free_vars()) - {var}
    if extra:
        raise CountingError(f"unbound parameters {sorted(extra)}")
    out = []
    for P in (f.num, f.den):
        if P.is_zero():
            out.append([])
            continue
        if var in P.free_vars():
            cl = [c.constant_value() if not c.is_zero() else 0 for c in P.coeff_list(var)]
        else:
            cl = [P.constant_value()]
        out.append(_trim([fp(c, p) for c in cl]))
    if not out[1]:
        raise CountingError(f"denominator of {f} vanishes mod {p}")
    return out[0], out[1]


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def horner(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def taylor_shift(coeffs, s0, p):
    """Coefficients of f(s0 + pi) from those of f(s)."""
    c = list(coeffs)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] = (c[j] + s0 * c[j + 1]) % p
    return c


class Series:
    """Truncated Laurent series pi^val * (c0 + c1 pi + ...) over F_p.

    ``prec`` counts the known coefficients after the leading one; a series
    whose known coefficients all vanish is treated as zero (val = inf).
    """

    __slots__ = ("val", "c", "p", "prec")

    def __init__(self, val, coeffs, p, prec=None):
        self.p = p
        coeffs = [x % p for x in coeffs]
        if prec is not None:
            coeffs = coeffs[:prec] + [0] * max(0, prec - len(coeffs))
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        if k == len(coeffs):
            self.val, self.c, self.prec = inf, [], len(coeffs)
        else:
            self.val = val + k
            self.c = coeffs[k:]
            self.prec = len(self.c)

    @classmethod
    def from_poly(cls, coeffs, p, prec):
        """Exact polynomial, known to prec coefficients."""
        return cls(0, list(coeffs)[:prec], p, prec)

    @classmethod
    def zero(cls, p):
        return cls(0, [], p, 0)

    def coeff(self, n):
        """Coefficient of pi^n."""
        if self.val == inf or n < self.val:
            return 0
        i = n - self.val
        if i >= self.prec:
            raise CountingError("series precision exhausted")
        return self.c[i]

    def shift(self, k):
        if self.val == inf:
            return self
        return Series(self.val + k, self.c, self.p)

    def __add__(self, o):
        if self.val == inf:
            return o
        if o.val == inf:
            return self
        lo = min(self.val, o.val)
        n = min(self.val + self.prec, o.val + o.prec) - lo
        return Series(lo, [self.coeff(lo + i) + o.coeff(lo + i) for i in range(n)], self.p)

    def __neg__(self):
        return Series(self.val, [-x for x in self.c], self.p) if self.val != inf else self

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            if o % self.p == 0:
                return Series.zero(self.p)
            return Series(self.val, [x * o for x in self.c], self.p) if self.val != inf else self
        if self.val == inf or o.val == inf:
            return Series.zero(self.p)
        n = min(self.prec, o.prec)
        p = self.p
        out = [0] * n
        for i in range(n):
            ai = self.c[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * o.c[j]
        return Series(self.val + o.val, out, p)

    def inverse(self):
        if self.val == inf:
            raise ZeroDivisionError("inverse of zero series")
        p, n = self.p, self.prec
        inv0 = pow(self.c[0], -1, p)
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                acc += self.c[j] * out[k - j]
            out[k] = -acc * inv0 % p
        return Series(-self.val, out, p)

    def __truediv__(self, o):
        return self * o.inverse()

    def is_zero(self):
        return self.val == inf


def local_series(num, den, place, p, prec):
    """Series of num/den at s = place + pi, or at oo with s = 1/pi."""
    if place == "oo":
        dn, dd = len(num) - 1, len(den) - 1
        N = Series.from_poly(list(reversed(num)), p, prec) if num else Series.zero(p)
        D = Series.from_poly(list(reversed(den)), p, prec)
        if N.is_zero():
            return N
        return (N / D).shift(dd - dn)
    N = Series.from_poly(taylor_shift(num, place, p), p, prec) if num else Series.zero(p)
    if N.is_zero():
        return N
    D = Series.from_poly(taylor_shift(den, place, p), p, prec)
    return N / D


def point_field(p):
    return GF(check_prime(p))


__all__ = ["CountingError", "chi_table", "chi", "check_prime", "fp", "specialize", "univariate_mod_p", "horner",
           "taylor_shift", "Series", "local_series", "point_field", "QQ"]
