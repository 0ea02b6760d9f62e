"""Point counts of curves over prime fields and the report type shared by all counters."""

from dataclasses import dataclass, field
from math import isqrt

from ..exactmath import as_rat
from .fp import CountingError, check_prime, chi_table, fp, specialize

REPORT_SCHEMA = 1


@dataclass
class CountReport:
    p: int
    total: int
    per_fiber: list = field(default_factory=list)
    a_trace: int = None
    kind: str = ""
    meta: dict = field(default_factory=dict)

    def check(self):
        if self.per_fiber and sum(c for _, c, _ in self.per_fiber) != self.total:
            raise CountingError("per-fiber counts do not sum to the total")
        return self

    def to_json(self):
        return {"schema_version": REPORT_SCHEMA, "kind": self.kind, "p": self.p, "total": self.total,
                "a_trace": self.a_trace,
                "per_fiber": [[str(b), c, s] for b, c, s in self.per_fiber], "meta": self.meta}


def hasse_ok(a, p):
    """|a| <= 2 sqrt(p), checked in integers."""
    return a * a <= 4 * p


def _constant_ints(model, p, params):
    vals = []
    for c in model.a:
        c = specialize(c, params)
        if c.free_vars():
            raise CountingError(f"coefficient {c} is not a constant")
        c = as_rat(c)
        num, den = c.num.constant_value() if not c.num.is_zero() else 0, c.den.constant_value()
        d = fp(den, p)
        if d == 0:
            raise CountingError(f"coefficient {c} has a pole mod {p}")
        vals.append(fp(num, p) * pow(d, -1, p) % p)
    return vals


def weierstrass_ints(model, p=None, params=None):
    """(p, [a1, a2, a3, a4, a6]) mod p for a model with constant coefficients."""
    if p is None:
        p = model.field.char
        if not p:
            raise CountingError("a prime is needed for a model over Q")
    p = check_prime(p)
    return p, _constant_ints(model, p, params or {})


def disc_ints(a, p):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = a1 * a3 + 2 * a4
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return (-b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6) % p


def count_cubic_ints(a, p):
    """Projective points on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 (singular allowed)."""
    a1, a2, a3, a4, a6 = a
    if p == 2:
        n = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    n += 1
        return n
    ch = chi_table(p)
    n = 1
    for x in range(p):
        g = 4 * (((x + a2) * x + a4) * x + a6) + (a1 * x + a3) ** 2
        n += 1 + ch[g % p]
    return n


def count_elliptic(model, p=None, params=None):
    """CountReport for an elliptic curve with constant coefficients over F_p.

    The trace is checked against the Hasse bound and a violation raises.
    """
    p, a = weierstrass_ints(model, p, params)
    if disc_ints(a, p) == 0:
        raise CountingError(f"singular curve mod {p}")
    n = count_cubic_ints(a, p)
    tr = p + 1 - n
    if not hasse_ok(tr, p):
        raise AssertionError(f"Hasse bound violated: a = {tr}, p = {p}")
    return CountReport(p, n, a_trace=tr, kind="elliptic", meta={"a": a})


def brute_force_cubic(a, p):
    """Exhaustive (x, y) scan plus the point at infinity; the oracle for count_cubic_ints."""
    a1, a2, a3, a4, a6 = a
    n = 1
    for x in range(p):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y - rhs) % p == 0:
                n += 1
    return n


def quartic_ints(q, p, params=None):
    vals = []
    for c in q.coefficients:
        c = specialize(as_rat(c), params or {})
        if c.free_vars():
            raise CountingError(f"quartic coefficient {c} is not a constant")
        num = c.num.constant_value() if not c.num.is_zero() else 0
        d = fp(c.den.constant_value(), p)
        vals.append(fp(num, p) * pow(d, -1, p) % p)
    return vals


def count_quartic_ints(coeffs, p):
    """Points on the smooth model of y^2 = a s^4 + b s^3 + c s^2 + d s + e over F_p.

    Affine points plus the points over s = oo: 1 + chi(a) when a != 0, one
    point when the quartic drops to a cubic.
    """
    a, b, c, d, e = (x % p for x in coeffs)
    ch = chi_table(p)
    n = 0
    for s in range(p):
        n += 1 + ch[((((a * s + b) * s + c) * s + d) * s + e) % p]
    if a:
        n += 1 + ch[a]
    else:
        if not b:
            raise CountingError("quartic has degree < 3")
        n += 1
    return n


def quartic_is_smooth(coeffs, p):
    """Squarefree of degree 3 or 4 mod p (discriminant test through the invariants)."""
    a, b, c, d, e = (x % p for x in coeffs)
    I = (12 * a * e - 3 * b * d + c * c) % p
    J = (72 * a * c * e - 27 * a * d * d - 27 * b * b * e + 9 * b * c * d - 2 * c ** 3) % p
    if a == 0 and b == 0:
        return False
    return (4 * I ** 3 - J * J) % p != 0


def count_quartic(q, p, params=None):
    p = check_prime(p)
    coeffs = quartic_ints(q, p, params)
    if not quartic_is_smooth(coeffs, p):
        raise CountingError(f"singular quartic mod {p}")
    return CountReport(p, count_quartic_ints(coeffs, p), kind="quartic", meta={"coefficients": coeffs})


def isqrt_floor(n):
    return isqrt(n)
