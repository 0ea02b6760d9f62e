"""Coefficient fields: the rationals and prime fields.

Rational coefficients are stored as ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise; this keeps the common integer case fast.
Prime field coefficients are plain ints in ``[0, p)``.
"""

from fractions import Fraction
from functools import lru_cache


def is_prime(n):
    """Miller-Rabin with the first thirteen prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _norm_q(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class RationalField:
    """The field Q."""

    char = 0
    tag = "QQ"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, c):
        return self.coerce(c)

    def coerce(self, c):
        if isinstance(c, int):
            return c
        if isinstance(c, Fraction):
            return _norm_q(c)
        if isinstance(c, str):
            return _norm_q(Fraction(c))
        raise TypeError(f"cannot coerce {c!r} to QQ")

    zero = 0
    one = 1

    @staticmethod
    def normalize(c):
        return _norm_q(c)

    @staticmethod
    def add(a, b):
        return _norm_q(a + b)

    @staticmethod
    def sub(a, b):
        return _norm_q(a - b)

    @staticmethod
    def mul(a, b):
        return _norm_q(a * b)

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _norm_q(Fraction(1, a) if isinstance(a, int) else 1 / a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    @staticmethod
    def to_str(a):
        return str(a)


class PrimeField:
    """The field F_p.  Elements are ints reduced into [0, p)."""

    tag = "GF"

    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, c):
        return self.coerce(c)

    def coerce(self, c):
        p = self.p
        if isinstance(c, int):
            return c % p
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(c.denominator, -1, p) % p
        if isinstance(c, FpElem):
            if c.p != p:
                raise ValueError("field mismatch")
            return c.value
        raise TypeError(f"cannot coerce {c!r} to GF({p})")

    def normalize(self, c):
        return c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    @staticmethod
    def to_str(a):
        return str(a)

    def sqrt(self, a):
        """A square root of a, or None when a is a nonsquare (Tonelli-Shanks)."""
        p = self.p
        a %= p
        if a == 0 or p == 2:
            return a
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return r


class FpElem:
    """A single element of F_p, for callers that want a value type."""

    __slots__ = ("p", "value")

    def __init__(self, value, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.value = value % p

    def _other(self, o):
        if isinstance(o, FpElem):
            if o.p != self.p:
                raise ValueError("field mismatch")
            return o.value
        return GF(self.p).coerce(o)

    def __add__(self, o):
        return FpElem(self.value + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return FpElem(self.value - self._other(o), self.p)

    def __rsub__(self, o):
        return FpElem(self._other(o) - self.value, self.p)

    def __mul__(self, o):
        return FpElem(self.value * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __truediv__(self, o):
        return FpElem(self.value * pow(self._other(o), -1, self.p), self.p)

    def __pow__(self, n):
        return FpElem(pow(self.value, n, self.p), self.p)

    def __eq__(self, o):
        try:
            return self.value == self._other(o)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} mod {self.p}"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def legendre_symbol(a, p):
    """(a/p) for an odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
