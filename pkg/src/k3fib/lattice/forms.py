"""Hilbert symbols, Hasse invariants and rational isometry."""

from fractions import Fraction
from math import isqrt

from sympy import factorint

from ..exactmath import is_prime, legendre_symbol
from .core import LatticeError, diagonalize


def _valuation(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _square_class(a):
    """Integer representative of a in Q*/Q*^2 (numerator times denominator)."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no square class")
    return a.numerator * a.denominator


def hilbert_symbol(a, b, p):
    """(a, b)_p for nonzero rationals; p a prime or the string 'inf'."""
    a, b = _square_class(a), _square_class(b)
    if p in ("inf", "oo", float("inf"), 0):
        return -1 if a < 0 and b < 0 else 1
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    alpha, u = _valuation(a, p)
    beta, v = _valuation(b, p)
    if p != 2:
        eps = ((p - 1) // 2) % 2
        s = -1 if (alpha * beta * eps) % 2 else 1
        if beta % 2:
            s *= legendre_symbol(u, p)
        if alpha % 2:
            s *= legendre_symbol(v, p)
        return s

    def e(x):
        return ((x - 1) // 2) % 2

    def w(x):
        return ((x * x - 1) // 8) % 2

    expo = e(u) * e(v) + alpha * w(v) + beta * w(u)
    return -1 if expo % 2 else 1


def hasse_from_diagonal(d, p):
    s = 1
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            s *= hilbert_symbol(d[i], d[j], p)
    return s


def hasse_invariant(L, p):
    d = diagonalize(L.gram)
    if any(x == 0 for x in d):
        raise LatticeError("degenerate Gram")
    return hasse_from_diagonal(d, p)


def _relevant_primes(*diags):
    ps = {2}
    for d in diags:
        for a in d:
            for part in (a.numerator, a.denominator):
                ps.update(factorint(abs(part)).keys())
    ps.discard(1)
    return sorted(ps)


def is_rational_square(x):
    x = Fraction(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rationally_isometric(L1, L2):
    """Hasse-Minkowski: rank, signature, determinant class and Hasse invariants."""
    if L1.rank != L2.rank or L1.signature != L2.signature:
        return False
    if L1.disc == 0 or L2.disc == 0:
        raise LatticeError("degenerate Gram")
    if not is_rational_square(Fraction(L1.disc) * L2.disc):
        return False
    d1, d2 = diagonalize(L1.gram), diagonalize(L2.gram)
    return all(hasse_from_diagonal(d1, p) == hasse_from_diagonal(d2, p) for p in _relevant_primes(d1, d2))


def rational_invariants(L):
    d = diagonalize(L.gram)
    ps = _relevant_primes(d)
    return {
        "rank": L.rank,
        "signature": list(L.signature),
        "disc_class": _squarefree_part(L.disc),
        "hasse": {str(p): hasse_from_diagonal(d, p) for p in ps},
    }


def _squarefree_part(n):
    if n == 0:
        return 0
    s = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            s *= p
    return s
