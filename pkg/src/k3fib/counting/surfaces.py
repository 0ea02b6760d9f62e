"""Point counts of Weierstrass-fibered surfaces over F_p, fiber by fiber.

Every fiber is read off a local minimal short model y^2 = x^3 + A x + B at
the point of P^1(F_p).  ``naive`` counts the projective cubic; ``smooth``
replaces each singular fiber by the count of its Kodaira resolution.
"""

from math import inf

from ..exactmath import GF, as_rat
from ..fibration import FibrationError, kodaira_from_valuations
from .curves import CountReport, count_cubic_ints
from .fp import CountingError, Series, check_prime, chi_table, local_series, specialize, univariate_mod_p

# resolved fiber counts that do not depend on the Galois action on components
FIXED_ADDITIVE = {"II": (1, 1), "III": (2, 1), "III*": (8, 1), "II*": (9, 1)}
# everything is c p + 1 for a tree of c rational components; c depends on rationality for these
RATIONALITY_DEPENDENT = ("IV", "IV*", "I0*", "In*")

DEFAULT_PRECISION = 48


def short_coefficients(model, p, params=None):
    """(A, B) as (num, den) int-list pairs in the base variable, reduced mod p."""
    if p in (2, 3):
        raise CountingError(f"p = {p}: the short form and the tame fiber table need p >= 5")
    var = model.base
    A = specialize(as_rat(model.c4) * -1, params) / 48
    B = specialize(as_rat(model.c6) * -1, params) / 864
    return univariate_mod_p(A, var, p), univariate_mod_p(B, var, p)


class LocalFiber:
    """Minimal short model at one point of P^1(F_p) and its Kodaira type."""

    def __init__(self, A, B, p, point):
        self.p, self.point = p, point
        ks = [-(s.val // d) for s, d in ((A, 4), (B, 6)) if not s.is_zero()]
        if not ks:
            raise CountingError(f"A and B both vanish at {point}")
        k = max(ks)
        self.shift = k
        self.A, self.B = A.shift(4 * k), B.shift(6 * k)
        D = self.A * self.A * self.A * 4 + self.B * self.B * 27
        if D.is_zero():
            raise CountingError(f"discriminant lost to truncation at {point}; raise the precision")
        self.vA = self.A.val if not self.A.is_zero() else inf
        self.vB = self.B.val if not self.B.is_zero() else inf
        self.vD = D.val
        self.A0, self.B0 = self.A.coeff(0), self.B.coeff(0)
        if self.vD == 0:
            self.symbol = "I0"
        else:
            try:
                self.symbol = kodaira_from_valuations(self.vA, self.vB, self.vD).symbol
            except FibrationError as err:
                raise CountingError(f"at {point}: {err}") from None

    @property
    def singular(self):
        return self.vD > 0

    def naive_count(self):
        return count_cubic_ints([0, 0, 0, self.A0, self.B0], self.p)

    def smooth_count(self):
        p, sym = self.p, self.symbol
        if sym == "I0":
            return self.naive_count()
        if sym in FIXED_ADDITIVE:
            c, e = FIXED_ADDITIVE[sym]
            return c * p + e
        ch = chi_table(p)
        if sym == "IV":
            return (3 if ch[self.B.coeff(2)] == 1 else 1) * p + 1
        if sym == "IV*":
            return (7 if ch[self.B.coeff(4)] == 1 else 3) * p + 1
        if sym == "I0*":
            a, b = self.A.coeff(2), self.B.coeff(3)
            r = sum(1 for t in range(p) if (t * t * t + a * t + b) % p == 0)
            return (2 + r) * p + 1
        if sym[1:].isdigit():
            n = int(sym[1:])
            if self.split_multiplicative():
                return n * p
            return p + 2 if n % 2 else 2 * p + 2
        if sym[1:-1].isdigit():
            n = int(sym[1:-1])
            return (n + 5 if self.far_pair_rational(n) else n + 3) * p + 1
        raise CountingError(f"no resolved count for {sym}")

    def split_multiplicative(self):
        """Slopes of the tangent cone at the node are rational."""
        p = self.p
        x0 = -3 * self.B0 * pow(2 * self.A0, -1, p) % p
        return chi_table(p)[3 * x0 % p] == 1

    def far_pair_rational(self, n):
        """Tate's loop for I_n*, n >= 1: are the two far components defined over F_p?"""
        p = self.p
        ch = chi_table(p)
        a4, a6 = self.A, self.B
        A2, B3 = a4.coeff(2), a6.coeff(3)
        a2 = Series.zero(p)

        def translate(r):
            nonlocal a2, a4, a6
            r2 = r * r
            a2, a4, a6 = (a2 + r * 3,
                          a4 + a2 * r * 2 + r2 * 3,
                          a6 + a4 * r + a2 * r2 + r2 * r)

        prec = a4.prec + a4.val + 4
        alpha = -3 * B3 * pow(2 * A2, -1, p) % p
        translate(Series(1, [alpha], p, prec))
        lead = a2.coeff(1)
        if lead == 0:
            raise CountingError("I_n* without a simple root in the cubic of the fiber")
        step, k = 1, 1
        while step <= n:
            # odd step: Y^2 = a6 at pi^(2k+2)
            c = a6.coeff(2 * k + 2)
            if c:
                if step != n:
                    raise CountingError(f"Tate loop stopped at I{step}* but the discriminant says I{n}*")
                return ch[c] == 1
            step += 1
            # even step: lead X^2 + a4 at pi^(k+2) X + a6 at pi^(2k+3)
            b, c = a4.coeff(k + 2), a6.coeff(2 * k + 3)
            disc = (b * b - 4 * lead * c) % p
            if disc:
                if step != n:
                    raise CountingError(f"Tate loop stopped at I{step}* but the discriminant says I{n}*")
                return ch[disc] == 1
            X0 = -b * pow(2 * lead, -1, p) % p
            translate(Series(k + 1, [X0], p, prec))
            step += 1
            k += 1
        raise CountingError(f"Tate loop did not terminate by I{n}*")


def points_of_line(p):
    return list(range(p)) + ["oo"]


def local_fibers(model, p, params=None, precision=None):
    """LocalFiber at every point of P^1(F_p), in the order 0..p-1, oo."""
    p = check_prime(p)
    (An, Ad), (Bn, Bd) = short_coefficients(model, p, params)
    prec = precision or DEFAULT_PRECISION + len(An) + len(Ad) + len(Bn) + len(Bd)
    out = []
    for s0 in points_of_line(p):
        A = local_series(An, Ad, s0, p, prec)
        B = local_series(Bn, Bd, s0, p, prec)
        out.append(LocalFiber(A, B, p, s0))
    return out


def count_fibered_surface(model, p, params=None, mode="smooth", precision=None):
    """CountReport of a Weierstrass model over F_p(s), summed over s in P^1(F_p).

    ``params`` binds the remaining variables to numbers before reduction.
    """
    if mode not in ("naive", "smooth"):
        raise CountingError(f"unknown mode {mode!r}")
    fibers = local_fibers(model, p, params, precision)
    per = []
    symbols = {}
    for F in fibers:
        n = F.smooth_count() if mode == "smooth" else F.naive_count()
        per.append((F.point, n, F.singular))
        if F.singular:
            symbols[str(F.point)] = F.symbol
    total = sum(n for _, n, _ in per)
    rep = CountReport(p, total, per, kind=f"surface/{mode}",
                      meta={"model": model.name, "params": {k: str(v) for k, v in (params or {}).items()},
                            "singular_fibers": symbols})
    return rep.check()


def fiber_types_mod_p(model, p, params=None):
    """{point: Kodaira symbol} of the singular fibers over P^1(F_p)."""
    return {str(F.point): F.symbol for F in local_fibers(model, p, params) if F.singular}


def weil_window(total, p, rho_bound=22):
    """|N - 1 - p^2| <= 22 p, the Weil bound for a K3 surface."""
    return abs(total - 1 - p * p) <= rho_bound * p


def field_of(p):
    return GF(check_prime(p))
