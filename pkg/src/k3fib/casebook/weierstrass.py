"""Weierstrass models with rational-function coefficients, points and the group law."""

from dataclasses import dataclass

from ..exactmath import MultiRat, QQ, as_rat, substitute, rat_sqrt


class CasebookError(ValueError):
    pass


class IdentityFailure(CasebookError):
    """An expected identity of rational functions does not hold."""

    def __init__(self, message, difference=None):
        super().__init__(message if difference is None else f"{message}; difference: {difference}")
        self.difference = difference


def _r(x, field):
    return as_rat(x, field)


class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with MultiRat coefficients.

    ``base`` names the fiber (base-curve) variable; other variables are
    parameters of the ground field.
    """

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0, base="t", field=QQ, name=None, check=True):
        F = field
        for v in (a1, a2, a3, a4, a6):
            if isinstance(v, MultiRat):
                F = v.field
                break
        self.field = F
        self.a = tuple(_r(v, F) for v in (a1, a2, a3, a4, a6))
        self.base = base
        self.name = name
        self._inv = None
        if check:
            c4, c6, D = self.c4, self.c6, self.disc
            if D.is_zero():
                raise CasebookError("singular model: discriminant vanishes identically")
            if c4 ** 3 - c6 ** 2 != D * 1728:
                raise CasebookError("c4^3 - c6^2 != 1728 Delta")

    @classmethod
    def short(cls, A, B, **kw):
        return cls(0, 0, 0, A, B, **kw)

    @property
    def a1(self):
        return self.a[0]

    @property
    def a2(self):
        return self.a[1]

    @property
    def a3(self):
        return self.a[2]

    @property
    def a4(self):
        return self.a[3]

    @property
    def a6(self):
        return self.a[4]

    def _invariants(self):
        if self._inv is None:
            a1, a2, a3, a4, a6 = self.a
            b2 = a1 * a1 + a2 * 4
            b4 = a1 * a3 + a4 * 2
            b6 = a3 * a3 + a6 * 4
            b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
            c4 = b2 * b2 - b4 * 24
            c6 = -(b2 ** 3) + b2 * b4 * 36 - b6 * 216
            D = -(b2 * b2 * b8) - b4 ** 3 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9
            self._inv = {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "c6": c6, "disc": D}
        return self._inv

    @property
    def b2(self):
        return self._invariants()["b2"]

    @property
    def b4(self):
        return self._invariants()["b4"]

    @property
    def b6(self):
        return self._invariants()["b6"]

    @property
    def c4(self):
        return self._invariants()["c4"]

    @property
    def c6(self):
        return self._invariants()["c6"]

    @property
    def disc(self):
        return self._invariants()["disc"]

    @property
    def j(self):
        return self.c4 ** 3 / self.disc

    def __repr__(self):
        return f"WeierstrassModel({self.equation()})"

    def equation(self):
        names = ["x*y", "x^2", "y", "x", ""]
        lhs = "y^2"
        rhs = "x^3"
        for idx, (c, mon) in enumerate(zip(self.a, names)):
            if c.is_zero():
                continue
            term = f"({c})" + (f"*{mon}" if mon else "")
            if idx in (0, 2):
                lhs += " + " + term
            else:
                rhs += " + " + term
        return f"{lhs} = {rhs}"

    def to_json(self):
        return {"name": self.name, "base": self.base, "field": repr(self.field),
                "a": [str(c) for c in self.a], "equation": self.equation()}

    def is_short(self):
        return self.a1.is_zero() and self.a2.is_zero() and self.a3.is_zero()

    def short_form(self):
        """(A, B) of an isomorphic y^2 = x^3 + A x + B (char not 2, 3)."""
        if self.field.char in (2, 3):
            raise CasebookError("short form needs characteristic other than 2, 3")
        if self.is_short():
            return self.a4, self.a6
        return self.c4 * MultiRat.const(-1, self.field) / 48, self.c6 * MultiRat.const(-1, self.field) / 864

    def short_model(self):
        A, B = self.short_form()
        return WeierstrassModel.short(A, B, base=self.base, field=self.field, name=self.name)

    def subs(self, bindings, base=None):
        a = [substitute(c, bindings) if bindings else c for c in self.a]
        return WeierstrassModel(*a, base=base or self.base, field=self.field, name=self.name)

    def rescale(self, u):
        """The model for (x, y) -> (u^2 x, u^3 y): a_i -> u^i a_i."""
        u = _r(u, self.field)
        a = [c * u ** k for c, k in zip(self.a, (1, 2, 3, 4, 6))]
        return WeierstrassModel(*a, base=self.base, field=self.field, name=self.name)

    def to_field(self, field):
        return WeierstrassModel(*[c.to_field(field) for c in self.a], base=self.base, field=field,
                                name=self.name)

    def coefficients_equal(self, other):
        return all(x == y for x, y in zip(self.a, other.a))

    # points

    def is_on_curve(self, P):
        if P.is_infinity:
            return True
        a1, a2, a3, a4, a6 = self.a
        x, y = P.x, P.y
        return (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)).is_zero()

    def point(self, x, y):
        P = CurvePoint(_r(x, self.field), _r(y, self.field))
        if not self.is_on_curve(P):
            raise CasebookError("point is not on the curve")
        return P

    def neg(self, P):
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P, Q):
        for R in (P, Q):
            if not self.is_on_curve(R):
                raise CasebookError("point is not on the curve")
        return self._add(P, Q)

    def _add(self, P, Q):
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, a6 = self.a
        if P.x == Q.x:
            if (P.y + Q.y + a1 * Q.x + a3).is_zero():
                return INFINITY
            lam = (P.x * P.x * 3 + a2 * P.x * 2 + a4 - a1 * P.y) / (P.y * 2 + a1 * P.x + a3)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        nu = P.y - lam * P.x
        x3 = lam * lam + a1 * lam - a2 - P.x - Q.x
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(x3, y3)

    def mul(self, P, n):
        if not self.is_on_curve(P):
            raise CasebookError("point is not on the curve")
        if n < 0:
            return self.mul(self.neg(P), -n)
        R = INFINITY
        Q = P
        while n:
            if n & 1:
                R = self._add(R, Q)
            Q = self._add(Q, Q)
            n >>= 1
        return R

    def order_of(self, P, bound=20):
        R = P
        for k in range(1, bound + 1):
            if R.is_infinity:
                return k
            R = self._add(R, P)
        return None


@dataclass(frozen=True)
class CurvePoint:
    x: object = None
    y: object = None

    @property
    def is_infinity(self):
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self):
        return "O" if self.is_infinity else [str(self.x), str(self.y)]


INFINITY = CurvePoint()


def quadratic_twist(model, d):
    """Short-form twist y^2 = x^3 + A d^2 x + B d^3."""
    d = _r(d, model.field)
    if d.is_zero():
        raise CasebookError("twist by zero")
    A, B = model.short_form()
    return WeierstrassModel.short(A * d * d, B * d ** 3, base=model.base, field=model.field,
                                  name=f"{model.name or 'E'}^({d})")


def scaling_between(m1, m2):
    """r = lambda^2 with A2 = r^2 A1 and B2 = r^3 B1 on short forms, or None.

    (x, y) -> (r x, lambda^3 y) maps m1's short form onto m2's when lambda
    exists; r itself is a rational function and lambda may need a square root.
    """
    A1, B1 = m1.short_form()
    A2, B2 = m2.short_form()
    if A1.is_zero() != A2.is_zero() or B1.is_zero() != B2.is_zero():
        return None
    if not A1.is_zero() and not B1.is_zero():
        r = (B2 * A1) / (B1 * A2)
    elif B1.is_zero():
        # A2 = r^2 A1 only determines r^2
        r2 = A2 / A1
        r = rat_sqrt(r2)
        if r is None:
            return None
    else:
        # j = 0: r is determined only up to cube roots of unity; accept r = 1 alone
        r = MultiRat.const(1, m1.field)
    if A2 == A1 * r * r and B2 == B1 * r ** 3:
        return r
    return None


def isomorphic_over_base(m1, m2):
    """(lambda, r) when the short forms differ by (x, y) -> (lambda^2 x, lambda^3 y) over the field."""
    r = scaling_between(m1, m2)
    if r is None:
        return None
    lam = rat_sqrt(r)
    return (lam, r) if lam is not None else None
