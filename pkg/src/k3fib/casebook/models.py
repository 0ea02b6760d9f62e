"""The explicit fibrations, base changes, coincidence curves and Kummer/Inose models."""

from dataclasses import dataclass, field
from itertools import combinations

from ..exactmath import MultiPoly, MultiRat, QQ, as_rat, parse, substitute
from .weierstrass import CasebookError, CurvePoint, WeierstrassModel

EXTREMAL_EQUATIONS = {
    "legendre": ("0", "-(t + 1)", "0", "t", "0"),
    "II*": ("0", "0", "0", "-3", "-2*(2*t - 1)"),
    "III*": ("0", "-2", "0", "t", "0"),
    "IV*": ("0", "9", "0", "24*t", "16*t^2"),
    "I5I5": ("0", "t^2 + 1", "0", "-4*t*(t^2 + t - 1)", "4*t^2*(t^2 + 1)"),
}

_ALIASES = {"ii*": "II*", "iistar": "II*", "iii*": "III*", "iiistar": "III*", "iv*": "IV*",
            "ivstar": "IV*", "i5i5": "I5I5", "legendre": "legendre"}

# torsion generators of the extremal families
EXTREMAL_TORSION = {
    "IV*": (("0", "4*t"), 3),
    "I5I5": (("2*t", "4*t"), 5),
}


def canonical_name(name):
    key = _ALIASES.get(str(name).strip().lower().replace("_", "").replace("^", ""))
    if key is None:
        raise CasebookError(f"unknown extremal model {name!r}; expected one of {sorted(EXTREMAL_EQUATIONS)}")
    return key


def extremal_model(name, field=QQ, var="t"):
    key = canonical_name(name)
    coeffs = [parse(c, field) for c in EXTREMAL_EQUATIONS[key]]
    if var != "t":
        coeffs = [substitute(c, {"t": MultiRat.var(var, field)}) for c in coeffs]
    return WeierstrassModel(*coeffs, base=var, field=field, name=key)


def torsion_point(name, field=QQ):
    """(model, generator, order) for the families with a known torsion generator."""
    key = canonical_name(name)
    (x, y), n = EXTREMAL_TORSION[key]
    E = extremal_model(key, field)
    return E, E.point(parse(x, field), parse(y, field)), n


def legendre_curve(t, field=QQ):
    """y^2 = x(x-1)(x-t) with t a constant of the base field(s)."""
    t = as_rat(t, field)
    return WeierstrassModel(0, -(t + 1), 0, t, 0, base=None, field=t.field, name="legendre")


def extremal_at(name, value, field=QQ):
    """The curve of an extremal family with t replaced by a constant or parameter name."""
    E = extremal_model(name, field)
    v = MultiRat.var(value, field) if isinstance(value, str) else as_rat(value, field)
    return E.subs({"t": v}, base=None)


# the double cover coming from the r = 3 coincidences

def cover_map(field=QQ, t1="t1", t2="t2", s="s"):
    S, T1, T2 = (MultiRat.var(v, field) for v in (s, t1, t2))
    return S * (S - T1 - T2 + 1) / (S - T1 * T2)


def z2_surface(E, field=None, t1="t1", t2="t2", s="s"):
    """Base change of E along t = s(s - t1 - t2 + 1)/(s - t1 t2), twisted by u = s - t1 t2."""
    F = field or E.field
    u = MultiRat.var(s, F) - MultiRat.var(t1, F) * MultiRat.var(t2, F)
    pulled = E.subs({E.base: cover_map(F, t1, t2, s)}, base=s)
    out = pulled.rescale(u)
    out.name = f"Z2({E.name})" if E.name else "Z2"
    return out


# Inose surfaces

def _odd_short(E):
    if not (E.a1.is_zero() and E.a3.is_zero()):
        raise CasebookError("Inose formulas need y^2 = x^3 + a2 x^2 + a4 x + a6")
    if E.field.char == 2:
        raise CasebookError("characteristic 2 base")
    return E.a2, E.a4, E.a6


def _inose_pieces(E1, E2, literal_signs):
    a2, a4, a6 = _odd_short(E1)
    b2, b4, b6 = _odd_short(E2)

    def disc(c2, c4, c6):
        return (c2 ** 3 * c6 * 4 - c2 * c2 * c4 * c4 - c2 * c4 * c6 * 18 + c4 ** 3 * 4 + c6 * c6 * 27) * -16

    def cc6(c2, c4, c6):
        return (c2 ** 3 * 2 - c2 * c4 * 9 + c6 * 27) * -32

    sign = 1 if literal_signs else -1
    middle = (cc6(a2, a4, a6) * b6 + a2 * a4 * b2 * b4 * (32 * sign) - a6 * b6 * (864 * sign)
              + cc6(b2, b4, b6) * a6)
    A2 = a2 * b2 * 4
    A4 = (a2 * a2 * b4 - a4 * b4 * 3 + a4 * b2 * b2) * 16
    return A2, A4, disc(a2, a4, a6), middle, disc(b2, b4, b6)


def inose_surface(E1, E2, T="T", literal_signs=False):
    """Ino(E1 x E2) over k(T).

    The default constant term is the one confirmed by the cubic-invariant
    Jacobian of Inose's pencil; ``literal_signs=True`` flips the
    signs of the 32 and 864 terms, the variant that fails that check.
    """
    A2, A4, D1, M, D2 = _inose_pieces(E1, E2, literal_signs)
    Tv = MultiRat.var(T, A2.field)
    A6 = D1 * Tv - M + D2 / Tv
    return WeierstrassModel(0, A2, 0, A4, A6, base=T, field=A2.field, name="Ino")


def inose_pencil_jacobian(E1, E2, t="t", literal_signs=False):
    """Weierstrass equation of the Jacobian of Inose's pencil (Inose surface with T = t^2)."""
    A2, A4, D1, M, D2 = _inose_pieces(E1, E2, literal_signs)
    tv = MultiRat.var(t, A2.field)
    A6 = D1 * tv * tv - M + D2 / (tv * tv)
    return WeierstrassModel(0, A2, 0, A4, A6, base=t, field=A2.field, name="Jac(Inose pencil)")


# surface models in explicit ambient spaces

@dataclass
class SurfaceModel:
    """Zero set of ``poly``.  ``gradings`` maps each grading name to variable weights.

    With ``homogeneous`` true every monomial has the declared degree in each
    grading; otherwise the declared degree is the maximal degree.
    """

    name: str
    poly: MultiPoly
    gradings: dict
    degrees: tuple
    homogeneous: bool = True
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        got = self.multidegree()
        if tuple(got) != tuple(self.degrees):
            raise CasebookError(f"{self.name}: declared degrees {self.degrees} but polynomial has {got}")

    def _grading_degrees(self, weights):
        vals = set()
        for exps, _ in self.poly.exponents():
            vals.add(sum(weights.get(v, 0) * e for v, e in zip(self.poly.vars, exps)))
        return vals

    def multidegree(self):
        out = []
        for name, weights in self.gradings.items():
            vals = self._grading_degrees(weights)
            if self.homogeneous:
                if len(vals) != 1:
                    raise CasebookError(f"{self.name}: not homogeneous for grading {name}")
                out.append(vals.pop())
            else:
                out.append(max(vals))
        return tuple(out)

    def specialize(self, values):
        """Substitute numeric or symbolic values for parameters."""
        p = self.poly.evaluate(values) if values else self.poly
        return p

    def to_json(self):
        return {"name": self.name, "equation": f"{self.poly} = 0",
                "gradings": {k: dict(sorted(v.items())) for k, v in self.gradings.items()},
                "degrees": list(self.degrees), "homogeneous": self.homogeneous, "notes": self.notes}


def _cubic_poly(E, var, field):
    a2, a4, a6 = _odd_short(E)
    X = MultiRat.var(var, field)
    f = X ** 3 + a2 * X * X + a4 * X + a6
    if not f.is_polynomial():
        raise CasebookError("curve coefficients must be polynomial in the parameters")
    return f.as_poly()


def kummer_product_models(E1, E2, field=None):
    """Inose's pencil on Km(E1 x E2) and the double cover y^2 = f2(w) f1(u)."""
    F = field or E1.field
    t = MultiPoly.variable("t", F)
    pencil = _cubic_poly(E1, "z", F) * t * t - _cubic_poly(E2, "x", F)
    y = MultiPoly.variable("y", F)
    double = y * y - _cubic_poly(E2, "w", F) * _cubic_poly(E1, "u", F)
    return {
        "pencil": SurfaceModel("Inose pencil", pencil, {"x": {"x": 1}, "z": {"z": 1}, "t": {"t": 1}},
                               (3, 3, 2), homogeneous=False),
        "legendre222": SurfaceModel("Kummer double cover", double,
                                    {"w": {"w": 1}, "u": {"u": 1}, "y": {"y": 1}}, (3, 3, 2),
                                    homogeneous=False),
    }


def kummer_as_fibration(E1, E2, base="w"):
    """The double cover y^2 = f2(w) f1(u) as the twist of E1 by f2(w), a Weierstrass model over k(w)."""
    F = E1.field
    a2, a4, a6 = _odd_short(E1)
    d = MultiRat(_cubic_poly(E2, base, F))
    return WeierstrassModel(0, a2 * d, 0, a4 * d * d, a6 * d ** 3, base=base, field=F, name="Km fibration")


def legendre_kummer_target(field=QQ):
    """y^2 = w(w-1)(w-t2) u(u-1)(u-t1) as a rational function (the right-hand side)."""
    w, u, t1, t2 = (MultiRat.var(v, field) for v in ("w", "u", "t1", "t2"))
    return w * (w - 1) * (w - t2) * u * (u - 1) * (u - t1)


# coincidence spaces

def _e_sym(vals):
    one = vals[0] * 0 + 1
    out = []
    for k in range(1, len(vals) + 1):
        total = vals[0] * 0
        for combo in combinations(vals, k):
            term = one
            for v in combo:
                term = term * v
            total = total + term
        out.append(total)
    return out


def coincidence3(field=QQ):
    """(s^2 - (t1+t2+t3-1)s + t1 t2 t3, t3 = s(s - t1 - t2 + 1)/(s - t1 t2))."""
    s, t1, t2, t3 = (MultiPoly.variable(v, field) for v in ("s", "t1", "t2", "t3"))
    q = s * s - (t1 + t2 + t3 - 1) * s + t1 * t2 * t3
    return q, cover_map(field)


def coincidence3_equations(field=QQ):
    """(t_i - 1)(t_i - a)(t_i - d) - b t_i for i = 1, 2, 3 as MultiPolys."""
    a, b, d = (MultiPoly.variable(v, field) for v in ("a", "b", "d"))
    out = []
    for i in (1, 2, 3):
        ti = MultiPoly.variable(f"t{i}", field)
        out.append((ti - 1) * (ti - a) * (ti - d) - b * ti)
    return out


def _resultant_linear(f, g, var):
    """Res_var of two polynomials of degree <= 1 in var."""
    f1, f0 = f.coeffs_in(var).get(1), f.coeffs_in(var).get(0)
    g1, g0 = g.coeffs_in(var).get(1), g.coeffs_in(var).get(0)
    z = MultiPoly.zero(f.field)
    f1, f0, g1, g0 = (c if c is not None else z for c in (f1, f0, g1, g0))
    return f1 * g0 - f0 * g1


def coincidence3_elimination(field=QQ):
    """Eliminate b from the r = 3 equations and recover the quadratic satisfied by a and d.

    Each equation is affine in b, sigma = a + d and pi = a d; the resultants in
    b of the pairs (1, 2) and (1, 3) are solved for (sigma, pi). Returns a dict
    with sigma, pi, b (as MultiRat in t1, t2, t3), the quadratic s^2 - sigma s
    + pi, its discriminant in s, and that discriminant's discriminant in t3.
    """
    sg, pi_, b = (MultiPoly.variable(v, field) for v in ("sigma", "pi", "b"))
    eqs = []
    for i in (1, 2, 3):
        ti = MultiPoly.variable(f"t{i}", field)
        # (t - 1)(t^2 - sigma t + pi) - b t
        eqs.append((ti - 1) * (ti * ti - sg * ti + pi_) - b * ti)
    r12 = _resultant_linear(eqs[0], eqs[1], "b")
    r13 = _resultant_linear(eqs[0], eqs[2], "b")

    def affine(f):
        c = f.coeffs_in("sigma")
        cs = c.get(1, MultiPoly.zero(field))
        rest = c.get(0, MultiPoly.zero(field))
        cp = rest.coeffs_in("pi")
        return (MultiRat(cs), MultiRat(cp.get(1, MultiPoly.zero(field))), MultiRat(cp.get(0, MultiPoly.zero(field))))

    a1, b1, c1 = affine(r12)
    a2, b2, c2 = affine(r13)
    det = a1 * b2 - a2 * b1
    if det.is_zero():
        raise CasebookError("the eliminated system is degenerate")
    sigma = (-c1 * b2 + c2 * b1) / det
    pi = (-a1 * c2 + a2 * c1) / det
    e1 = MultiRat(eqs[0])
    bb = substitute(e1 + MultiRat(b) * MultiRat.var("t1", field), {"sigma": sigma, "pi": pi}) / MultiRat.var("t1", field)
    s = MultiRat.var("s", field)
    quad = s * s - sigma * s + pi
    disc_s = sigma * sigma - pi * 4
    dq = disc_s.as_poly()
    c = dq.coeffs_in("t3")
    zero = MultiPoly.zero(field)
    q2, q1, q0 = (c.get(k, zero) for k in (2, 1, 0))
    disc_t3 = MultiRat(q1 * q1 - q2 * q0 * 4)
    return {"sigma": sigma, "pi": pi, "b": bb, "quadratic": quad, "disc_s": disc_s, "disc_t3": disc_t3,
            "equations": [MultiRat(e) for e in eqs]}


def coincidence4(field=QQ, base="t4"):
    """Weierstrass model of the r = 4 coincidence curve, its six points P_ij and T = (0, 0)."""
    ts = [MultiRat.var(f"t{i}", field) for i in range(1, 5)]
    e1, e2, e3, e4 = _e_sym(ts)
    E = WeierstrassModel(e1, -e2 + e3 - e4 * 2, 0, (1 - e1 + e2 - e3 + e4) * e4, 0, base=base, field=field,
                         name="C")
    pts = {}
    for i, j in combinations(range(4), 2):
        k, l = [m for m in range(4) if m not in (i, j)]
        ti, tj, tk, tl = ts[i], ts[j], ts[k], ts[l]
        x = ti * (ti - 1) * tj * (tj - 1)
        y = x * (-ti * tj + tk * tl - tk - tl)
        pts[(i + 1, j + 1)] = CurvePoint(x, y)
    T = CurvePoint(MultiRat.const(0, field), MultiRat.const(0, field))
    return E, pts, T


def z3_model(field=QQ):
    """The two fibrations whose fiber product over the t-line is Z^3 of the Legendre family.

    C is the r = 4 coincidence curve with t4 renamed t; E is the Legendre fibration.
    """
    C, pts, T = coincidence4(field)
    Cb = C.subs({"t4": MultiRat.var("t", field)}, base="t")
    Cb.name = "C"
    pts = {k: CurvePoint(substitute(P.x, {"t4": MultiRat.var("t", field)}),
                         substitute(P.y, {"t4": MultiRat.var("t", field)})) for k, P in pts.items()}
    return {"C": Cb, "E": extremal_model("legendre", field), "points": pts, "torsion": T}


# Kummer threefold

KUMMER3_HODGE = {"h11": 51, "h21": 3, "h12": 3, "h22": 51, "h10": 0, "h20": 0, "h30": 1,
                 "blown_up_curves": 48}


def kummer3_models(t=("t1", "t2", "t3"), field=QQ):
    """Km(E1 x E2 x E3) for Legendre curves and its K3-fibered pencil in (P^1)^3.

    Each factor is y_i^2 = x_i z_i (x_i - z_i)(x_i - t_i z_i), the quartic form of
    the Legendre cubic, so the threefold has degree 4 in every grading.
    """
    F = field
    params = [MultiPoly.variable(v, F) if isinstance(v, str) else MultiPoly.constant(v, F) for v in t]
    y = MultiPoly.variable("y", F)
    xs = [MultiPoly.variable(f"x{i}", F) for i in (1, 2, 3)]
    zs = [MultiPoly.variable(f"z{i}", F) for i in (1, 2, 3)]
    rhs = MultiPoly.constant(1, F)
    for x, z, ti in zip(xs, zs, params):
        rhs = rhs * x * z * (x - z) * (x - ti * z)
    three = y * y - rhs
    weights = {}
    for i in (1, 2, 3):
        weights[f"G{i}"] = {"y": 2, f"x{i}": 1, f"z{i}": 1}
    threefold = SurfaceModel("Kummer threefold", three, weights, (4, 4, 4), notes=dict(KUMMER3_HODGE))
    u = MultiPoly.variable("u", F)
    lhs = u * u
    right = MultiPoly.constant(1, F)
    for x, z, ti in zip(xs, zs, params):
        lhs = lhs * x * z
        right = right * (x - z) * (x - ti * z)
    fib = SurfaceModel("Kummer threefold K3 pencil fiber", lhs - right,
                       {f"P{i}": {f"x{i}": 1, f"z{i}": 1} for i in (1, 2, 3)}, (2, 2, 2))
    return {"threefold": threefold, "pencil_fiber": fib, "hodge": dict(KUMMER3_HODGE)}
