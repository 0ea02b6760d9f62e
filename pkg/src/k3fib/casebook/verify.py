"""Replays the substitution chains between the explicit fibrations as exact identities."""

import time
from itertools import product

from ..exactmath import MultiRat, QQ, parse, rat_sqrt, substitute
from .jacobians import GenusOneQuartic, homogenize, jacobian_of_cubic, jacobian_of_quartic
from .models import (extremal_at, extremal_model, inose_surface, legendre_kummer_target,
                     z2_surface)
from .weierstrass import (CasebookError, IdentityFailure, WeierstrassModel, quadratic_twist,
                          scaling_between)

CASES = ("legendre_to_kummer", "IIstar", "IIIstar", "IVstar")
REPORT_SCHEMA = 1


def _v(name):
    return MultiRat.var(name, QQ)


class Report:
    def __init__(self, case, claim):
        self.case = case
        self.claim = claim
        self.steps = []
        self.discrepancies = []
        self.final = None

    def step(self, name, ok=True, **data):
        entry = {"step": name, "ok": bool(ok)}
        for k, v in data.items():
            entry[k] = v.equation() if isinstance(v, WeierstrassModel) else (str(v) if isinstance(v, MultiRat) else v)
        self.steps.append(entry)
        return entry

    def require(self, name, cond, message, difference=None, **data):
        self.step(name, cond, **data)
        if not cond:
            raise IdentityFailure(f"{self.case}: {message}", difference)

    @property
    def ok(self):
        return all(s["ok"] for s in self.steps if s.get("required", True))

    def to_json(self):
        return {"schema_version": REPORT_SCHEMA, "case": self.case, "claim": self.claim, "ok": self.ok,
                "final_equation": self.final, "steps": self.steps, "discrepancies": self.discrepancies}


def _same(a, b):
    return (a - b).is_zero()


def _j_follows(before, after, bindings):
    """j(after) equals j(before) pulled back along the base substitution."""
    jb = before.j
    if bindings:
        jb = substitute(jb, bindings)
    return _same(jb, after.j)


def _rescaling(report, name, source, target):
    r = scaling_between(source, target)
    lam = rat_sqrt(r) if r is not None else None
    ok = lam is not None
    if r is not None and lam is None:
        detail = f"r = {r} is not a square: the models are twists of each other"
    else:
        detail = None
    report.step(name, ok, source=source, target=target, r=str(r) if r is not None else None,
                lam=str(lam) if lam is not None else None, detail=detail)
    return lam


# Legendre fibration to the Kummer surface

def verify_legendre_to_kummer():
    rep = Report("legendre_to_kummer",
                 "the base-changed Legendre fibration is isomorphic to y^2 = w(w-1)(w-t2) u(u-1)(u-t1)")
    s, t1, t2, w, u = (_v(n) for n in ("s", "t1", "t2", "w", "u"))
    E = extremal_model("legendre")
    Z = z2_surface(E)
    rep.step("z2_surface", _j_follows(E, Z, {"t": s * (s - t1 - t2 + 1) / (s - t1 * t2)}), model=Z)
    delta = t1 + t2 - 1
    tt = s * (s - delta) / (s - t1 * t2)
    x = -(s - delta) * (s - t1 * w) / ((s - t1 * t2) * (w - 1))
    xm1 = -(s - t1) * (s - t2 - (t1 - 1) * w) / ((s - t1 * t2) * (w - 1))
    xmt = -(s - delta) * (s - t1) * w / ((s - t1 * t2) * (w - 1))
    rep.require("x - 1 consistent", _same(x - 1, xm1), "x - 1 disagrees", x - 1 - xm1)
    rep.require("x - t consistent", _same(x - tt, xmt), "x - t disagrees", x - tt - xmt)
    cubic = x * (x - 1) * (x - tt)
    mid = -w * (w - 1) * (s - t1 * t2) * (s - t1 * w) * (s - t2 - (t1 - 1) * w)
    q1 = rat_sqrt(cubic / mid)
    rep.require("square factor absorbed into y", q1 is not None, "x(x-1)(x-t) / target is not a square",
                intermediate="y^2 = " + str(mid), factor=q1)
    sub = {"s": -(w - t2) * u + t1 * w}
    final = legendre_kummer_target()
    mid2 = substitute(mid, sub)
    q2 = rat_sqrt(mid2 / final)
    rep.require("s = -(w - t2) u + t1 w", q2 is not None, "the last substitution leaves a non-square factor",
                intermediate="y^2 = " + str(mid2), factor=q2)
    # single identity on the twisted model: X = v^2 x, Y = v^3 q y_K
    v = s - t1 * t2
    X = v * v * x
    rhs = X ** 3 + Z.a2 * X * X + Z.a4 * X + Z.a6
    lhs = substitute(rhs, sub)
    scale = substitute(v ** 6 * q1 * q1, sub) * q2 * q2
    diff = lhs - scale * final
    rep.require("combined identity", diff.is_zero(),
                "the composite substitution does not carry the surface to the Kummer model", diff,
                substitution="X = (s - t1 t2)^2 x(w, s), s = -(w - t2) u + t1 w")
    rep.final = "y^2 = w*(w - 1)*(w - t2)*u*(u - 1)*(u - t1)"
    return rep


# II*: the base change equals the Inose surface after a Moebius change of s

def verify_IIstar():
    rep = Report("IIstar", "the base change becomes the reference Inose equation after s = t2(T t1 - t2 + 1)/T")
    E = extremal_model("II*")
    Z = z2_surface(E)
    tau = WeierstrassModel.short(parse("-3*(s - t1*t2)^4"),
                                 parse("-2*(2*s^2 - (2*t1 + 2*t2 - 1)*s + t1*t2)*(s - t1*t2)^5"), base="s")
    rep.require("z2_surface equals the reference model", Z.coefficients_equal(tau),
                "z2_surface(II*) differs from the reference base change", Z.a6 - tau.a6, model=Z)
    sub = {"s": parse("t2*(T*t1 - t2 + 1)/T")}
    W = Z.subs(sub, base="T")
    rep.step("s = t2 (T t1 - t2 + 1)/T", _j_follows(Z, W, sub), model=W)
    ref = WeierstrassModel.short(parse("-3"), parse(
        "2*(2*t1*(t1 - 1)*T - (2*t1 - 1)*(2*t2 - 1) + 2*t2*(t2 - 1)/T)"), base="T", name="Ino (reference)")
    lam = _rescaling(rep, "match reference Inose equation", W, ref)
    if lam is None:
        raise IdentityFailure("IIstar: no rescaling (X, Y) -> (l^2 X, l^3 Y) identifies the models")
    rep.final = ref.equation()
    formula = inose_surface(extremal_at("II*", "t1"), extremal_at("II*", "t2"))
    r = scaling_between(formula, ref)
    rep.discrepancies.append({"note": "the general Inose formula with these inputs relates to the reference "
                              "equation by r = %s" % r})
    return rep


# III*: Jacobian of the quartic fibration with II* fibers at w = 0, oo

QUARTIC_III = ("w*s^4 - 3*t1*t2*w*s^3 + (3*t1^2*t2^2*w - 2*w^2)*s^2 - (t1^3*t2^3*w - 4*t1*t2*w^2 - w^3)*s"
               " - 2*t1^2*t2^2*w^2 - (t1 + t2 - 1)*w^3")
INO_III = ("4", "4*t1 + 4*t2 - 3*t1*t2", "-t1^2*(t1 - 1)*T + 2*t1*t2 - t2^2*(t2 - 1)/T")


def _spec_j(model, values):
    return substitute(model.j, values)


def search_fiber_map(model, target, src, base_map, dst, params=("t1", "t2"), bound=2, probe=None):
    """Find alpha with src = base_map(alpha * dst) identifying the two models.

    alpha runs over +-prod p^a (p - 1)^b with |a|, |b| <= bound. Candidates are
    screened on j at a rational point and confirmed symbolically; returns
    (alpha, substitution, lambda, r) or None.
    """
    probe = probe or {p: MultiRat.const(v) for p, v in zip(params + (dst,), (7, 11, 13, 17, 19))}
    jt = substitute(target.j, probe)
    jm = model.j
    D = _v(dst)
    rng = range(-bound, bound + 1)
    for e in product(rng, repeat=2 * len(params)):
        for sign in (1, -1):
            alpha = MultiRat.const(sign)
            for k, p in enumerate(params):
                alpha = alpha * _v(p) ** e[2 * k] * (_v(p) - 1) ** e[2 * k + 1]
            expr = substitute(base_map, {dst: alpha * D})
            if not _same(substitute(jm, dict(probe, **{src: substitute(expr, probe)})), jt):
                continue
            moved = model.subs({src: expr}, base=dst)
            r = scaling_between(moved, target)
            lam = rat_sqrt(r) if r is not None else None
            if lam is not None:
                return alpha, expr, lam, r
    return None


def verify_IIIstar():
    rep = Report("IIIstar", "the Jacobian of the genus-one quartic fibration is the reference Inose equation")
    q = GenusOneQuartic.from_poly(parse(QUARTIC_III), "s", "w")
    J = jacobian_of_quartic(q)
    rep.step("jacobian_of_quartic", True, model=J, invariants=[str(i) for i in q.invariants()])
    target = WeierstrassModel(0, parse(INO_III[0]), 0, parse(INO_III[1]), parse(INO_III[2]), base="T",
                              name="Ino (reference)")
    ref_map = parse("-t2^2*(t2 - 1)*T")
    JT = J.subs({"w": ref_map}, base="T")
    r = scaling_between(JT, target)
    lam = rat_sqrt(r) if r is not None else None
    if lam is not None:
        rep.step("w = -t2^2 (t2 - 1) T", True, model=JT, lam=str(lam))
        found = (ref_map, lam, r)
    else:
        rep.step("w = -t2^2 (t2 - 1) T", False, model=JT, required=False,
                 detail="reference substitution does not identify the models (j-invariants differ)")
        found = search_fiber_map(J, target, "w", ref_map, "T")
        if found is None:
            raise IdentityFailure("IIIstar: no rescaling T -> alpha T of the fiber substitution identifies the "
                                  "Jacobian with the Inose equation")
        alpha, expr, lam, r = found
        JT = J.subs({"w": expr}, base="T")
        rep.step("w = -t2^2 (t2 - 1) (alpha T)", True, alpha=str(alpha), substitution=f"w = {expr}", model=JT,
                 lam=str(lam))
        rep.discrepancies.append({"note": "the fiber substitution needs the linear change T -> alpha T",
                                  "alpha": str(alpha)})
    lam_f = _rescaling(rep, "agrees with the Inose formula", inose_surface(extremal_at("III*", "t1"),
                                                                             extremal_at("III*", "t2")), target)
    if lam_f is None:
        raise IdentityFailure("IIIstar: the reference equation is not the Inose surface of E(t1) x E(t2)")
    rep.final = target.equation()
    return rep


# IV*: a 3-neighbor step followed by the Jacobian of a plane cubic

CUBIC_IV = ("t2^6*(t2 - 1)^2*xp^3 + 12*t2^3*(t2 - 1)*w*(s - t1*t2)*xp + 8*t2^3*(t2 - 1)*w*(s - t1 - t2 + 1)"
            " - 8*w^2*s*(s - t1*t2)^2")
JAC_IV_REFERENCE = ("3*(8*t2 - 9)*(8*t1 - 9)",
                  "2*(32*t1^3*(t1 - 1)*w + (8*t2^2 - 36*t2 + 27)*(8*t1^2 - 36*t1 + 27) + 32*t2^3*(t2 - 1)/w)")


JAC_IV_CONSISTENT = ("-3*(8*t2 - 9)*(8*t1 - 9)",
                     "2*(32*t1^3*(t1 - 1)*w - (8*t2^2 - 36*t2 + 27)*(8*t1^2 - 36*t1 + 27) + 32*t2^3*(t2 - 1)/w)")


def verify_IVstar():
    rep = Report("IVstar", "the Jacobian of the cubic fibration equals the -3 twist of the Inose surface")
    s, t1, t2, w, xp = (_v(n) for n in ("s", "t1", "t2", "w", "xp"))
    E = extremal_model("IV*")
    Z = z2_surface(E)
    base_ch = WeierstrassModel(0, parse("9*(s - t1*t2)^2"), 0, parse("24*s*(s - t1 - t2 + 1)*(s - t1*t2)^3"),
                               parse("16*s^2*(s - t1 - t2 + 1)^2*(s - t1*t2)^4"), base="s")
    rep.require("z2_surface equals the reference base change", Z.coefficients_equal(base_ch),
                "z2_surface(IV*) differs from the reference model", model=Z)
    u = s - t1 * t2
    tangent = 3 * u * _v("x") + 4 * s * (s - t1 - t2 + 1) * u * u
    P = Z.point(0, 4 * s * (s - t1 - t2 + 1) * u * u)
    rep.require("3-torsion section", Z.mul(P, 3).is_infinity, "(0, 4s(s-d)u^2) is not 3-torsion")
    c = t2 ** 3 * (t2 - 1)
    y = tangent - w * 8 * s * s * u ** 4 / c
    curve = y * y - (_v("x") ** 3 + Z.a2 * _v("x") ** 2 + Z.a4 * _v("x") + Z.a6)
    cub = parse(CUBIC_IV)
    G = substitute(curve, {"x": xp * 2 * s * u * u})
    ratio = G / cub
    ok = "xp" not in ratio.free_vars()
    rep.require("elliptic parameter gives the cubic", ok, "substituting the parameter does not give the cubic",
                factor=ratio, substitution="x = 2 s (s - t1 t2)^2 xp")
    literal = substitute(curve, {"x": xp / (2 * s * u * u)}) / cub
    if "xp" in literal.free_vars():
        rep.discrepancies.append({"note": "with xp = 2 s (s - t1 t2)^2 x as stated the cubic does not appear; "
                                  "the inverse relation is used"})
    F = homogenize(cub, ("xp", "s"), "h")
    J = jacobian_of_cubic(F, ("xp", "s", "h"), "w")
    rep.step("jacobian_of_cubic", True, model=J)
    ino = inose_surface(extremal_at("IV*", "t1"), extremal_at("IV*", "t2"))
    tw = quadratic_twist(ino, -3).subs({"T": w}, base="w")
    rep.step("quadratic_twist(Ino, -3), T = w", _same(quadratic_twist(ino, -3).j, ino.j), model=tw)
    lam = _rescaling(rep, "Jacobian equals the twist", J, tw)
    if lam is None:
        raise IdentityFailure("IVstar: the Jacobian is not the -3 twist of the Inose surface")
    ref = WeierstrassModel.short(parse(JAC_IV_REFERENCE[0]), parse(JAC_IV_REFERENCE[1]), base="w")
    if scaling_between(J, ref) is None:
        fixed = WeierstrassModel.short(parse(JAC_IV_CONSISTENT[0]), parse(JAC_IV_CONSISTENT[1]), base="w")
        rf = scaling_between(J, fixed)
        rep.step("sign-corrected Jacobian", rf is not None, model=fixed, r=str(rf))
        rep.discrepancies.append({"note": "the reference Jacobian has a different j-invariant from the Jacobian "
                                  "of the reference cubic; flipping the signs of A and of the middle term fixes it",
                                  "consistent_form": fixed.equation()})
    rep.final = tw.equation()
    return rep


_DISPATCH = {"legendre_to_kummer": verify_legendre_to_kummer, "IIstar": verify_IIstar,
             "IIIstar": verify_IIIstar, "IVstar": verify_IVstar}


def verify_case(case):
    key = {c.lower(): c for c in CASES}.get(str(case).lower().replace("*", "star"))
    if key is None:
        raise CasebookError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    t0 = time.perf_counter()
    rep = _DISPATCH[key]()
    rep.elapsed = time.perf_counter() - t0
    return rep
