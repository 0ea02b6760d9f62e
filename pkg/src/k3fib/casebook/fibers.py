"""Singular fibers of Weierstrass models over k(s) from valuations at places."""

from math import inf

from ..exactmath import MultiPoly, MultiRat, NotExactDivision, UnsupportedDegree, as_rat, factor_univariate, parse
from ..fibration import FibrationError, kodaira_from_valuations, fiber
from .weierstrass import CasebookError

INFINITY_PLACE = "oo"

# fiber configurations of the extremal models with their locations in t
EXTREMAL_FIBERS = {
    "legendre": {"0": "I2", "1": "I2", "oo": "I2*"},
    "II*": {"0": "I1", "1": "I1", "oo": "II*"},
    "III*": {"0": "I2", "1": "I1", "oo": "III*"},
    "IV*": {"0": "I3", "1": "I1", "oo": "IV*"},
    "I5I5": {"0": "I5", "oo": "I5", "t^2 + 11*t - 1": "I1"},
}


class WildPlace(CasebookError):
    pass


def _poly_valuation(f, pi):
    """Multiplicity of the prime pi in the polynomial f (f nonzero)."""
    n = 0
    while True:
        try:
            q = f.exquo(pi)
        except NotExactDivision:
            return n
        f = q
        n += 1


def valuation(f, place, var):
    """Valuation of a MultiRat at a finite place (a polynomial in var) or at oo."""
    f = as_rat(f)
    if f.is_zero():
        return inf
    if place == INFINITY_PLACE:
        return f.den.degree(var) - f.num.degree(var)
    return _poly_valuation(f.num, place) - _poly_valuation(f.den, place)


def parse_place(place, var, field):
    """'oo', a value a (meaning var = a) or a polynomial in var, as a MultiPoly or INFINITY_PLACE."""
    if isinstance(place, str) and place.strip().lower() in ("oo", "inf", "infinity"):
        return INFINITY_PLACE
    p = as_rat(parse(place, field) if isinstance(place, str) else place, field)
    if not p.is_polynomial():
        raise CasebookError(f"place {place} is not a polynomial")
    p = p.as_poly()
    if var not in p.free_vars():
        p = MultiPoly.variable(var, field) - p
    if p.degree(var) < 1:
        raise CasebookError(f"place {place} is constant")
    return p


def place_label(place, var):
    if place == INFINITY_PLACE:
        return INFINITY_PLACE
    if place.degree(var) == 1:
        lc = place.leading_coeff(var)
        root = MultiRat(MultiPoly.variable(var, place.field) * lc - place, MultiPoly.constant(1, place.field)) / \
            MultiRat(lc, MultiPoly.constant(1, place.field))
        return str(root)
    return str(place)


def _minimal_triple(v4, v6, vd):
    """Shift (v4, v6, vd) by (4k, 6k, 12k) with k the least integer making c4, c6 integral."""
    ks = []
    if v4 != inf:
        ks.append(-(v4 // 4))
    if v6 != inf:
        ks.append(-(v6 // 6))
    k = max(ks)
    return (v4 + 4 * k if v4 != inf else None, v6 + 6 * k if v6 != inf else None, vd + 12 * k), k


def fiber_at(model, place, var=None):
    """(KodairaFiber or None, (v_c4, v_c6, v_disc), k) at one place of the base."""
    var = var or model.base
    p = model.field.char
    if p in (2, 3):
        raise WildPlace(f"residue characteristic {p}: Tate's algorithm is needed and not implemented here")
    v4 = valuation(model.c4, place, var)
    v6 = valuation(model.c6, place, var)
    vd = valuation(model.disc, place, var)
    (a, b, d), k = _minimal_triple(v4, v6, vd)
    if d == 0:
        return None, (a, b, d), k
    try:
        return kodaira_from_valuations(a, b, d), (a, b, d), k
    except FibrationError as err:
        raise CasebookError(f"at {place_label(place, var)}: {err}") from None


def candidate_places(model, var=None):
    """Irreducible factors of the discriminant and coefficient denominators, plus oo."""
    var = var or model.base
    extra = set(model.disc.free_vars()) - {var}
    if extra:
        raise CasebookError(f"parameters {sorted(extra)} present: pass the places explicitly")
    polys = [model.disc.num, model.disc.den] + [c.den for c in model.a]
    places = []
    seen = set()
    for f in polys:
        if f.is_constant():
            continue
        try:
            _, facs = factor_univariate(f)
        except (ValueError, UnsupportedDegree) as err:
            raise CasebookError(f"cannot factor the discriminant: {err}") from None
        for g, _ in facs:
            key = str(g)
            if key not in seen:
                seen.add(key)
                places.append(g)
    places.sort(key=lambda g: (g.degree(var), str(g)))
    return places + [INFINITY_PLACE]


def analyze_fibers(model, places=None, include_smooth=False):
    """List of (place label, KodairaFiber) for the singular fibers of model.

    Without places the model must be defined over Q or F_p with no free
    parameters, and the discriminant is factored. Places are values of the
    base variable, polynomials in it, or 'oo'.
    """
    var = model.base
    if var is None:
        raise CasebookError("model has no base variable")
    if places is None:
        pl = candidate_places(model, var)
    else:
        pl = [parse_place(p, var, model.field) for p in places]
    out = []
    for p in pl:
        f, _, _ = fiber_at(model, p, var)
        if f is None:
            if include_smooth:
                out.append((place_label(p, var), fiber("I0")))
            continue
        out.append((place_label(p, var), f))
    return out


def fiber_summary(fibers):
    """{place: symbol} from the output of analyze_fibers."""
    return {p: f.symbol for p, f in fibers}
