"""Jacobians of genus-one quartics and plane cubics from classical invariants."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from ..exactmath import MultiRat, MultiPoly, as_rat
from .weierstrass import CasebookError, WeierstrassModel


@dataclass
class GenusOneQuartic:
    """y^2 = a s^4 + b s^3 + c s^2 + d s + e with MultiRat coefficients."""

    a: object
    b: object
    c: object
    d: object
    e: object
    var: str = "s"
    base: str = "w"

    @classmethod
    def from_poly(cls, f, var, base):
        """Split a polynomial (MultiRat) of degree <= 4 in var into its coefficients."""
        f = as_rat(f)
        if not f.den.is_constant():
            raise CasebookError("quartic must be polynomial in its variable")
        coeffs = f.num.coeff_list(var)
        if len(coeffs) > 5:
            raise CasebookError("degree exceeds 4")
        coeffs = coeffs + [MultiPoly.zero(f.field)] * (5 - len(coeffs))
        den = f.den
        vals = [MultiRat(c, den) for c in coeffs]
        e, d, c, b, a = vals
        return cls(a, b, c, d, e, var, base)

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def invariants(self):
        a, b, c, d, e = self.coefficients
        I = a * e * 12 - b * d * 3 + c * c
        J = a * c * e * 72 - a * d * d * 27 - b * b * e * 27 + b * c * d * 9 - c ** 3 * 2
        return I, J

    def polynomial(self):
        s = MultiRat.var(self.var, self.a.field)
        return self.a * s ** 4 + self.b * s ** 3 + self.c * s ** 2 + self.d * s + self.e

    def is_squarefree(self):
        I, J = self.invariants()
        return not (I ** 3 * 4 - J ** 2).is_zero() or self.a.is_zero()


def jacobian_of_quartic(q):
    """Y^2 = X^3 - 27 I X - 27 J for the genus-one quartic q."""
    I, J = q.invariants()
    if (I ** 3 * 4 - J ** 2).is_zero():
        raise CasebookError("degenerate quartic (repeated root)")
    return WeierstrassModel.short(I * -27, J * -27, base=q.base, name="Jac(quartic)")


# ternary cubics

CUBIC_MONOMIALS = [(i, j, 3 - i - j) for i in range(3, -1, -1) for j in range(3 - i, -1, -1)]
_IDX = {m: k for k, m in enumerate(CUBIC_MONOMIALS)}


def _weighted_monomials(deg):
    out = []
    for combo in combinations_with_replacement(range(10), deg):
        w = [0, 0, 0]
        for k in combo:
            for v in range(3):
                w[v] += CUBIC_MONOMIALS[k][v]
        if w == [deg, deg, deg]:
            out.append(combo)
    return out


def _derivation_image(poly, src, dst):
    """Apply the coefficient derivation induced by x_dst -> x_dst + eps x_src.

    The substitution moves c_m onto the monomial m - e_dst + e_src with weight
    m_dst, so delta c_k = (k_dst + 1) c_(k + e_dst - e_src).
    """
    out = {}
    for combo, coef in poly.items():
        counts = {}
        for k in combo:
            counts[k] = counts.get(k, 0) + 1
        for k, mult in counts.items():
            m = list(CUBIC_MONOMIALS[k])
            if m[src] == 0:
                continue
            m[src] -= 1
            m[dst] += 1
            rest = list(combo)
            rest.remove(k)
            rest.append(_IDX[tuple(m)])
            key = tuple(sorted(rest))
            out[key] = out.get(key, 0) + coef * mult * m[dst]
    return {k: v for k, v in out.items() if v}


def _nullspace(rows, ncols):
    """Rational nullspace basis of a list of sparse rows {col: value}."""
    A = [dict(r) for r in rows if r]
    pivots = {}
    reduced = []
    for r in A:
        r = {k: Fraction(v) for k, v in r.items()}
        for pc, prow in reduced:
            if pc in r:
                f = r[pc]
                for k, v in prow.items():
                    r[k] = r.get(k, 0) - f * v
                r = {k: v for k, v in r.items() if v}
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {k: v * inv for k, v in r.items()}
        new = []
        for qc, qrow in reduced:
            if pc in qrow:
                f = qrow[pc]
                for k, v in r.items():
                    qrow[k] = qrow.get(k, 0) - f * v
                qrow = {k: v for k, v in qrow.items() if v}
            new.append((qc, qrow))
        reduced = new + [(pc, r)]
        pivots[pc] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for pc, prow in reduced:
            vec[pc] = -prow.get(fcol, 0)
        basis.append(vec)
    return basis


@lru_cache(maxsize=4)
def cubic_invariant(deg):
    """The SL3 invariant of ternary cubics of degree deg (4 or 6), as {monomial combo: coeff}."""
    mons = _weighted_monomials(deg)
    rows = {}
    for src in range(3):
        for dst in range(3):
            if src == dst:
                continue
            for i, m in enumerate(mons):
                img = _derivation_image({m: 1}, src, dst)
                for key, v in img.items():
                    row = rows.setdefault((src, dst, key), {})
                    row[i] = row.get(i, 0) + v
    basis = _nullspace(list(rows.values()), len(mons))
    if len(basis) != 1:
        raise CasebookError(f"expected a one-dimensional space of degree-{deg} invariants, got {len(basis)}")
    vec = basis[0]
    poly = {mons[i]: c for i, c in enumerate(vec) if c}
    # normalize on the Weierstrass cubic y^2 z - x^3 - a x z^2 - b z^3
    val = _eval_on_weierstrass(poly, deg)
    scale = 1 / val
    return {k: v * scale for k, v in poly.items()}


def _eval_on_weierstrass(poly, deg):
    # coefficients: x^3 -> -1, y^2 z -> 1, x z^2 -> -a, z^3 -> -b; pick a = 1 (deg 4) or b = 1 (deg 6)
    c = [Fraction(0)] * 10
    c[_IDX[(3, 0, 0)]] = Fraction(-1)
    c[_IDX[(0, 2, 1)]] = Fraction(1)
    if deg == 4:
        c[_IDX[(1, 0, 2)]] = Fraction(-1)
    else:
        c[_IDX[(0, 0, 3)]] = Fraction(-1)
    total = Fraction(0)
    for combo, coef in poly.items():
        p = coef
        for k in combo:
            p *= c[k]
        total += p
    if total == 0:
        raise CasebookError("invariant vanishes on the normalizing cubic")
    return total


def _eval_invariant(poly, coeffs):
    F = coeffs[0].field
    total = MultiRat.const(0, F)
    for combo, coef in poly.items():
        if any(coeffs[k].is_zero() for k in combo):
            continue
        p = MultiRat.const(coef, F)
        for k in combo:
            p = p * coeffs[k]
        total = total + p
    return total


def cubic_coefficients(poly, vars3):
    """The 10 coefficients (in CUBIC_MONOMIALS order) of a homogeneous cubic MultiRat."""
    f = as_rat(poly)
    num, den = f.num, f.den
    if any(v in den.free_vars() for v in vars3):
        raise CasebookError("cubic has the coordinates in its denominator")
    ix = [num.vars.index(v) if v in num.vars else None for v in vars3]
    rest_vars = tuple(v for v in num.vars if v not in vars3)
    buckets = {}
    for exps, c in num.exponents():
        e = tuple(exps[i] if i is not None else 0 for i in ix)
        if sum(e) != 3:
            raise CasebookError("cubic is not homogeneous of degree 3")
        rest = tuple(exps[i] for i, v in enumerate(num.vars) if v not in vars3)
        buckets.setdefault(e, {})[rest] = c
    vals = []
    for m in CUBIC_MONOMIALS:
        d = buckets.get(m)
        p = MultiPoly.from_dict(f.field, rest_vars, d) if d else MultiPoly.zero(f.field)
        vals.append(MultiRat(p, den))
    return vals


def jacobian_of_cubic(poly, vars3, base, name="Jac(cubic)"):
    """Jacobian y^2 = x^3 + I4 x + I6 of a smooth plane cubic, normalized on Weierstrass cubics."""
    coeffs = cubic_coefficients(poly, vars3)
    A = _eval_invariant(cubic_invariant(4), coeffs)
    B = _eval_invariant(cubic_invariant(6), coeffs)
    return WeierstrassModel.short(A, B, base=base, name=name)


def homogenize(f, vars2, z):
    """Homogenize a MultiRat that is polynomial of total degree <= 3 in vars2 using z."""
    f = as_rat(f)
    num = f.num
    F = f.field
    data = {}
    allv = tuple(num.vars) + ((z,) if z not in num.vars else ())
    idx = [num.vars.index(v) if v in num.vars else None for v in vars2]
    deg = 0
    for exps, c in num.exponents():
        deg = max(deg, sum(exps[i] for i in idx if i is not None))
    if deg != 3:
        raise CasebookError("curve is not a cubic in the given coordinates")
    for exps, c in num.exponents():
        d = sum(exps[i] for i in idx if i is not None)
        e = list(exps) + ([0] if z not in num.vars else [])
        e[allv.index(z)] += 3 - d
        data[tuple(e)] = c
    return MultiRat(MultiPoly.from_dict(F, allv, data), f.den)
