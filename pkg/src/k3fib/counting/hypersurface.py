"""Exhaustive zero counts of polynomial systems over F_p, chunked on the first variable."""

import os

import numpy as np

from ..exactmath import as_rat
from .curves import CountReport
from .fp import CountingError, check_prime, fp, specialize

DEFAULT_BUDGET = 10 ** 9
BUDGET_ENV = "K3FIB_EVAL_BUDGET"
MAX_VARIABLES = 6
_GRID = 1 << 20  # points evaluated per numpy block


class BudgetExceeded(CountingError):
    pass


def evaluation_budget(budget=None):
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise CountingError(f"{BUDGET_ENV}={env!r} is not a number") from None
    return DEFAULT_BUDGET


def _as_polys(f, params):
    polys = f if isinstance(f, (list, tuple)) else [f]
    out = []
    for g in polys:
        g = specialize(as_rat(g), params)
        if not g.den.is_constant():
            raise CountingError(f"{g} is not a polynomial")
        out.append(g.num)
    return out


def _terms_mod_p(g, variables, p):
    """[(coeff mod p, exponent tuple in `variables` order)] for a MultiPoly."""
    idx = [variables.index(v) for v in g.vars]
    out = []
    for exps, c in g.exponents():
        c = fp(c, p)
        if c:
            e = [0] * len(variables)
            for i, k in zip(idx, exps):
                e[i] = k
            out.append((c, tuple(e)))
    return out


def _block_zero_mask(terms, fixed, grids, p):
    """Boolean array: where the polynomial vanishes on fixed values x grid of the rest."""
    shape = grids[0].shape if grids else ()
    acc = np.zeros(shape, dtype=np.int64)
    m = len(fixed)
    for c, e in terms:
        v = c
        for i in range(m):
            if e[i]:
                v = v * pow(fixed[i], e[i], p) % p
        if not v:
            continue
        term = np.full(shape, v, dtype=np.int64)
        for i, g in enumerate(grids):
            k = e[m + i]
            if k:
                term = term * _pow_cache(g, k, p) % p
        acc = (acc + term) % p
    return acc == 0


_POW = {}


def _pow_cache(g, k, p):
    """g^k mod p elementwise, cached per grid axis for the current scan."""
    key = (id(g), k)
    hit = _POW.get(key)
    if hit is None:
        r = np.ones_like(g)
        for _ in range(k):
            r = r * g % p
        hit = _POW[key] = r
    return hit


def count_affine_variety(polys, p, params=None, variables=None, budget=None, progress=None):
    """CountReport of common zeros in F_p^n of one polynomial or a list of them.

    Enumeration is lexicographic in ``variables`` (default: sorted names); the
    first variable indexes the chunks, and per-chunk subtotals go to
    meta["chunks"] and to ``progress(value, subtotal)`` when given.
    """
    p = check_prime(p)
    polys = _as_polys(polys, params or {})
    if variables is None:
        names = set()
        for g in polys:
            names.update(g.free_vars())
        variables = sorted(names)
    variables = list(variables)
    n = len(variables)
    if n > MAX_VARIABLES:
        raise CountingError(f"{n} variables; at most {MAX_VARIABLES} are supported")
    for g in polys:
        extra = set(g.free_vars()) - set(variables)
        if extra:
            raise CountingError(f"unbound variables {sorted(extra)}")
    cap = evaluation_budget(budget)
    if p ** n > cap:
        raise BudgetExceeded(f"{p}^{n} points exceed the evaluation budget {cap}")
    terms = [_terms_mod_p(g, variables, p) for g in polys]
    if n == 0:
        total = int(all(not t for t in terms))
        return CountReport(p, total, kind="affine", meta={"variables": [], "chunks": []})
    # inner grid over the trailing variables, outer loop over the leading ones
    inner = n - 1
    while inner > 0 and p ** inner > _GRID:
        inner -= 1
    outer = n - inner
    axes = np.meshgrid(*([np.arange(p, dtype=np.int64)] * inner), indexing="ij") if inner else []
    _POW.clear()
    chunks = []
    total = 0
    for x0 in range(p):
        sub = 0
        for rest in np.ndindex(*([p] * (outer - 1))):
            fixed = (x0,) + tuple(int(r) for r in rest)
            mask = None
            for t in terms:
                z = _block_zero_mask(t, fixed, axes, p)
                mask = z if mask is None else mask & z
            sub += int(np.count_nonzero(mask))
        chunks.append(sub)
        total += sub
        if progress:
            progress(x0, sub)
    _POW.clear()
    return CountReport(p, total, kind="affine", meta={"variables": variables, "chunks": chunks,
                                                      "equations": len(polys)})


def count_affine_hypersurface(f, p, params=None, variables=None, budget=None, progress=None):
    """Zeros of one polynomial (or a system) in F_p^n; see count_affine_variety."""
    return count_affine_variety(f, p, params, variables, budget, progress)


def brute_force_zeros(polys, p, variables):
    """Pure-Python scan used as the oracle for the vectorized counter."""
    from itertools import product
    polys = polys if isinstance(polys, (list, tuple)) else [polys]
    polys = [as_rat(g).num for g in polys]
    n = 0
    for pt in product(range(p), repeat=len(variables)):
        vals = dict(zip(variables, pt))
        if all(g.evaluate(vals).is_zero() or fp(g.evaluate(vals).constant_value(), p) == 0 for g in polys):
            n += 1
    return n


def compare_mod_p(a, b, p=None):
    """Verdict on two CountReports over the same prime field."""
    if a.p != b.p or (p is not None and a.p != p):
        raise CountingError(f"field mismatch: F_{a.p} vs F_{b.p}")
    p = a.p
    diff = a.total - b.total
    if diff == 0:
        verdict = "equal"
    elif diff % p == 0:
        verdict = "match mod p, differ absolutely"
    else:
        verdict = "differ mod p"
    return {"p": p, "total_a": a.total, "total_b": b.total, "difference": diff, "difference_mod_p": diff % p,
            "verdict": verdict}
