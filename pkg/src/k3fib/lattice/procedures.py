"""Constructive lattice procedures: isotropic divisors, prime-square removal, unimodular embedding."""

from fractions import Fraction
from itertools import combinations, product
from math import gcd

from ..exactmath import is_prime, rational_inverse
from .core import LatticeError, discriminant_group, isotropic_order2, overlattice
from .forms import hasse_invariant
from .roots import find_norm_zero_primitive


class PreconditionError(LatticeError):
    pass


class Chain(list):
    """A list of lattices L_1 ⊂ L_2 ⊂ ... with one step record per entry."""

    def __init__(self, start, lattices=(), steps=()):
        super().__init__(lattices)
        self.start = start
        self.steps = list(steps)

    def to_json(self):
        discs = [self.start.disc] + [L.disc for L in self]
        return {"length": len(self), "discs": discs, "steps": self.steps,
                "final_gram": (self[-1] if self else self.start).gram.tolist()}


def _vp(n, p):
    if n == 0:
        return float("inf")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _in_coords(L_new, x_old):
    """Coordinates of a vector of the previous lattice's ambient space in L_new's basis."""
    inv = rational_inverse(L_new.basis)
    n = len(x_old)
    return [sum(Fraction(x_old[a]) * inv[a][b] for a in range(n)) for b in range(n)]


# embedding into the unimodular lattice

def _isotropic(dg, c):
    return any(c) and dg.q(c) == 0


def _embed_step(dg):
    orders = dg.orders
    k = len(orders)

    def unit(i, mult):
        c = [0] * k
        c[i] = mult % orders[i]
        return tuple(c)

    # an element of order 2^j with j > 2: 2^(j-1) a is isotropic
    for i, d in enumerate(orders):
        if d % 8 == 0:
            c = unit(i, d // 2)
            if _isotropic(dg, c):
                return "order_2^j", c
    # two independent elements of order 4
    four = [i for i, d in enumerate(orders) if d % 4 == 0]
    if len(four) >= 2:
        a, b = unit(four[0], orders[four[0]] // 2), unit(four[1], orders[four[1]] // 2)
        for c in (a, b, dg.add(a, b)):
            if _isotropic(dg, c):
                return "two_order_4", c
    # D(L)[2] of rank >= 4: search the subgroup where q is integral
    basis = dg.two_torsion_basis()
    if len(basis) >= 4:
        S = _integral_q_subgroup(dg, basis)
        if len(S) >= 3:
            s1, s2, s3 = S[:3]
            for c in (s1, s2, s3, dg.add(s1, s2), dg.add(s1, s3), dg.add(s2, s3),
                      dg.add(dg.add(s1, s2), s3)):
                if _isotropic(dg, c):
                    return "rank_4_two_torsion", c
    c = isotropic_order2(dg)
    if c is not None:
        return "fallback", c
    return None, None


def _integral_q_subgroup(dg, basis):
    """F_2-basis of {x in D[2] : q(x) in Z}; q mod Z is linear on D[2]."""
    half = [dg.q(b) % 1 != 0 for b in basis]
    out = []
    pivot = None
    for i, h in enumerate(half):
        if h:
            if pivot is None:
                pivot = i
            else:
                out.append(dg.add(basis[i], basis[pivot]))
        else:
            out.append(basis[i])
    return out


def embed_into_unimodular(L):
    """Chain of index-2 even overlattices from L to a unimodular lattice."""
    if not L.is_even:
        raise PreconditionError("lattice is not even")
    if L.signature != (1, 17):
        raise PreconditionError(f"signature {L.signature} is not (1, 17)")
    d = -L.disc
    i = 0
    while d > 1 and d % 4 == 0:
        d //= 4
        i += 1
    if L.disc >= 0 or d != 1:
        raise PreconditionError(f"discriminant {L.disc} is not -4^i")
    chain = Chain(L)
    cur = L
    while cur.disc != -1:
        dg = discriminant_group(cur)
        case, c = _embed_step(dg)
        if c is None:
            raise LatticeError("no isotropic element of order 2 found; this should not happen")
        nxt = overlattice(cur, dg.vector(c))
        if nxt.disc * 4 != cur.disc or not nxt.is_even:
            raise LatticeError("internal: overlattice step broke the discriminant law")
        nxt.name = f"{L.name or 'L'}[{len(chain) + 1}]"
        chain.append(nxt)
        chain.steps.append({"case": case, "element": list(c), "disc": nxt.disc})
        cur = nxt
    return chain


# removing p^2 from the discriminant

def _p_isotropic(dg, p):
    """An isotropic element of D(L)[p] (coefficient tuple), searched on small supports."""
    idx = [i for i, d in enumerate(dg.orders) if d % p == 0]
    k = len(dg.orders)
    gens = []
    for i in idx:
        c = [0] * k
        c[i] = dg.orders[i] // p
        gens.append(tuple(c))
    max_support = len(gens) if len(gens) <= 2 else 3
    for size in range(1, max_support + 1):
        for supp in combinations(range(len(gens)), size):
            for coeffs in product(range(1, p), repeat=size):
                if coeffs[0] != 1:
                    continue
                c = (0,) * k
                for j, a in zip(supp, coeffs):
                    c = dg.add(c, dg.scale(gens[j], a))
                if dg.q(c) == 0:
                    return c
    return None


def drop_prime_square(L, p):
    """Chain of overlattices each dividing disc by p^2 until p no longer divides it."""
    if not is_prime(p) or p == 2:
        raise PreconditionError("p must be an odd prime")
    if L.rank < 13:
        raise PreconditionError("rank < 13")
    if not L.is_even:
        raise PreconditionError("lattice is not even")
    v = _vp(L.disc, p)
    if v % 2:
        raise PreconditionError(f"p-adic valuation {v} of the discriminant is odd")
    chain = Chain(L)
    if v == 0:
        return chain
    if hasse_invariant(L, p) != 1:
        raise PreconditionError("L tensor Q_p is not isometric to a unimodular form (Hasse invariant -1)")
    cur = L
    while cur.disc % p == 0:
        dg = discriminant_group(cur)
        c = None
        case = None
        for i, d in enumerate(dg.orders):
            if d % (p * p) == 0:
                k = len(dg.orders)
                c = [0] * k
                c[i] = d // p
                c = tuple(c)
                case = "order_p^2"
                break
        if c is None:
            c = _p_isotropic(dg, p)
            case = "isotropic_mod_p"
        if c is None or dg.q(c) != 0:
            raise LatticeError("no isotropic element of order p found; invariants are violated")
        nxt = overlattice(cur, dg.vector(c))
        if nxt.disc * p * p != cur.disc:
            raise LatticeError("internal: step did not divide disc by p^2")
        nxt.name = f"{L.name or 'L'}[p{len(chain) + 1}]"
        chain.append(nxt)
        chain.steps.append({"case": case, "element": list(c), "disc": nxt.disc})
        cur = nxt
    return chain


# isotropic divisor classes in D + pL

def _check_genus1_pre(L, p, D):
    n = L.rank
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")
    if len(D) != n:
        raise PreconditionError("vector length does not match rank")
    if n < 13:
        raise PreconditionError("rank < 13")
    if L.signature != (1, n - 1):
        raise PreconditionError(f"signature {L.signature} is not (1, rank-1)")
    if all(c % p == 0 for c in D):
        raise PreconditionError("D is divisible by p in L")
    if any(int(c) % p for c in L.pairings(D)):
        raise PreconditionError("p does not divide (D, x) for all x")
    dd = int(L.norm(D))
    if dd % (p * p):
        raise PreconditionError("p^2 does not divide (D, D)")
    if p == 2 and dd % 8:
        raise PreconditionError("8 does not divide (D, D)")


def _gcd_pairings(L, v):
    g = 0
    for c in L.pairings(v):
        g = gcd(g, int(c))
    return g


def _genus1_ok(L, p, D, Dp):
    return (L.norm(Dp) == 0 and all((a - b) % p == 0 for a, b in zip(Dp, D))
            and _vp(_gcd_pairings(L, Dp), p) == 1)


def _mat_mod(T, G, mod):
    n = len(T)
    TG = [[sum(T[i][k] * G[k][j] for k in range(n)) % mod for j in range(n)] for i in range(n)]
    return [[sum(TG[i][k] * T[j][k] for k in range(n)) % mod for j in range(n)] for i in range(n)]


def unit_split(G, p, K):
    """Basis change T (rows, mod p^K) splitting the Gram as M + N, disc(M) a unit, N = 0 mod p.

    Returns (T, A, m_idx, n_idx) with A = T G T^t mod p^K.
    """
    mod = p ** K
    n = len(G)
    T = [[int(i == j) for j in range(n)] for i in range(n)]
    A = [[c % mod for c in r] for r in G]
    remaining = list(range(n))
    m_idx = []
    while True:
        if p != 2:
            piv = next((i for i in remaining if A[i][i] % p), None)
            if piv is None:
                pair = next(((i, j) for i, j in combinations(remaining, 2) if A[i][j] % p), None)
                if pair is None:
                    break
                i, j = pair
                T[i] = [(a + b) % mod for a, b in zip(T[i], T[j])]
                A = _mat_mod(T, G, mod)
                piv = i
            inv = pow(A[piv][piv], -1, mod)
            for k in remaining:
                if k != piv and A[k][piv]:
                    f = A[k][piv] * inv % mod
                    T[k] = [(a - f * b) % mod for a, b in zip(T[k], T[piv])]
            block = [piv]
        else:
            pair = next(((i, j) for i, j in combinations(remaining, 2) if A[i][j] % 2), None)
            if pair is None:
                break
            i, j = pair
            a, b, c = A[i][i], A[i][j], A[j][j]
            det_inv = pow((a * c - b * b) % mod, -1, mod)
            # inverse of [[a, b], [b, c]]
            bi = [[c * det_inv % mod, -b * det_inv % mod], [-b * det_inv % mod, a * det_inv % mod]]
            for k in remaining:
                if k in (i, j):
                    continue
                u, w = A[k][i], A[k][j]
                ci = (u * bi[0][0] + w * bi[1][0]) % mod
                cj = (u * bi[0][1] + w * bi[1][1]) % mod
                if ci or cj:
                    T[k] = [(x - ci * y - cj * z) % mod for x, y, z in zip(T[k], T[i], T[j])]
            block = [i, j]
        A = _mat_mod(T, G, mod)
        m_idx.extend(block)
        remaining = [k for k in remaining if k not in block]
    return T, A, m_idx, remaining


def _inverse_mod(T, mod):
    inv = rational_inverse(T)
    return [[(c.numerator * pow(c.denominator, -1, mod)) % mod for c in r] for r in inv]


def _represent(A, idx, p, target, K):
    """x (coordinates on idx) with x^t A x = target mod p^(K-2), x primitive mod p."""
    mod = p ** K
    r = len(idx)
    sub = [[A[i][j] for j in idx] for i in idx]

    if p == 2:
        tau = target // 2

        def h(x):
            s = sum(sub[i][i] // 2 * x[i] * x[i] for i in range(r))
            s += sum(sub[i][j] * x[i] * x[j] for i in range(r) for j in range(i + 1, r))
            return s % mod

        def dh(x, j):
            return sum(sub[j][k] * x[k] for k in range(r)) % mod
    else:
        tau = target

        def h(x):
            return sum(sub[i][j] * x[i] * x[j] for i in range(r) for j in range(r)) % mod

        def dh(x, j):
            return 2 * sum(sub[j][k] * x[k] for k in range(r)) % mod

    if p == 2:
        start = None
        width = min(r, 6)
        for y in product(range(2), repeat=width):
            x = list(y) + [0] * (r - width)
            if any(y) and (h(x) - tau) % 2 == 0:
                j = next((j for j in range(r) if dh(x, j) % 2), None)
                if j is not None:
                    start = (x, j)
                    break
    else:
        start = _represent_odd_sqrt(sub, p, tau, h, dh)
    if start is None:
        raise LatticeError("unit part too small to represent the target")
    x, j = start
    for _ in range(4 * K + 8):
        res = (h(x) - tau) % mod
        if res == 0:
            return x
        x[j] = (x[j] - res * pow(dh(x, j), -1, mod)) % mod
    raise LatticeError("Hensel iteration did not converge")


def _represent_odd_sqrt(sub, p, tau, h, dh):
    from ..exactmath import GF

    F = GF(p)
    r = len(sub)
    a0 = sub[0][0] % p
    if a0 == 0 or r < 2:
        return None
    for rest in product(range(p), repeat=min(r - 1, 2)):
        x = [0] + list(rest) + [0] * (r - 1 - len(rest))
        rhs = (tau - h(x)) * pow(a0, -1, p) % p
        s = F.sqrt(rhs)
        if s is None or s == 0:
            continue
        x[0] = int(s)
        if dh(x, 0) % p:
            return x, 0
    return None


def genus1_divisor_mod_p(L, p, D, K=12, max_K=192):
    """An isotropic D' in D + pL with p-part of gcd_x (D', x) equal to p."""
    D = [int(c) for c in D]
    _check_genus1_pre(L, p, D)
    if _genus1_ok(L, p, D, D):
        return D
    G = [list(r) for r in L.gram.rows]
    F0, _ = find_norm_zero_primitive(L)
    while K <= max_K:
        try:
            Dp = _genus1_attempt(L, G, p, D, K, F0)
        except LatticeError:
            Dp = None
        if Dp is not None and _genus1_ok(L, p, D, Dp):
            return Dp
        K *= 2
    raise LatticeError(f"p-adic precision exhausted (K up to {max_K})")


def _genus1_attempt(L, G, p, D, K, F0):
    n = L.rank
    mod = p ** K
    T, A, m_idx, n_idx = unit_split(G, p, K)
    if len(m_idx) < (4 if p == 2 else 3):
        raise LatticeError("unit-discriminant part has too small rank")
    Tinv = _inverse_mod(T, mod)
    c = [sum(D[a] * Tinv[a][b] for a in range(n)) % mod for b in range(n)]
    nn = sum(c[i] * A[i][j] * c[j] for i in n_idx for j in n_idx) % mod
    shift = 3 if p == 2 else 2
    if nn % p ** shift:
        raise LatticeError("internal: N-component norm not divisible enough")
    target = (-(nn // (p * p))) % (p ** (K - 2))
    x = _represent(A, m_idx, p, target, K)
    d0 = [0] * n
    for i in n_idx:
        d0[i] = c[i]
    for i, xi in zip(m_idx, x):
        d0[i] = p * xi % mod
    v = [sum(d0[a] * T[a][b] for a in range(n)) % mod for b in range(n)]
    v = [vi - mod if vi > mod // 2 else vi for vi in v]
    if int(L.norm(v)) % mod:
        raise LatticeError("internal: lifted vector is not isotropic mod p^K")
    for F in _isotropic_candidates(L, F0):
        Dp = _weak_approx(L, F, v, p, K, D)
        if Dp is not None:
            return Dp
    return None


def _isotropic_candidates(L, F0):
    yield F0
    n = L.rank
    for i in range(n):
        e = [0] * n
        e[i] = 1
        f = _reflect_through(L, F0, e)
        if f is not None:
            yield f


def _reflect_through(L, F, v):
    """The isotropic vector 2(F,v)v - (v,v)F, made primitive."""
    fv = int(L.pair(F, v))
    if fv == 0:
        return None
    w = [2 * fv * a - int(L.norm(v)) * b for a, b in zip(v, F)]
    g = 0
    for a in w:
        g = gcd(g, a)
    return [a // g for a in w] if g else None


def _weak_approx(L, F, v, p, K, D):
    fv = int(L.pair(F, v))
    if fv == 0:
        return None
    e = _vp(2 * fv, p)
    if K - e < 2:
        return None
    Qv = int(L.norm(v))
    w = [2 * fv * a - Qv * b for a, b in zip(v, F)]
    g = 0
    for a in w:
        g = gcd(g, a)
    w = [a // g for a in w]
    # rescale by a unit k so that k w = D mod p
    for k in range(1, p):
        if all((k * a - b) % p == 0 for a, b in zip(w, D)):
            return [k * a for a in w]
    return None
