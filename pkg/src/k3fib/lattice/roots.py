"""Short vectors, root systems and isotropic vectors."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd, isqrt

from .core import LatticeError, root_lattice


def _cholesky(Q):
    """Exact rational decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2."""
    n = len(Q)
    q = [[Fraction(v) for v in r] for r in Q]
    for i in range(n):
        if q[i][i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _floor_sqrt(fr):
    """Largest integer r with r^2 <= fr, for Fraction fr >= 0."""
    r = isqrt(fr.numerator // fr.denominator)
    while (r + 1) ** 2 <= fr:
        r += 1
    return r


def short_vectors(L, bound, negate=True):
    """All nonzero v (one of each pair +-v) with |(v,v)| <= bound.

    The lattice must be definite; for negative definite input the form -G is
    used.  Enumeration is Fincke-Pohst with exact rational bookkeeping.
    """
    G = L.gram.rows
    n = L.rank
    sig = L.signature
    if sig == (0, n):
        Q = [[-v for v in r] for r in G]
    elif sig == (n, 0):
        Q = [list(r) for r in G]
    else:
        raise LatticeError("short vector enumeration needs a definite lattice")
    q = _cholesky(Q)
    out = []
    x = [0] * n
    bound = Fraction(bound)

    def rec(i, remaining):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        B = remaining / q[i][i]
        r = _floor_sqrt(B) + 1
        centre = -c
        lo = int(centre) - r - 1
        hi = int(centre) + r + 1
        for xi in range(lo, hi + 1):
            t = (xi + c) ** 2 * q[i][i]
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    if n:
        rec(n - 1, bound)
    # keep one representative of each +-pair: first nonzero coordinate positive
    reps = [v for v in out if next(c for c in v if c) > 0]
    return sorted(reps)


@dataclass
class RootComponent:
    type: str
    rank: int
    simple_roots: list

    @property
    def name(self):
        return f"{self.type}{self.rank}"


@dataclass
class RootSystem:
    components: list = field(default_factory=list)
    roots: list = field(default_factory=list)

    @property
    def names(self):
        return sorted(c.name for c in self.components)

    @property
    def rank(self):
        return sum(c.rank for c in self.components)

    def __repr__(self):
        return "RootSystem(" + " + ".join(self.names) + ")" if self.components else "RootSystem(empty)"


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def root_sublattice(L):
    """Roots of a negative definite lattice, decomposed into ADE components."""
    n = L.rank
    if L.signature != (0, n):
        raise LatticeError("root_sublattice needs a negative definite lattice")
    pos = short_vectors(L, 2)
    pos = [v for v in pos if L.norm(v) == -2]
    posset = set(pos)
    # lex-positive roots form a positive system; simple ones are indecomposable
    simple = []
    for r in pos:
        if not any(_sub(r, s) in posset for s in pos if s != r and s < r):
            simple.append(r)
    comps = _components(L, simple)
    return RootSystem(components=comps, roots=pos)


def _components(L, simple):
    nbr = {i: [j for j in range(len(simple)) if j != i and L.pair(simple[i], simple[j]) != 0]
           for i in range(len(simple))}
    for i in nbr:
        for j in nbr[i]:
            if L.pair(simple[i], simple[j]) != 1:
                raise LatticeError("internal: simple roots do not form a simply-laced diagram")
    seen = set()
    comps = []
    for i in range(len(simple)):
        if i in seen:
            continue
        stack, comp = [i], []
        seen.add(i)
        while stack:
            k = stack.pop()
            comp.append(k)
            for j in nbr[k]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        comps.append(_classify(L, [simple[k] for k in sorted(comp)], {k: nbr[k] for k in comp}, sorted(comp)))
    comps.sort(key=lambda c: (c.type, c.rank))
    return comps


def _walk(start, prev, nbr):
    path = [start]
    while True:
        nxt = [j for j in nbr[path[-1]] if j != prev]
        if len(nxt) != 1:
            return path
        prev = path[-1]
        path.append(nxt[0])


def _classify(L, roots, nbr, idx):
    k = len(idx)
    pos = {v: i for i, v in enumerate(idx)}
    degs = {i: len(nbr[i]) for i in idx}
    branch = [i for i in idx if degs[i] >= 3]
    if not branch:
        ends = [i for i in idx if degs[i] <= 1]
        order = _walk(ends[0], None, nbr) if k > 1 else [idx[0]]
        typ = "A"
    else:
        if len(branch) > 1 or degs[branch[0]] != 3:
            raise LatticeError("internal: root diagram is not ADE")
        b = branch[0]
        arms = sorted((_walk(j, b, nbr) for j in nbr[b]), key=len)
        lens = tuple(len(a) for a in arms)
        if lens[0] == 1 and lens[1] == 1:
            typ = "D"
            # long arm end first, then branch, then the two short arms
            order = list(reversed(arms[2])) + [b, arms[0][0], arms[1][0]]
        elif lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
            typ = "E"
            order = [arms[1][1], arms[0][0], arms[1][0], b] + arms[2]
        else:
            raise LatticeError("internal: root diagram is not ADE")
    basis = [roots[pos[i]] for i in order]
    comp = RootComponent(typ, k, basis)
    ref = root_lattice(typ, k).gram.rows
    if any(L.pair(basis[a], basis[b]) != ref[a][b] for a in range(k) for b in range(k)):
        raise LatticeError("internal: component Gram differs from the Cartan matrix")
    return comp


# isotropic vectors

def find_norm_zero_primitive(L, height=25):
    """A primitive F with (F,F) = 0, and d = gcd of (F, x) over x in L.

    Search order: isotropic basis vectors, then vectors supported on small
    coordinate sets, solving the last coordinate exactly from a quadratic.
    """
    n = L.rank
    if L.disc == 0:
        raise LatticeError("degenerate lattice")
    if L.signature[0] == 0 or L.signature[1] == 0:
        raise LatticeError("definite lattice has no isotropic vectors")
    G = L.gram.rows
    for i in range(n):
        if G[i][i] == 0:
            F = [0] * n
            F[i] = 1
            return F, _divisibility(L, F)
    for size in range(2, n + 1):
        for supp in combinations(range(n), size):
            F = _search_support(G, n, supp, height)
            if F is not None:
                return F, _divisibility(L, F)
    raise LatticeError(f"no isotropic vector found within height {height}")


def _search_support(G, n, supp, height):
    last = supp[-1]
    rest = supp[:-1]
    a = G[last][last]
    for coeffs in product(range(-height, height + 1), repeat=len(rest)):
        if 0 in coeffs:
            continue
        if next(c for c in coeffs if c) < 0:
            continue
        # Q(x + y e_last) = Q(x) + 2 y (x, e_last) + a y^2
        qx = sum(coeffs[i] * G[rest[i]][rest[j]] * coeffs[j] for i in range(len(rest)) for j in range(len(rest)))
        bx = sum(coeffs[i] * G[rest[i]][last] for i in range(len(rest)))
        for y in _int_roots(a, 2 * bx, qx):
            if y == 0 or abs(y) > height:
                continue
            F = [0] * n
            for i, c in zip(rest, coeffs):
                F[i] = c
            F[last] = y
            g = 0
            for c in F:
                g = gcd(g, c)
            if g == 1:
                return F
    return None


def _int_roots(a, b, c):
    if a == 0:
        if b == 0:
            return []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = isqrt(disc)
    if r * r != disc:
        return []
    out = []
    for num in (-b + r, -b - r):
        if num % (2 * a) == 0:
            out.append(num // (2 * a))
    return sorted(set(out))


def _divisibility(L, F):
    g = 0
    for v in L.pairings(F):
        g = gcd(g, int(v))
    return g
