"""Even integer lattices: construction, invariants and discriminant forms."""

import json
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from ..exactmath import IntMatrix, smith_normal_form, rational_inverse, hermite_rows


class LatticeError(ValueError):
    pass


def _frac_vec(v):
    return [Fraction(x) for x in v]


class Lattice:
    """A Z-lattice given by a symmetric integer Gram matrix.

    ``basis`` optionally records the basis of this lattice inside a parent
    lattice (rational coordinates), as produced by overlattice steps.
    """

    __slots__ = ("gram", "name", "basis", "_cache")

    def __init__(self, gram, name=None, basis=None):
        if not isinstance(gram, IntMatrix):
            gram = IntMatrix(gram)
        if not gram.symmetric:
            raise LatticeError("Gram matrix must be square and symmetric")
        self.gram = gram
        self.name = name
        self.basis = basis
        self._cache = {}

    def __repr__(self):
        label = self.name or "Lattice"
        return f"<{label} rank={self.rank} disc={self.disc}>"

    @property
    def rank(self):
        return self.gram.nrows

    @property
    def disc(self):
        if "disc" not in self._cache:
            self._cache["disc"] = self.gram.det() if self.rank else 1
        return self._cache["disc"]

    det = disc

    @property
    def is_even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    @property
    def is_nondegenerate(self):
        return self.disc != 0

    @property
    def signature(self):
        """(n_plus, n_minus) from an exact rational diagonalization."""
        if "sig" not in self._cache:
            d = diagonalize(self.gram)
            self._cache["sig"] = (sum(1 for a in d if a > 0), sum(1 for a in d if a < 0))
        return self._cache["sig"]

    def is_negative_definite(self):
        return self.signature == (0, self.rank)

    def pair(self, u, v):
        G = self.gram.rows
        n = self.rank
        return sum(Fraction(u[i]) * G[i][j] * Fraction(v[j]) for i in range(n) for j in range(n)
                   if u[i] and v[j])

    def norm(self, v):
        return self.pair(v, v)

    def pairings(self, v):
        """The vector G v, i.e. (v, e_j) for the basis vectors e_j."""
        G = self.gram.rows
        return [sum(G[j][i] * Fraction(v[i]) for i in range(self.rank) if v[i]) for j in range(self.rank)]

    def __add__(self, other):
        return direct_sum(self, other)

    def scaled(self, k):
        return Lattice(self.gram * k, name=f"{self.name}({k})" if self.name else None)

    def change_basis(self, B):
        """Lattice with basis rows of the integer matrix B (must be unimodular for same lattice)."""
        B = B if isinstance(B, IntMatrix) else IntMatrix(B)
        return Lattice(B * self.gram * B.transpose(), name=self.name)

    def to_json(self):
        d = {"gram": self.gram.tolist()}
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "gram" not in data:
            raise LatticeError("lattice JSON needs a 'gram' entry")
        return cls(data["gram"], name=data.get("name"))

    def invariants(self):
        dg = discriminant_group(self) if self.is_nondegenerate else None
        return {
            "rank": self.rank,
            "signature": list(self.signature),
            "disc": self.disc,
            "even": self.is_even,
            "disc_group": list(dg.orders) if dg else None,
        }


def diagonalize(gram):
    """Diagonal entries of a rational congruent diagonalization (symmetric elimination)."""
    rows = gram.rows if isinstance(gram, IntMatrix) else gram
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    out = []
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                out.extend([Fraction(0)] * (n - k))
                return out
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 a_ij != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in a:
                r[k], r[piv] = r[piv], r[k]
        pv = a[k][k]
        out.append(pv)
        for i in range(k + 1, n):
            f = a[i][k] / pv
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
    return out


# standard lattices

def _cartan_from_edges(n, edges):
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def _ade_edges(typ, n):
    if typ == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if typ == "D":
        if n < 4:
            raise LatticeError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if typ == "E":
        if n not in (6, 7, 8):
            raise LatticeError("E_n needs n in 6, 7, 8")
        # Bourbaki labels 1..n, shifted to 0..n-1: 1-3, 3-4, 4-5, ..., 2-4
        e = [(0, 2), (2, 3), (1, 3)] + [(k, k + 1) for k in range(3, n - 1)]
        return e
    raise LatticeError(f"unknown root type {typ}")


def root_lattice(typ, n):
    return Lattice(_cartan_from_edges(n, _ade_edges(typ, n)), name=f"{typ}{n}")


def parse_root_name(name):
    """'D4' -> ('D', 4); accepts A_n, D_n, E6..E8."""
    name = name.replace("_", "").strip()
    typ, num = name[0].upper(), name[1:]
    if typ not in "ADE" or not num.isdigit():
        raise LatticeError(f"not an ADE name: {name}")
    return typ, int(num)


def direct_sum(*lats):
    lats = [l for l in lats]
    if not lats:
        return Lattice([], name="0")
    g = lats[0].gram
    for l in lats[1:]:
        g = g.block_diag(l.gram)
    names = [l.name or "?" for l in lats]
    return Lattice(g, name="+".join(names))


def diag_lattice(entries, name=None):
    return Lattice(IntMatrix.diagonal(list(entries)), name=name or "<" + ",".join(map(str, entries)) + ">")


def standard_lattice(name, *args):
    """Named lattices: A_n, D_n, E6, E7, E8, U, U(2), II_1_17, Km, and combinators.

    ``standard_lattice("direct_sum", L1, L2, ...)``, ``("hyperbolic_sum", L)``
    for U + L, ``("twist", L, k)`` for L(k), ``("diag", a, b, ...)``.
    Root lattices are negative definite.
    """
    key = name.replace(" ", "")
    if key == "U":
        return Lattice([[0, 1], [1, 0]], name="U")
    if key in ("U(2)", "U2"):
        return Lattice([[0, 2], [2, 0]], name="U(2)")
    if key == "direct_sum":
        return direct_sum(*[_as_lattice(a) for a in args])
    if key == "hyperbolic_sum":
        return direct_sum(standard_lattice("U"), *[_as_lattice(a) for a in args])
    if key == "twist":
        lat, k = _as_lattice(args[0]), int(args[1])
        return lat.scaled(k)
    if key == "diag":
        return diag_lattice(args)
    if key in ("II_1_17", "II1,17"):
        return direct_sum(standard_lattice("U"), root_lattice("E", 8), root_lattice("E", 8))
    if key in ("Km", "KummerNS"):
        return kummer_ns_lattice()
    if "+" in key:
        return direct_sum(*[standard_lattice(p) for p in key.split("+")])
    if "^" in key:
        base, k = key.split("^")
        return direct_sum(*[standard_lattice(base)] * int(k))
    try:
        typ, n = parse_root_name(key)
    except (LatticeError, IndexError):
        raise LatticeError(f"unknown lattice name {name!r}") from None
    return root_lattice(typ, n)


def _as_lattice(x):
    return x if isinstance(x, Lattice) else standard_lattice(x)


# discriminant group

class DiscGroup:
    """L^dual / L with generators in rational L-coordinates.

    Elements are coefficient tuples c with 0 <= c_i < orders[i].
    """

    def __init__(self, lattice, gens, orders, vinv, snf_d):
        self.lattice = lattice
        self.gens = gens
        self.orders = tuple(orders)
        self._vinv = vinv
        self._d = snf_d

    def __repr__(self):
        return f"DiscGroup({' x '.join(f'Z/{d}' for d in self.orders) or '0'})"

    @property
    def order(self):
        out = 1
        for d in self.orders:
            out *= d
        return out

    def vector(self, c):
        n = self.lattice.rank
        v = [Fraction(0)] * n
        for ci, g in zip(c, self.gens):
            if ci:
                for k in range(n):
                    v[k] += ci * g[k]
        return v

    def q(self, c):
        """Discriminant quadratic form value in [0, 2)."""
        return self.lattice.norm(self.vector(c)) % 2

    def b(self, c1, c2):
        return self.lattice.pair(self.vector(c1), self.vector(c2)) % 1

    def add(self, c1, c2):
        return tuple((a + b) % d for a, b, d in zip(c1, c2, self.orders))

    def scale(self, c, k):
        return tuple((k * a) % d for a, d in zip(c, self.orders))

    def element_order(self, c):
        out = 1
        for a, d in zip(c, self.orders):
            if a:
                out = lcm(out, d // gcd(a, d))
        return out

    def elements(self):
        return product(*[range(d) for d in self.orders])

    def classify(self, x):
        """Coefficient tuple of a dual vector x (raises if x is not in L^dual)."""
        if any(p.denominator != 1 for p in self.lattice.pairings(x)):
            raise LatticeError("vector is not in the dual lattice")
        n = self.lattice.rank
        y = [sum(self._vinv[i][j] * Fraction(x[j]) for j in range(n)) for i in range(n)]
        out = []
        k = 0
        for i, d in enumerate(self._d):
            if d > 1:
                v = y[i] * d
                if v.denominator != 1:
                    raise LatticeError("internal: bad dual coordinates")
                out.append(int(v) % d)
                k += 1
        return tuple(out)

    def two_torsion_basis(self):
        out = []
        for i, d in enumerate(self.orders):
            if d % 2 == 0:
                c = [0] * len(self.orders)
                c[i] = d // 2
                out.append(tuple(c))
        return out

    def two_torsion(self):
        """All elements of D[2] (including 0), in a fixed order."""
        basis = self.two_torsion_basis()
        zero = tuple([0] * len(self.orders))
        out = []
        for bits in product((0, 1), repeat=len(basis)):
            c = zero
            for bit, g in zip(bits, basis):
                if bit:
                    c = self.add(c, g)
            out.append(c)
        return out

    def p_rank(self, p):
        return sum(1 for d in self.orders if d % p == 0)

    def is_zero(self, c):
        return not any(c)


def discriminant_group(L):
    if not L.is_nondegenerate:
        raise LatticeError("degenerate Gram matrix")
    if "dg" in L._cache:
        return L._cache["dg"]
    D, U, V = smith_normal_form(L.gram)
    n = L.rank
    d = [D[i, i] for i in range(n)]
    gens, orders = [], []
    for i in range(n):
        if d[i] > 1:
            gens.append([Fraction(V[k, i], d[i]) for k in range(n)])
            orders.append(d[i])
    vinv = rational_inverse(V.rows)
    dg = DiscGroup(L, gens, orders, vinv, d)
    L._cache["dg"] = dg
    return dg


def isotropic_order2(dg):
    """A nonzero x in D(L)[2] with q(x) = 0 mod 2Z, or None."""
    for c in dg.two_torsion():
        if any(c) and dg.q(c) == 0:
            return c
    return None


# overlattices and sublattices

def overlattice(L, x):
    """L + Z x for a rational vector x with integral pairings and even norm."""
    x = _frac_vec(x)
    if len(x) != L.rank:
        raise LatticeError("vector length does not match rank")
    if all(c.denominator == 1 for c in x):
        raise LatticeError("vector already lies in L; not a proper overlattice")
    if any(p.denominator != 1 for p in L.pairings(x)):
        raise LatticeError("non-integral pairing of x with L")
    nx = L.norm(x)
    if nx.denominator != 1:
        raise LatticeError("non-integral norm")
    if L.is_even and nx % 2 != 0:
        raise LatticeError("odd norm would break evenness")
    n = 1
    for c in x:
        n = lcm(n, c.denominator)
    rows = [[n if i == j else 0 for j in range(L.rank)] for i in range(L.rank)]
    rows.append([int(c * n) for c in x])
    H = hermite_rows(rows)
    if len(H) != L.rank:
        raise LatticeError("internal: overlattice basis has wrong rank")
    B = [[Fraction(v, n) for v in r] for r in H]
    G = L.gram.rows
    m = L.rank
    newg = [[sum(B[i][a] * G[a][b] * B[j][b] for a in range(m) if B[i][a] for b in range(m) if B[j][b])
             for j in range(m)] for i in range(m)]
    if any(v.denominator != 1 for r in newg for v in r):
        raise LatticeError("internal: non-integral Gram")
    out = Lattice([[int(v) for v in r] for r in newg], name=(L.name or "L") + "[x]", basis=B)
    # x lies in the dual, so its order in D(L) is the lcm of its denominators
    if L.disc % out.disc or abs(L.disc // out.disc) != _order_of(x) ** 2:
        raise LatticeError("internal: discriminant law violated")
    return out


def _order_of(x):
    n = 1
    for c in x:
        n = lcm(n, Fraction(c).denominator)
    return n


def index_p_sublattice(L, w, p):
    """{v in L : (v, w) = 0 mod p} for w with (w, L) not inside pZ; index p."""
    a = [int(c) % p for c in L.pairings(w)]
    k = next((i for i, c in enumerate(a) if c % p), None)
    if k is None:
        raise LatticeError("(w, L) is contained in pZ")
    inv = pow(a[k], -1, p)
    n = L.rank
    rows = []
    for i in range(n):
        if i == k:
            continue
        r = [0] * n
        r[i] = 1
        r[k] = -(a[i] * inv) % p
        rows.append(r)
    r = [0] * n
    r[k] = p
    rows.append(r)
    sub = L.change_basis(rows)
    sub.name = (L.name or "L") + f"_sub{p}"
    sub.basis = [[Fraction(v) for v in r] for r in rows]
    return sub


def compose_basis(outer, inner):
    """Basis of inner expressed in the coordinates of the lattice that outer lives in."""
    m = len(inner[0])
    k = len(outer[0])
    return [[sum(Fraction(inner[i][a]) * outer[a][b] for a in range(m)) for b in range(k)] for i in range(len(inner))]


def kummer_ns_lattice():
    """U + D4^4 glued along the two 2-torsion sections of the I0* fibration."""
    triv = direct_sum(standard_lattice("U"), *[root_lattice("D", 4)] * 4)
    dg = discriminant_group(triv)
    glue = kummer_glue(triv, dg)
    L = triv
    vecs = [dg.vector(g) for g in glue]
    # glue in the coordinates of the current lattice step by step
    L1 = overlattice(L, vecs[0])
    inv = rational_inverse(L1.basis)
    v2 = [sum(vecs[1][a] * inv[a][b] for a in range(L.rank)) for b in range(L.rank)]
    L2 = overlattice(L1, v2)
    L2.name = "Km"
    return L2


def kummer_glue(triv, dg):
    """Two glue classes (v,v,v,v) and (s,s,s,s) on the four D4 summands."""
    # each D4 contributes a (Z/2)^2 factor; locate them through the generators
    n = triv.rank
    blocks = [(2 + 4 * k, 6 + 4 * k) for k in range(4)]
    per_block = []
    for lo, hi in blocks:
        cls = []
        for c in dg.elements():
            if not any(c):
                continue
            v = dg.vector(c)
            if all(v[i] == 0 for i in range(n) if not lo <= i < hi):
                cls.append(c)
        per_block.append(cls)
    # nonzero classes supported on one D4: three each
    choices = []
    for cls in per_block:
        if len(cls) != 3:
            raise LatticeError("internal: unexpected D4 discriminant group")
        choices.append(sorted(cls))
    g1 = (0,) * len(dg.orders)
    g2 = g1
    for cls in choices:
        g1 = dg.add(g1, cls[0])
        g2 = dg.add(g2, cls[1])
    for g in (g1, g2, dg.add(g1, g2)):
        if dg.q(g) != 0:
            raise LatticeError("internal: Kummer glue not isotropic")
    return [g1, g2]
