"""Sparse multivariate polynomials over QQ or GF(p).

Monomials are packed into a single int, 16 bits per variable, with the first
variable in the most significant slot.  Multiplying monomials is then integer
addition and comparing packed ints is lexicographic order.  Variable lists are
kept sorted by name so that two polynomials built independently agree on the
layout.
"""

from fractions import Fraction
from math import gcd, lcm

from .fields import QQ, RationalField

BITS = 16
_MASK = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1


def pack(exps):
    m = 0
    for e in exps:
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} out of range")
        m = (m << BITS) | e
    return m


def unpack(m, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = m & _MASK
        m >>= BITS
    return out


def _guard(n):
    h = 0
    for _ in range(n):
        h = (h << BITS) | (1 << (BITS - 1))
    return h


def _divides(mb, ma, guard):
    """True when monomial mb divides ma."""
    return ((ma | guard) - mb) & guard == guard


class NotExactDivision(ArithmeticError):
    pass


class MultiPoly:
    """Immutable sparse polynomial.  ``terms`` maps packed monomial -> coeff."""

    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = vars
        self.terms = terms
        self._hash = None

    # construction

    @classmethod
    def from_dict(cls, field, vars, data):
        """Build from {exponent tuple: coefficient}; vars may be in any order."""
        vars = tuple(vars)
        order = sorted(range(len(vars)), key=lambda i: vars[i])
        if len(set(vars)) != len(vars):
            raise ValueError("repeated variable name")
        svars = tuple(vars[i] for i in order)
        out = {}
        for exps, c in data.items():
            if len(exps) != len(vars):
                raise ValueError("exponent vector length does not match variables")
            m = pack([exps[i] for i in order])
            out[m] = out.get(m, 0) + field.coerce(c)
        return cls(field, svars, _clean(field, out))

    @classmethod
    def variable(cls, name, field=QQ):
        return cls(field, (name,), {1: field.one})

    @classmethod
    def constant(cls, c, field=QQ, vars=()):
        c = field.coerce(c)
        return cls(field, tuple(vars), {0: c} if c else {})

    @classmethod
    def zero(cls, field=QQ):
        return cls(field, (), {})

    def _const_like(self, c):
        c = self.field.coerce(c)
        return MultiPoly(self.field, self.vars, {0: c} if c else {})

    # layout helpers

    def _remap(self, newvars):
        if newvars == self.vars:
            return self.terms
        n_old, n_new = len(self.vars), len(newvars)
        pos = [newvars.index(v) for v in self.vars]
        out = {}
        for m, c in self.terms.items():
            e = unpack(m, n_old)
            f = [0] * n_new
            for i, k in enumerate(pos):
                f[k] = e[i]
            out[pack(f)] = c
        return out

    def with_vars(self, newvars):
        """Same polynomial laid out on a sorted superset of its variables."""
        newvars = tuple(sorted(set(newvars) | set(self.vars)))
        return MultiPoly(self.field, newvars, self._remap(newvars))

    def _align(self, other):
        if not isinstance(other, MultiPoly):
            other = self._const_like(other)
        elif other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if other.vars == self.vars:
            return self.vars, self.terms, other.terms
        vars = tuple(sorted(set(self.vars) | set(other.vars)))
        return vars, self._remap(vars), other._remap(vars)

    def trim(self):
        """Drop variables that do not occur."""
        n = len(self.vars)
        used = [False] * n
        for m in self.terms:
            e = unpack(m, n)
            for i in range(n):
                if e[i]:
                    used[i] = True
        if all(used):
            return self
        keep = tuple(v for v, u in zip(self.vars, used) if u)
        idx = [i for i in range(n) if used[i]]
        out = {}
        for m, c in self.terms.items():
            e = unpack(m, n)
            out[pack([e[i] for i in idx])] = c
        return MultiPoly(self.field, keep, out)

    def free_vars(self):
        return self.trim().vars

    def exponents(self):
        """Iterate (exponent tuple, coeff) in the current variable order."""
        n = len(self.vars)
        for m, c in self.terms.items():
            yield tuple(unpack(m, n)), c

    # predicates

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(0, self.field.zero)

    # arithmetic

    def __add__(self, other):
        vars, ta, tb = self._align(other)
        if len(ta) < len(tb):
            ta, tb = tb, ta
        res = dict(ta)
        norm = self.field.normalize
        for m, c in tb.items():
            v = res.get(m)
            if v is None:
                res[m] = c
            else:
                s = norm(v + c)
                if s:
                    res[m] = s
                else:
                    del res[m]
        return MultiPoly(self.field, vars, res)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.normalize
        return MultiPoly(self.field, self.vars, {m: norm(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = self._const_like(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.field.coerce(c)
        if not c:
            return MultiPoly(self.field, self.vars, {})
        norm = self.field.normalize
        return MultiPoly(self.field, self.vars, {m: norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        vars, ta, tb = self._align(other)
        if len(ta) == 1:
            (ma, ca), = ta.items()
            norm = self.field.normalize
            return MultiPoly(self.field, vars, {ma + m: norm(ca * c) for m, c in tb.items()})
        if len(tb) == 1:
            (mb, cb), = tb.items()
            norm = self.field.normalize
            return MultiPoly(self.field, vars, {mb + m: norm(cb * c) for m, c in ta.items()})
        res = {}
        get = res.get
        for ma, ca in ta.items():
            for mb, cb in tb.items():
                m = ma + mb
                res[m] = get(m, 0) + ca * cb
        return MultiPoly(self.field, vars, _clean(self.field, res))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self._const_like(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                return False
        elif not isinstance(other, (int, Fraction)):
            return NotImplemented
        _, ta, tb = self._align(other)
        return ta == tb

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.field, t.vars, frozenset(t.terms.items())))
        return self._hash

    # division

    def exquo(self, other):
        """Exact quotient self / other; NotExactDivision if other does not divide."""
        if not isinstance(other, MultiPoly):
            other = self._const_like(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        vars, ta, tb = self._align(other)
        F = self.field
        if len(tb) == 1:
            (mb, cb), = tb.items()
            inv = F.inv(cb)
            guard = _guard(len(vars))
            out = {}
            for m, c in ta.items():
                if not _divides(mb, m, guard):
                    raise NotExactDivision("monomial divisor does not divide")
                out[m - mb] = F.mul(c, inv)
            return MultiPoly(F, vars, out)
        guard = _guard(len(vars))
        lmb = max(tb)
        inv = F.inv(tb[lmb])
        rest = [(m, c) for m, c in tb.items() if m != lmb]
        r = dict(ta)
        q = {}
        norm = F.normalize
        while r:
            m = max(r)
            if not _divides(lmb, m, guard):
                raise NotExactDivision("leading monomial not divisible")
            c = F.mul(r.pop(m), inv)
            d = m - lmb
            q[d] = c
            for mb, cb in rest:
                k = d + mb
                v = norm(r.get(k, 0) - c * cb)
                if v:
                    r[k] = v
                else:
                    r.pop(k, None)
        return MultiPoly(F, vars, q)

    def divides(self, other):
        try:
            other.exquo(self)
            return True
        except NotExactDivision:
            return False

    # structure

    def _index(self, var):
        try:
            return self.vars.index(var)
        except ValueError:
            return None

    def degree(self, var=None):
        """Degree in var, or total degree; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        n = len(self.vars)
        if var is None:
            return max(sum(unpack(m, n)) for m in self.terms)
        i = self._index(var)
        if i is None:
            return 0
        shift = BITS * (n - 1 - i)
        return max((m >> shift) & _MASK for m in self.terms)

    def low_degree(self, var):
        """Largest power of var dividing self (valuation at var = 0)."""
        if not self.terms:
            raise ValueError("valuation of zero polynomial")
        i = self._index(var)
        if i is None:
            return 0
        shift = BITS * (len(self.vars) - 1 - i)
        return min((m >> shift) & _MASK for m in self.terms)

    def coeffs_in(self, var):
        """{k: coefficient of var^k}, coefficients on the remaining variables."""
        i = self._index(var)
        if i is None:
            return {0: self} if self.terms else {}
        n = len(self.vars)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets = {}
        for m, c in self.terms.items():
            e = unpack(m, n)
            k = e.pop(i)
            buckets.setdefault(k, {})[pack(e)] = c
        return {k: MultiPoly(self.field, rest, t) for k, t in buckets.items()}

    def coeff_list(self, var):
        """Dense coefficient list [c_0, c_1, ...] in var."""
        d = self.coeffs_in(var)
        if not d:
            return []
        top = max(d)
        zero = MultiPoly(self.field, (), {})
        return [d.get(k, zero) for k in range(top + 1)]

    @classmethod
    def from_coeff_list(cls, coeffs, var, field=QQ):
        x = cls.variable(var, field)
        out = cls.zero(field)
        for k, c in enumerate(coeffs):
            if c:
                out = out + (c if isinstance(c, MultiPoly) else cls.constant(c, field)) * x ** k
        return out

    def leading_coeff(self, var=None):
        """Leading coefficient in var (a polynomial), or the lex-leading scalar."""
        if var is None:
            return self.terms[max(self.terms)] if self.terms else self.field.zero
        d = self.coeffs_in(var)
        return d[max(d)]

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    def diff(self, var):
        i = self._index(var)
        if i is None:
            return MultiPoly(self.field, self.vars, {})
        n = len(self.vars)
        one = 1 << (BITS * (n - 1 - i))
        shift = BITS * (n - 1 - i)
        out = {}
        F = self.field
        for m, c in self.terms.items():
            k = (m >> shift) & _MASK
            if k:
                v = F.normalize(c * k)
                if v:
                    out[m - one] = v
        return MultiPoly(F, self.vars, out)

    def content(self):
        """Over QQ: positive rational c with self/c integral primitive.  Over GF(p): lc."""
        if not self.terms:
            return self.field.zero
        if not isinstance(self.field, RationalField):
            return self.leading_coeff()
        num = 0
        den = 1
        for c in self.terms.values():
            if isinstance(c, int):
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = lcm(den, c.denominator)
        return Fraction(num, den) if den != 1 else num

    def primitive(self):
        """(content, primitive part); over QQ the lex leading coefficient is made positive."""
        if not self.terms:
            return self.field.zero, self
        c = self.content()
        if isinstance(self.field, RationalField) and self.leading_coeff() < 0:
            c = -c
        return c, self.scale(self.field.inv(c))

    def to_field(self, field):
        """Reduce coefficients into another field (e.g. QQ -> GF(p))."""
        return MultiPoly(field, self.vars, _clean(field, {m: field.coerce(c) for m, c in self.terms.items()}))

    # evaluation and substitution

    def evaluate(self, values):
        """Plug scalars in for some variables; returns a polynomial in the rest."""
        F = self.field
        idx = {}
        for v, val in values.items():
            i = self._index(v)
            if i is not None:
                idx[i] = F.coerce(val)
        if not idx:
            return self
        n = len(self.vars)
        rest = [i for i in range(n) if i not in idx]
        rvars = tuple(self.vars[i] for i in rest)
        pcache = {}
        out = {}
        for m, c in self.terms.items():
            e = unpack(m, n)
            for i, val in idx.items():
                if e[i]:
                    key = (i, e[i])
                    pw = pcache.get(key)
                    if pw is None:
                        pw = pcache[key] = F.normalize(val ** e[i])
                    c = c * pw
            k = pack([e[i] for i in rest])
            out[k] = out.get(k, 0) + c
        return MultiPoly(F, rvars, _clean(F, out))

    def __call__(self, **values):
        r = self.evaluate(values)
        return r.constant_value() if r.is_constant() else r

    def compose(self, bindings):
        """Simultaneous substitution of polynomials for variables."""
        F = self.field
        bound = {}
        for v, val in bindings.items():
            i = self._index(v)
            if i is not None:
                if not isinstance(val, MultiPoly):
                    val = MultiPoly.constant(val, F)
                bound[i] = val
        if not bound:
            return self
        n = len(self.vars)
        free = [i for i in range(n) if i not in bound]
        fvars = tuple(self.vars[i] for i in free)
        groups = {}
        for m, c in self.terms.items():
            e = unpack(m, n)
            key = tuple(e[i] for i in sorted(bound))
            mono = pack([e[i] for i in free])
            groups.setdefault(key, {})[mono] = c
        order = sorted(bound)
        powers = {i: [MultiPoly.constant(1, F)] for i in order}
        result = MultiPoly(F, (), {})
        for key, t in groups.items():
            term = MultiPoly(F, fvars, t)
            for i, k in zip(order, key):
                pl = powers[i]
                while len(pl) <= k:
                    pl.append(pl[-1] * bound[i])
                if k:
                    term = term * pl[k]
            result = result + term
        return result

    # text form

    def sort_key(self):
        return (self.field.tag, getattr(self.field, "p", 0), str(self))

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"MultiPoly[{self.field}]({to_text(self)})"


def _clean(field, d):
    norm = field.normalize
    out = {}
    for m, c in d.items():
        c = norm(c)
        if c:
            out[m] = c
    return out


def _mono_text(vars, exps):
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def to_text(f):
    """Canonical text: variables by name, terms by descending degree then lex."""
    t = f.trim()
    if not t.terms:
        return "0"
    n = len(t.vars)
    items = []
    for m, c in t.terms.items():
        e = unpack(m, n)
        items.append((-sum(e), [-x for x in e], e, c))
    items.sort(key=lambda it: (it[0], it[1]))
    out = []
    for _, _, e, c in items:
        mono = _mono_text(t.vars, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def polyvars(names, field=QQ):
    """Convenience: MultiPoly generators for a whitespace separated name list."""
    return tuple(MultiPoly.variable(v, field) for v in names.split())
