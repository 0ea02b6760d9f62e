"""Kodaira fiber bookkeeping, Shioda-Tate arithmetic and the extremal rational tables."""

import json
import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import inf


class FibrationError(ValueError):
    pass


class NonMinimalModel(FibrationError):
    pass


@dataclass(frozen=True)
class KodairaFiber:
    symbol: str
    m: int
    euler: int
    root_type: str = None
    additive: bool = False
    split: bool = None
    wild_delta: int = 0

    @property
    def root_rank(self):
        return self.m - 1

    @property
    def root_disc(self):
        """Order of the discriminant group of the attached root lattice."""
        if not self.root_type:
            return 1
        typ, n = self.root_type[0], int(self.root_type[1:])
        return {"A": n + 1, "D": 4, "E": {6: 3, 7: 2, 8: 1}.get(n)}[typ]

    def to_json(self):
        return {"symbol": self.symbol, "m": self.m, "euler": self.euler, "root_type": self.root_type,
                "additive": self.additive, "split": self.split, "wild_delta": self.wild_delta}


_SPECIAL = {
    "II": (1, 2, None),
    "III": (2, 3, "A1"),
    "IV": (3, 4, "A2"),
    "IV*": (7, 8, "E6"),
    "III*": (8, 9, "E7"),
    "II*": (9, 10, "E8"),
}


def normalize_symbol(sym):
    s = sym.strip().replace("_", "").replace("^", "").replace("{", "").replace("}", "")
    s = s.replace("\\ast", "*").replace("ast", "*")
    return s


def fiber(symbol, split=None, wild_delta=0):
    """KodairaFiber from a symbol such as 'I2', 'I_2^*', 'IV*' or 'II'."""
    s = normalize_symbol(symbol)
    if s in _SPECIAL:
        m, e, root = _SPECIAL[s]
        f = KodairaFiber(s, m, e, root, True, None, wild_delta)
    else:
        mt = re.fullmatch(r"I(\d+)(\*?)", s)
        if not mt:
            raise FibrationError(f"unknown Kodaira symbol {symbol!r}")
        n, star = int(mt.group(1)), bool(mt.group(2))
        if star:
            f = KodairaFiber(f"I{n}*", n + 5, n + 6, f"D{n + 4}", True, None, wild_delta)
        else:
            if n == 0:
                return KodairaFiber("I0", 1, 0, None, False, None, 0)
            if split is None and n >= 1:
                split = True
            f = KodairaFiber(f"I{n}", n, n, f"A{n - 1}" if n >= 2 else None, False, split, wild_delta)
    return f


def _fin(v):
    return inf if v is None else v


def kodaira_from_valuations(v_c4, v_c6, v_delta, split=None):
    """Tame Kodaira type from the valuations of c4, c6 and the discriminant."""
    a, b, d = _fin(v_c4), _fin(v_c6), _fin(v_delta)
    if d == inf or d < 1:
        raise FibrationError("v(Delta) must be a positive integer")
    if a >= 4 and b >= 6 and d >= 12:
        raise NonMinimalModel("model is not minimal at this place; rescale (x, y) -> (u^2 x, u^3 y)")
    # c4^3 - c6^2 = 1728 Delta forces min(3a, 2b) <= d with equality unless 3a = 2b
    if min(3 * a, 2 * b) > d or (3 * a != 2 * b and min(3 * a, 2 * b) != d):
        raise FibrationError(f"inconsistent valuation triple ({v_c4}, {v_c6}, {v_delta})")
    if a == 0 and b == 0:
        return fiber(f"I{d}", split=split)
    if d == 2 and b == 1:
        return fiber("II")
    if d == 3 and a == 1:
        return fiber("III")
    if d == 4 and b == 2:
        return fiber("IV")
    if d == 6 and a >= 2 and b >= 3:
        return fiber("I0*")
    if a == 2 and b == 3 and d > 6:
        return fiber(f"I{d - 6}*")
    if d == 8 and b == 4:
        return fiber("IV*")
    if d == 9 and a == 3:
        return fiber("III*")
    if d == 10 and b == 5:
        return fiber("II*")
    raise FibrationError(f"inconsistent valuation triple ({v_c4}, {v_c6}, {v_delta})")


@dataclass
class FiberConfig:
    fibers: list = field(default_factory=list)
    mw_rank: int = 0
    mw_torsion_order: int = 1

    @classmethod
    def from_symbols(cls, symbols, mw_rank=0, mw_torsion_order=1):
        fibs = []
        for i, s in enumerate(symbols):
            fibs.append((f"v{i}", s if isinstance(s, KodairaFiber) else fiber(s)))
        return cls(fibs, mw_rank, mw_torsion_order)

    @property
    def symbols(self):
        return [f.symbol for _, f in self.fibers]


def shioda_tate_rho(cfg):
    return 2 + sum(f.m - 1 for _, f in cfg.fibers) + cfg.mw_rank


def euler_total(cfg):
    """(e, chi) with chi = e/12, or chi None when 12 does not divide e."""
    e = sum(f.euler + f.wild_delta for _, f in cfg.fibers)
    return e, (e // 12 if e % 12 == 0 else None)


def ns_discriminant(cfg, mwl_disc=1):
    mwl_disc = Fraction(mwl_disc)
    if cfg.mw_rank == 0 and mwl_disc != 1:
        raise FibrationError("Mordell-Weil rank 0 needs mwl_disc = 1")
    rho = shioda_tate_rho(cfg)
    prod = 1
    for _, f in cfg.fibers:
        prod *= f.root_disc
    val = Fraction(prod) * mwl_disc / (cfg.mw_torsion_order ** 2)
    return -val if (rho - 1) % 2 else val


# classification tables

@lru_cache(maxsize=1)
def load_tables():
    text = resources.files("k3fib").joinpath("data/extremal_tables.json").read_text()
    return json.loads(text)


def table_rows():
    t = load_tables()
    return [dict(r, table="semistable") for r in t["semistable"]] + [dict(r, table="unstable") for r in t["unstable"]]


def _key(symbols):
    return sorted(normalize_symbol(s) for s in symbols)


def _char_ok(row, char):
    if char is None:
        return True
    if row["char_required"] is not None:
        return char == row["char_required"]
    return char not in row["char_excluded"]


def lookup_extremal(fibers, characteristic=None):
    """Table rows whose singular-fiber multiset equals ``fibers``."""
    if isinstance(fibers, str):
        fibers = [s for s in re.split(r"[,\s]+", fibers) if s]
    key = _key(fibers)
    rows = [r for r in table_rows() if _key(r["fibers"]) == key and _char_ok(r, characteristic)]
    if not rows:
        raise FibrationError(f"no table row with fibers {','.join(key)}")
    return rows


def config_of_row(row):
    return FiberConfig.from_symbols(row["fibers"], 0, row["mw_order"])


def warn_default_split(f):
    if f.split is None and not f.additive and f.m > 1:
        warnings.warn(f"split/nonsplit not specified for {f.symbol}; assuming split", stacklevel=2)
