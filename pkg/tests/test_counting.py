import random

import pytest
from hypothesis import given, strategies as st

from k3fib.casebook import extremal_model, kummer_as_fibration, legendre_curve, z2_surface
from k3fib.casebook.jacobians import GenusOneQuartic, jacobian_of_quartic
from k3fib.casebook.weierstrass import WeierstrassModel, quadratic_twist
from k3fib.counting import (BUDGET_ENV, BudgetExceeded, CountingError, CountReport, Series, brute_force_cubic,
                            brute_force_zeros, compare_mod_p, count_affine_hypersurface, count_cubic_ints,
                            count_elliptic, count_fibered_surface, count_quartic, count_quartic_ints,
                            fiber_types_mod_p, local_fibers, quartic_is_smooth, threefold_experiment,
                            weil_window)
from k3fib.counting.curves import disc_ints
from k3fib.exactmath import MultiRat, parse

PRIMES = [5, 7, 11, 13, 17, 19, 23, 101]
t = MultiRat.var("t")


def curve(*a):
    return WeierstrassModel(*a, base=None, check=False)


# curves

def test_supersingular_f3():
    r = count_elliptic(curve(0, 0, 0, -1, 0), 3)
    assert (r.total, r.a_trace) == (4, 0)


def test_legendre_f7_matches_scan():
    E = legendre_curve(2)
    assert count_elliptic(E, 7).total == brute_force_cubic([0, -3, 0, 2, 0], 7) == 8


def test_characteristic_two_exhaustive():
    r = count_elliptic(curve(1, 0, 1, 0, 1), 2)
    assert r.total == brute_force_cubic([1, 0, 1, 0, 1], 2)


def test_singular_curve_rejected():
    with pytest.raises(CountingError):
        count_elliptic(curve(0, 0, 0, 0, 0), 5)


@given(st.sampled_from(PRIMES), st.lists(st.integers(0, 100), min_size=5, max_size=5))
def test_hasse_bound_and_scan(p, a):
    a = [c % p for c in a]
    if disc_ints(a, p) == 0:
        return
    r = count_elliptic(curve(*a), p)
    assert r.a_trace ** 2 <= 4 * p
    if p < 30:
        assert r.total == brute_force_cubic(a, p)


@given(st.sampled_from([13, 17, 101]), st.lists(st.integers(0, 100), min_size=5, max_size=5))
def test_quartic_equals_jacobian(p, c):
    c = [x % p for x in c]
    if not quartic_is_smooth(c, p):
        return
    q = GenusOneQuartic(*[MultiRat.const(x) for x in c])
    assert count_quartic(q, p).total == count_elliptic(jacobian_of_quartic(q), p).total


def test_quartic_at_infinity_rules():
    p = 13
    # y^2 = s^4 + 1: two points over s = oo; y^2 = s^3 + 1: one
    assert count_quartic_ints([1, 0, 0, 0, 1], p) == sum(1 + (1 if pow((s ** 4 + 1) % p, 6, p) == 1 else
                                                               0 if (s ** 4 + 1) % p == 0 else -1)
                                                          for s in range(p)) + 2
    assert count_quartic_ints([0, 1, 0, 0, 1], p) == count_cubic_ints([0, 0, 0, 0, 1], p)


# series

def test_series_inverse():
    p = 101
    s = Series.from_poly([3, 5, 7, 0, 1], p, 12)
    one = s * s.inverse()
    assert one.val == 0 and one.c[0] == 1 and not any(one.c[1:])


# surfaces

def test_kummer_oracle():
    p = 101
    Z = z2_surface(extremal_model("legendre"))
    K = kummer_as_fibration(legendre_curve(MultiRat.var("t1")), legendre_curve(MultiRat.var("t2")))
    for t1, t2 in ((3, 5), (10, 77)):
        a1 = count_elliptic(legendre_curve(t1), p).a_trace
        a2 = count_elliptic(legendre_curve(t2), p).a_trace
        expect = 1 + 18 * p + p * p + a1 * a2
        assert count_fibered_surface(Z, p, {"t1": t1, "t2": t2}).total == expect
        assert count_fibered_surface(K, p, {"t1": t1, "t2": t2}).total == expect


def test_constant_fibration_is_product():
    p = 13
    E = WeierstrassModel(0, 0, 0, 1, 2, base="t")  # constant in t
    NE = count_elliptic(curve(0, 0, 0, 1, 2), p).total
    assert count_fibered_surface(E, p).total == (p + 1) * NE


@pytest.mark.parametrize("name", ["legendre", "II*", "III*", "IV*", "I5I5"])
def test_extremal_rational_surfaces(name):
    p = 31
    r = count_fibered_surface(extremal_model(name), p)
    assert r.total % p == 1
    assert abs(r.total - 1 - p * p) <= 10 * p
    assert sum(c for _, c, _ in r.per_fiber) == r.total


@given(st.sampled_from(["legendre", "II*", "III*", "IV*", "I5I5"]),
       st.sampled_from(["1", "t", "t*(t - 1)", "t^2 + 3", "t - 5", "t^3 - 2"]),
       st.integers(0, 10 ** 6))
def test_smooth_count_invariant_under_moebius(name, d, seed):
    p = 19
    E = extremal_model(name)
    M = quadratic_twist(E, parse(d)) if d != "1" else E
    rng = random.Random(seed)
    while True:
        a, b, c, e = (rng.randrange(p) for _ in range(4))
        if (a * e - b * c) % p:
            break
    N = M.subs({"t": (t * a + b) / (t * c + e)}, base="t")
    assert count_fibered_surface(M, p).total == count_fibered_surface(N, p).total


def test_naive_and_smooth_agree_mod_p():
    p = 23
    M = quadratic_twist(extremal_model("IV*"), parse("t*(t - 1)"))
    a = count_fibered_surface(M, p, mode="naive")
    b = count_fibered_surface(M, p, mode="smooth")
    assert (a.total - b.total) % p == 0
    for (s1, n1, f1), (s2, n2, f2) in zip(a.per_fiber, b.per_fiber):
        assert s1 == s2 and f1 == f2 and (n1 - n2) % p == 0
        if not f1:
            assert n1 == n2


def test_i1_fibers_resolved_count_equals_nodal_cubic():
    p = 29
    for F in local_fibers(extremal_model("II*"), p):
        if F.symbol == "I1":
            assert F.smooth_count() == F.naive_count()


def test_fiber_types_mod_p():
    got = fiber_types_mod_p(quadratic_twist(extremal_model("III*"), parse("t")), 13)
    assert got == {"0": "I2*", "1": "I1", "oo": "III"}


def test_k3_weil_window():
    p = 101
    Z = z2_surface(extremal_model("legendre"))
    r = count_fibered_surface(Z, p, {"t1": 4, "t2": 9})
    assert weil_window(r.total, p)


def test_small_characteristic_rejected():
    with pytest.raises(CountingError):
        count_fibered_surface(extremal_model("legendre"), 3)


def test_report_json():
    r = count_fibered_surface(extremal_model("legendre"), 7)
    j = r.to_json()
    assert j["schema_version"] == 1 and j["p"] == 7 and len(j["per_fiber"]) == 8


# affine counts

def test_linear_form_zero_count():
    assert count_affine_hypersurface(parse("x"), 11, variables=["x", "y", "z"]).total == 121


@given(st.sampled_from([3, 5, 7]), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_vectorized_matches_scan(p, c):
    f = parse(f"{c[0]}*x^3 + {c[1]}*x*y + {c[2]}*y^2*z + {c[3]}*z^2 + {c[4]}*x + {c[5]}")
    vs = ["x", "y", "z"]
    r = count_affine_hypersurface(f, p, variables=vs)
    assert r.total == brute_force_zeros(f, p, vs)
    assert sum(r.meta["chunks"]) == r.total


def test_fubini_consistency():
    p = 7
    f = parse("y^2 - x*(x - 1)*(x - t)")
    whole = count_affine_hypersurface(f, p, variables=["t", "x", "y"]).total
    parts = sum(count_affine_hypersurface(f, p, params={"t": s}, variables=["x", "y"]).total for s in range(p))
    assert whole == parts


def test_system_count():
    r = count_affine_hypersurface([parse("x - y"), parse("x^2 - y*z - 1")], 7)
    assert r.total == brute_force_zeros([parse("x - y"), parse("x^2 - y*z - 1")], 7, ["x", "y", "z"])


def test_budget(monkeypatch):
    with pytest.raises(BudgetExceeded):
        count_affine_hypersurface(parse("x*y*z"), 11, budget=1000)
    monkeypatch.setenv(BUDGET_ENV, "100")
    with pytest.raises(BudgetExceeded):
        count_affine_hypersurface(parse("x*y"), 11)
    monkeypatch.setenv(BUDGET_ENV, "1e6")
    assert count_affine_hypersurface(parse("x*y"), 11).total == 21


def test_progress_callback():
    seen = []
    count_affine_hypersurface(parse("x + y"), 5, progress=lambda v, n: seen.append((v, n)))
    assert seen == [(v, 1) for v in range(5)]


def test_kummer_threefold_chart():
    from k3fib.casebook import kummer3_models
    F = kummer3_models((2, 3, 4))["threefold"].poly
    r = count_affine_hypersurface(F, 5, params={"z1": 1, "z2": 1, "z3": 1}, variables=["x1", "x2", "x3", "y"])
    assert r.total == 117


def test_compare_verdicts():
    a, b, c = CountReport(5, 10), CountReport(5, 15), CountReport(5, 11)
    assert compare_mod_p(a, a)["verdict"] == "equal"
    assert compare_mod_p(a, b)["verdict"] == "match mod p, differ absolutely"
    assert compare_mod_p(a, c)["verdict"] == "differ mod p"
    with pytest.raises(CountingError):
        compare_mod_p(a, CountReport(7, 10))


@pytest.mark.parametrize("p, ts", [(5, (2, 3, 4)), (7, (2, 3, 5))])
def test_threefold_experiment(p, ts):
    rep = threefold_experiment(p, ts)
    assert rep["ok"], rep["checks"]
    assert all(e["mod_p_zero"] for e in rep["kummer"]["ledger"][1:])
