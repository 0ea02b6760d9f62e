import pytest

from k3fib.casebook import (CASES, EXTREMAL_FIBERS, analyze_fibers, coincidence3_elimination, coincidence4,
                            extremal_at, extremal_model, fiber_summary, inose_surface, kummer3_models,
                            kummer_as_fibration, legendre_curve, torsion_point, valuation, verify_case,
                            z2_surface, z3_model)
from k3fib.casebook.jacobians import GenusOneQuartic, jacobian_of_cubic, jacobian_of_quartic
from k3fib.casebook.weierstrass import CasebookError, WeierstrassModel, quadratic_twist, scaling_between
from k3fib.exactmath import GF, MultiRat, parse
from k3fib.counting import count_elliptic, count_fibered_surface, count_quartic


@pytest.fixture(scope="module")
def reports():
    return {c: verify_case(c) for c in CASES}


def test_all_cases_pass(reports):
    for c, rep in reports.items():
        assert rep.ok, c


def test_legendre_final_equation(reports):
    assert reports["legendre_to_kummer"].final == "y^2 = w*(w - 1)*(w - t2)*u*(u - 1)*(u - t1)"


def test_iiistar_records_literal_map(reports):
    rep = reports["IIIstar"].to_json()
    literal = [s for s in rep["steps"] if s["step"] == "w = -t2^2 (t2 - 1) T"]
    assert literal and literal[0]["ok"] is False
    assert rep["discrepancies"][0]["alpha"] == "(t1^3 - t1^2)/(t2^3 - t2^2)"


def test_case_aliases():
    assert verify_case("II*").case == "IIstar"
    with pytest.raises(CasebookError):
        verify_case("V*")


def test_report_json_schema(reports):
    j = reports["IVstar"].to_json()
    assert j["schema_version"] == 1 and set(j) >= {"case", "claim", "ok", "steps", "discrepancies"}


@pytest.mark.parametrize("name", sorted(EXTREMAL_FIBERS))
def test_extremal_fiber_configurations(name):
    got = fiber_summary(analyze_fibers(extremal_model(name)))
    assert got == EXTREMAL_FIBERS[name]


def test_z2_legendre_fibers():
    Z = z2_surface(extremal_model("legendre"))
    got = fiber_summary(analyze_fibers(Z, places=["0", "t1", "t2", "t1 + t2 - 1", "t1*t2", "oo"]))
    assert got == {"0": "I2", "t1": "I2", "t2": "I2", "t1 + t2 - 1": "I2", "t1*t2": "I2*", "oo": "I2*"}


def test_valuation_at_infinity():
    t = MultiRat.var("t")
    assert valuation(t ** 3 / (t + 1), "oo", "t") == -2


def test_torsion_identities():
    for name, n in (("IV*", 3), ("I5I5", 5)):
        E, P, order = torsion_point(name)
        assert order == n
        assert E.mul(P, n).is_infinity
        assert not E.mul(P, n - 1).is_infinity


def test_coincidence_points():
    C, pts, T = coincidence4()
    assert len(pts) == 6
    assert all(C.is_on_curve(P) for P in pts.values())
    assert C.mul(T, 2).is_infinity


def test_coincidence3_elimination():
    r = coincidence3_elimination()
    assert r["quadratic"] == parse("s^2 - (t1 + t2 + t3 - 1)*s + t1*t2*t3")
    assert r["disc_t3"] == parse("16*t1*t2*(t1 - 1)*(t2 - 1)")


def test_z3_models():
    m = z3_model()
    assert set(m) >= {"C", "E", "points"}
    assert fiber_summary(analyze_fibers(m["E"])) == EXTREMAL_FIBERS["legendre"]


def test_kummer3_model_degrees():
    k = kummer3_models()
    F = k["threefold"]
    assert F.degrees == (4, 4, 4)
    assert k["hodge"]["h11"] == 51 and k["hodge"]["h21"] == 3


def test_quartic_jacobian_counts_match():
    q = GenusOneQuartic.from_poly(parse("s^4 + 1"), "s", "w")
    J = jacobian_of_quartic(q)
    assert count_quartic(q, 13).total == count_elliptic(J, 13).total


def test_cubic_jacobian_of_weierstrass_cubic():
    f = parse("y^2*z - x^3 - 2*x*z^2 - 3*z^3")
    J = jacobian_of_cubic(f, ("x", "y", "z"), base=None)
    assert scaling_between(J, WeierstrassModel.short(2, 3, base=None)) is not None


def test_quadratic_twist_counts():
    E = legendre_curve(3)
    p = 11
    N = count_elliptic(E, p).total
    Nt = count_elliptic(quadratic_twist(E, MultiRat.const(2)), p).total  # 2 is not a square mod 11
    assert N + Nt == 2 * (p + 1)


def test_iistar_counts_invariant_under_chain():
    """Smooth counts of the base-changed II* fibration and its Inose form agree."""
    Z = z2_surface(extremal_model("II*"))
    ino = inose_surface(extremal_at("II*", "t1"), extremal_at("II*", "t2"))
    for t1, t2 in ((3, 5), (7, 12)):
        a = count_fibered_surface(Z, 31, {"t1": t1, "t2": t2}).total
        b = count_fibered_surface(ino, 31, {"t1": t1, "t2": t2}).total
        assert a == b


def test_kummer_fibration_fibers():
    K = kummer_as_fibration(legendre_curve(MultiRat.var("t1")), legendre_curve(MultiRat.var("t2")))
    got = fiber_summary(analyze_fibers(K, places=["0", "1", "t2", "oo"]))
    assert got == {"0": "I0*", "1": "I0*", "t2": "I0*", "oo": "I0*"}


def test_fibers_over_finite_field():
    E = extremal_model("legendre", field=GF(7))
    assert fiber_summary(analyze_fibers(E)) == EXTREMAL_FIBERS["legendre"]
