import pytest

from k3fib.fibration import (FiberConfig, FibrationError, NonMinimalModel, euler_total, fiber,
                             kodaira_from_valuations, lookup_extremal, ns_discriminant, shioda_tate_rho, table_rows)


@pytest.mark.parametrize("sym, m, e, root", [("I0", 1, 0, None), ("I1", 1, 1, None), ("I5", 5, 5, "A4"),
                                             ("II", 1, 2, None), ("III", 2, 3, "A1"), ("IV", 3, 4, "A2"),
                                             ("I0*", 5, 6, "D4"), ("I3*", 8, 9, "D7"), ("IV*", 7, 8, "E6"),
                                             ("III*", 8, 9, "E7"), ("II*", 9, 10, "E8")])
def test_fiber_table(sym, m, e, root):
    f = fiber(sym)
    assert (f.m, f.euler, f.root_type) == (m, e, root)


def test_symbol_spellings():
    assert fiber("I_2^*").symbol == "I2*"
    assert fiber("I_{4}").symbol == "I4"


@pytest.mark.parametrize("vals, sym", [((0, 0, 3), "I3"), ((1, 1, 2), "II"), ((1, 2, 3), "III"),
                                       ((2, 2, 4), "IV"), ((2, 3, 6), "I0*"), ((2, 3, 9), "I3*"),
                                       ((3, 4, 8), "IV*"), ((3, 5, 9), "III*"), ((4, 5, 10), "II*"),
                                       ((None, 3, 6), "I0*"), ((2, None, 6), "I0*")])
def test_valuation_classification(vals, sym):
    assert kodaira_from_valuations(*vals).symbol == sym


def test_non_minimal_and_inconsistent():
    with pytest.raises(NonMinimalModel):
        kodaira_from_valuations(4, 6, 12)
    with pytest.raises(FibrationError):
        kodaira_from_valuations(0, 0, 0)
    with pytest.raises(FibrationError):
        kodaira_from_valuations(1, 1, 5)


def test_every_table_row_is_extremal_rational():
    rows = table_rows()
    assert len(rows) > 10
    for r in rows:
        cfg = FiberConfig.from_symbols(r["fibers"], 0, r["mw_order"])
        assert shioda_tate_rho(cfg) == 10, r
        assert euler_total(cfg) == (12, 1), r


def test_lookup():
    rows = lookup_extremal("I1,I2,I3,I6")
    assert [r["mw"] for r in rows] == ["Z/6Z"]
    assert [r["mw"] for r in lookup_extremal(["II*", "I1", "I1"], characteristic=0)] == ["0"]
    assert lookup_extremal("II,I5,I5", characteristic=5)[0]["mw"] == "Z/5Z"
    with pytest.raises(FibrationError):
        lookup_extremal("II,I5,I5", characteristic=7)
    assert len(lookup_extremal("IV*,I1,I3")) == 2
    with pytest.raises(FibrationError):
        lookup_extremal("I1,I1")


def test_ns_discriminants():
    km = FiberConfig.from_symbols(["I0*"] * 4, 0, 4)
    assert ns_discriminant(km) == -16
    z2 = FiberConfig.from_symbols(["I2"] * 4 + ["I2*"] * 2, 0, 4)
    assert shioda_tate_rho(z2) == 18
    assert ns_discriminant(z2) == -16


def test_k3_euler():
    cfg = FiberConfig.from_symbols(["II*", "II*", "I1", "I1", "I1", "I1"])
    assert euler_total(cfg) == (24, 2)
