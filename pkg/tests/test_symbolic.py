"""Declared-basis reals: construction rules, canonical form, arithmetic."""

from __future__ import annotations

from fractions import Fraction

import pytest

from multirot.errors import UsageError
from multirot.exact.symbolic import BasisEntry, BasisTable, SymbolicReal, builtin_table


def test_builtin_table_values_have_enough_digits():
    t = builtin_table()
    assert "sqrt2" in t
    v = t.value("sqrt2")
    assert abs(v * v - 2) < Fraction(1, 10**55)


def test_duplicate_labels_rejected():
    e = BasisEntry("x", "1." + "3" * 55, True)
    with pytest.raises(UsageError):
        BasisTable([e, e])


def test_value_range_enforced():
    with pytest.raises(UsageError):
        BasisTable([BasisEntry("x", "-1." + "3" * 55, True)])
    with pytest.raises(UsageError):
        BasisTable([BasisEntry("x", "2000000." + "3" * 50, True)])


def test_short_values_rejected():
    with pytest.raises(UsageError):
        BasisTable([BasisEntry("x", "1.5", True)])


def test_zero_coefficients_dropped():
    t = builtin_table()
    x = SymbolicReal(t, Fraction(1, 2), {"sqrt2": Fraction(0)})
    assert x.coeffs == {}
    assert x.is_rational()


def test_equality_is_literal_on_shared_table():
    t = builtin_table()
    a = t.symbol("sqrt2") + Fraction(1, 2)
    b = SymbolicReal(t, Fraction(1, 2), {"sqrt2": 1})
    assert a == b
    assert hash(a) == hash(b)
    assert a != t.symbol("sqrt2")


def test_mixed_tables_rejected():
    t1 = builtin_table(["sqrt2"])
    t2 = builtin_table(["sqrt2"])
    with pytest.raises(UsageError):
        _ = t1.symbol("sqrt2") + t2.symbol("sqrt2")


def test_linear_arithmetic_and_cancellation():
    t = builtin_table()
    s2 = t.symbol("sqrt2")
    x = 2 * s2 + 1 - s2 * 2
    assert x.is_rational() and x.q0 == 1
    y = (s2 + s2) * Fraction(1, 2) - s2
    assert y.q0 == 0 and y.coeffs == {}


def test_value_and_frac():
    t = builtin_table()
    x = t.symbol("sqrt2") + t.symbol("sqrt3")
    # 50-digit reference for frac(sqrt2 + sqrt3)
    assert abs(float(x.frac()) - 0.14626436994197234233) < 1e-15
    fp = x.fixed_point(128)
    assert abs(fp / 2**128 - float(x.frac())) < 1e-15


def test_unknown_label_rejected():
    t = builtin_table(["sqrt2"])
    with pytest.raises(UsageError):
        SymbolicReal(t, 0, {"sqrt3": 1})
