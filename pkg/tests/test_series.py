from fractions import Fraction

import pytest

from boolform.errors import DomainError
from boolform.exhaustive import classifier_counts, count_trees
from boolform.series import (AUX_KINDS, PowerSeries, log_one_minus_z,
                             polya_sum, series_sanity, solve_aux_series,
                             solve_half_series, solve_model_series)
from boolform.trees import ModelId

ALL_MODELS = list(ModelId)


def test_power_series_arithmetic():
    a = PowerSeries([Fraction(1), Fraction(2), Fraction(3)])
    b = PowerSeries([Fraction(0), Fraction(1), Fraction(0)])
    assert (a * b).coeffs == [Fraction(0), Fraction(1), Fraction(2)]
    assert (a + b).coeffs == [Fraction(1), Fraction(3), Fraction(3)]
    assert a.derivative().coeffs == [Fraction(2), Fraction(6)]
    assert a.evaluate(Fraction(1, 2)) == Fraction(1) + 1 + Fraction(3, 4)


def test_power_series_inverse_and_exp():
    one_minus = PowerSeries([Fraction(1), Fraction(-1), Fraction(0), Fraction(0)])
    inv = one_minus.inverse()
    assert inv.coeffs == [Fraction(1)] * 4
    z = PowerSeries([Fraction(0), Fraction(1), Fraction(0), Fraction(0)])
    e = z.exp()
    assert e.coeffs == [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6)]
    # log_one_minus_z is the positive series log(1/(1-z))
    assert log_one_minus_z(6).exp() == PowerSeries([Fraction(1)] * 7)


def test_substitute_power():
    s = PowerSeries([Fraction(0), Fraction(1), Fraction(1), Fraction(1),
                     Fraction(1)])
    sq = s.substitute_power(2)
    assert sq.coeffs == [Fraction(0), Fraction(0), Fraction(1), Fraction(0),
                         Fraction(1)]


def test_polya_sum_first_terms():
    s = PowerSeries([Fraction(0), Fraction(1), Fraction(0), Fraction(0),
                     Fraction(0)])
    p = polya_sum(s)
    # z + z^2/2 + z^3/3 + z^4/4
    assert p.coeffs == [Fraction(0), Fraction(1), Fraction(1, 2),
                        Fraction(1, 3), Fraction(1, 4)]


@pytest.mark.parametrize("model,max_m", [
    (ModelId.CATALAN, 9), (ModelId.COMM, 9),
    (ModelId.ASSOC, 8), (ModelId.ASSOC_COMM, 8),
])
def test_series_coefficients_equal_counts(model, max_m):
    for n in (1, 2):
        s = solve_model_series(model, n, max_m)
        assert s.coeffs[0] == 0
        for m in range(1, max_m + 1):
            assert s.coeffs[m] == count_trees(model, m, n), (model, m, n)


def test_half_series_only_for_stratified():
    with pytest.raises(DomainError):
        solve_half_series(ModelId.CATALAN, 1)
    half = solve_half_series(ModelId.ASSOC_COMM, 2, 4)
    # full = 2*half - 2nz
    full = solve_model_series(ModelId.ASSOC_COMM, 2, 4)
    assert full.coeffs[1] == 2 * 2
    assert 2 * half.coeffs[2] == full.coeffs[2]
    assert list(half.coeffs[1:5]) == [4, 10, 60, 430]


@pytest.mark.parametrize("model", ALL_MODELS)
@pytest.mark.parametrize("kind", ["g_x", "st_x"])
def test_aux_series_match_classifier_counts(model, kind):
    for n in (1, 2):
        s = solve_aux_series(model, kind, n, 7)
        for m in range(1, 8):
            assert s.coeffs[m] == classifier_counts(model, kind, m, n), \
                (model, kind, m, n)


@pytest.mark.parametrize("model", ALL_MODELS)
def test_aux_complements(model):
    n = 2
    base = solve_model_series(model, n, 8)
    for kind, bar in (("g_x", "gbar_x"), ("st_x", "stbar_x")):
        s = solve_aux_series(model, kind, n, 8)
        sbar = solve_aux_series(model, bar, n, 8)
        assert s + sbar == base


def test_h_x_is_catalan_only():
    s = solve_aux_series(ModelId.CATALAN, "h_x", 1, 6)
    assert s.coeffs[0] == 0
    with pytest.raises(DomainError):
        solve_aux_series(ModelId.COMM, "h_x", 1, 6)


def test_simple_x_kinds_exist():
    for kind in ("simple_x_T", "simple_x_X"):
        assert kind in AUX_KINDS
        s = solve_aux_series(ModelId.CATALAN, kind, 1, 6)
        assert all(c >= 0 for c in s.coeffs)


@pytest.mark.parametrize("model", ALL_MODELS)
def test_series_sanity_zero_residuals(model):
    for n in (1, 2):
        rep = series_sanity(model, n, 24)
        assert rep.ok, rep.checks


def test_frozen_aux_coefficients():
    assert solve_aux_series(ModelId.CATALAN, "g_x", 1, 4).coeffs[1] == 1
    assert solve_aux_series(ModelId.CATALAN, "st_x", 1, 4).coeffs[2] == 2
    assert solve_aux_series(ModelId.COMM, "st_x", 1, 4).coeffs[2] == 1
    assert solve_aux_series(ModelId.ASSOC, "st_x", 1, 4).coeffs[3] == 6
    assert solve_aux_series(ModelId.ASSOC_COMM, "st_x", 1, 4).coeffs[3] == 2


def test_to_json_fractions():
    s = PowerSeries([Fraction(1, 3), Fraction(-2, 7)])
    assert s.to_json() == ["1/3", "-2/7"]
