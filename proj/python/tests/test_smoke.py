import json
from fractions import Fraction

import pytest

import commucount


def test_count_2x2():
    assert commucount.count_commuting_2x2(1) == 817
    assert commucount.gamma_split(1) == (665, 152)
    assert commucount.brute_commuting_count(2, 1) == 817


def test_big_integers_are_exact():
    value = commucount.count_commuting_2x2(10000)
    assert isinstance(value, int)
    assert value > 2**63


def test_divisor_values():
    assert commucount.r_zero(2) == 129
    assert commucount.r_value(1, 0) == commucount.r_zero(1)
    assert commucount.moment(1, 2) > 0


def test_padic():
    assert commucount.fast_padic_count(2, 2) == 6400
    assert commucount.sigma_p(3) == Fraction(13, 9)
    assert commucount.main_term(2, 1) == Fraction(21, 16)


def test_lower_bound():
    assert commucount.lower_bound_certificate(2, 1) == 553


def test_errors():
    with pytest.raises(commucount.NotPrime):
        commucount.fast_padic_count(4, 1)
    with pytest.raises(commucount.InvalidInput):
        commucount.count_commuting_2x2(-1)
    with pytest.raises(commucount.BudgetExceeded):
        commucount.brute_commuting_count(3, 3, budget=1000)
    with pytest.raises(commucount.UnsupportedDimension):
        commucount.lower_bound_certificate(4, 1)
    assert issubclass(commucount.NotPrime, commucount.Error)


def test_run_cli():
    code, out, _ = commucount.run_cli(["--no-cache", "count2", "--n", "1"])
    assert code == 0
    assert json.loads(out.splitlines()[0])["value"] == "817"
    code, _, _ = commucount.run_cli(["padic", "--p", "9", "--n", "1", "--method", "fast"])
    assert code == 4
