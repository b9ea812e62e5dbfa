"""ADC power model and the resolution break-even bandwidth."""

import numpy as np
import pytest

from onebit_mimo.power_model import (BACKOFF_DB, PowerBudget, adc_power,
                                     breakeven_bandwidth, watts_from_dbm)


def test_watts_from_dbm():
    assert watts_from_dbm(30.0) == pytest.approx(1.0)
    assert watts_from_dbm(23.0) == pytest.approx(0.19953, rel=1e-4)


def test_backoff_is_pi_over_two():
    assert BACKOFF_DB == pytest.approx(10 * np.log10(np.pi / 2))


def budget(**kw):
    args = dict(pt_watts=0.2, amp_efficiency=0.4, fom=1e-14, bandwidth=1e9,
                resolution_bits=10, n_adc=2, kappa=2.0)
    args.update(kw)
    return PowerBudget(**args)


def test_adc_power_formula():
    assert adc_power(budget()) == pytest.approx(2 * 1e-14 * 1e9 * 2 ** 10)


def test_power_budget_validation():
    with pytest.raises(ValueError):
        budget(fom=-1e-14)
    with pytest.raises(ValueError):
        budget(kappa=5.0)
    with pytest.raises(ValueError):
        budget(amp_efficiency=1.5)


def test_breakeven_reference_point():
    b = breakeven_bandwidth(watts_from_dbm(23.0), 0.4, 1e-14, 10, n_adc=2)
    assert b == pytest.approx(8.8e9, abs=0.1e9)


def test_breakeven_monotonicities():
    base = breakeven_bandwidth(0.2, 0.4, 1e-14, 10)
    assert breakeven_bandwidth(0.2, 0.4, 1e-14, 10, n_adc=4) < base
    assert breakeven_bandwidth(0.2, 0.4, 2e-14, 10) < base
    assert breakeven_bandwidth(0.4, 0.4, 1e-14, 10) > base
    assert breakeven_bandwidth(0.2, 0.2, 1e-14, 10) > base
    with pytest.raises(ValueError):
        breakeven_bandwidth(0.2, 0.4, 1e-14, 0)
