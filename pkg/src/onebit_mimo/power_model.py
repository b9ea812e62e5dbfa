"""ADC power law and the 1-bit vs full-resolution break-even bandwidth."""

from dataclasses import dataclass

import numpy as np

# Radiated-power backoff of the 1-bit architecture relative to full
# resolution (the pi/2 minimum-Eb/N0 penalty, 1.96 dB).
BACKOFF_DB = 10.0 * np.log10(np.pi / 2.0)


@dataclass(frozen=True)
class PowerBudget:
    pt_watts: float
    amp_efficiency: float  # in (0, 1]
    fom: float             # joules per conversion step
    bandwidth: float       # Hz
    resolution_bits: int
    kappa: float = 2.0     # per-bit power base, in [2, 4]
    n_adc: int = 2         # converters (2 per receive antenna)

    def __post_init__(self):
        if not (0 < self.amp_efficiency <= 1):
            raise ValueError("amplifier efficiency must be in (0, 1]")
        if not (2.0 <= self.kappa <= 4.0):
            raise ValueError("kappa must lie in [2, 4]")
        if min(self.pt_watts, self.fom, self.bandwidth, self.n_adc) <= 0 \
                or self.resolution_bits < 0:
            raise ValueError("power-budget fields must be positive")


def watts_from_dbm(pt_dbm: float) -> float:
    return 10.0 ** (pt_dbm / 10.0) * 1e-3


def adc_power(budget: PowerBudget) -> float:
    """Total converter power n_adc * FoM * B * kappa^b in watts."""
    return budget.n_adc * budget.fom * budget.bandwidth \
        * budget.kappa ** budget.resolution_bits


def breakeven_bandwidth(pt_watts: float, amp_efficiency: float, fom: float,
                        b_full: int, n_adc: int = 2, kappa: float = 2.0) -> float:
    """Bandwidth above which the 1-bit architecture's total power (with the
    1.96 dB radiated backoff) beats a b_full-bit one, in Hz.
    """
    if b_full < 1:
        raise ValueError("b_full must be >= 1")
    saved_fraction = 1.0 - 10.0 ** (-BACKOFF_DB / 10.0)
    radiated = pt_watts / amp_efficiency
    return saved_fraction * radiated / (n_adc * fom * (kappa ** b_full - kappa))
