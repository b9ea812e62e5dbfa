"""End-to-end acceptance checks.

Each test covers one numbered criterion and prints a single PASS/FAIL line
with the measured values, then asserts.
"""

import numpy as np
import pytest

from oracles import dmc_mutual_information, fd_low_snr_derivatives
from onebit_mimo.beamforming import (beamforming_ebn0_bounds, best_mi_quartet,
                                     ergodic_beamforming_ebn0)
from onebit_mimo.capacity import (QuartetDistribution, blahut_arimoto,
                                  ergodic_mi, mutual_information)
from onebit_mimo.channel import ChannelSpec, channel_spec_from_json, \
    iid_rayleigh
from onebit_mimo.lowsnr import (LowSnrMetrics, equiprobable_ebn0_min,
                                iid_rayleigh_equiprobable_s0, low_snr_curve,
                                metrics)
from onebit_mimo.numerics import LOG2E
from onebit_mimo.power_model import breakeven_bandwidth, watts_from_dbm
from onebit_mimo.quantized_dmc import receive_set
from onebit_mimo.rayleigh_bounds import (ergodic_bounds, p_cap, p_cap_diagonal,
                                         table1_rows)


def report(criterion: int, ok: bool, detail: str):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
    assert ok, detail


def test_criterion_01_siso_rayleigh_minimum_and_curve():
    min_db = 10 * np.log10(equiprobable_ebn0_min(1))
    s0 = iid_rayleigh_equiprobable_s0(1, 1)
    m = LowSnrMetrics(ebn0_min_linear=equiprobable_ebn0_min(1), s0=s0)

    spec = ChannelSpec(model="iid_rayleigh", nt=1, nr=1, geometry=None, seed=0)
    snr_db = np.arange(-12.0, -1.5, 0.5)
    se, ebn0_db = [], []
    for s in snr_db:
        snr = 10 ** (s / 10.0)
        v = ergodic_mi(spec, snr, "equiprobable", n=2000, seed=0).mean
        se.append(v)
        ebn0_db.append(10 * np.log10(snr / v))
    se_at_1db = float(np.interp(1.0, ebn0_db, se))
    expansion = float(low_snr_curve(m, np.array([1.0]))[0])

    ok = (abs(min_db - 0.37) <= 0.02
          and 0.0 < se_at_1db < expansion + 0.05)
    report(1, ok, f"ebn0_min={min_db:.4f} dB, MC SE at 1 dB={se_at_1db:.4f} "
                  f"vs expansion={expansion:.4f} b/s/Hz")


def test_criterion_02_full_resolution_gap():
    db = 10 * np.log10(equiprobable_ebn0_min(1) * 2.0 / np.pi)
    ok = abs(db - (-1.59)) <= 0.01
    report(2, ok, f"full-resolution ebn0_min={db:.4f} dB vs -1.59 dB")


def test_criterion_03_table1():
    sizes = (1, 2, 4, 8, 16, 32)
    table = {(nr, nt): v for nr, nt, v in table1_rows(sizes, sizes)}
    targets = {(2, 2): 3.02, (4, 4): 6.07, (8, 8): 12.35,
               (8, 4): 7.79, (32, 32): 49.6}
    errs = {k: abs(table[k] - v) for k, v in targets.items()}
    ok = all(e <= 0.02 for e in errs.values())
    worst = max(errs, key=errs.get)
    report(3, ok, f"five table entries within 0.02 bits "
                  f"(worst {worst}: {errs[worst]:.4f})")


def test_criterion_04_p_cap_sanity():
    checks = []
    for nt in (2, 4, 8):
        checks.append(abs(p_cap(0, 0, nt) - 0.25) <= 1e-6)
        checks.append(p_cap(nt, nt, nt) <= 1e-9)
    sym = max(abs(p_cap(i, j, 8) - p_cap(j, i, 8))
              for i in range(9) for j in range(9))
    checks.append(sym <= 1e-6)
    from onebit_mimo.numerics import quad2d_positive_quadrant
    from onebit_mimo.rayleigh_bounds import p_cap_integrand
    diag = max(abs(quad2d_positive_quadrant(p_cap_integrand(i, i, 8), tol=1e-8)
                   - p_cap_diagonal(i, 8)) for i in range(1, 8))
    checks.append(diag <= 1e-6)
    ok = all(checks)
    report(4, ok, f"boundary/symmetry/diagonal checks; max symmetry "
                  f"gap={sym:.2e}, max diagonal gap={diag:.2e}")


def test_criterion_05_64x64_rayleigh_beamforming():
    spec = ChannelSpec(model="iid_rayleigh", nt=64, nr=64, geometry=None,
                       seed=7)
    iv = beamforming_ebn0_bounds(spec, asymptotic=True)
    mc_db = 10 * np.log10(ergodic_beamforming_ebn0(spec, n_draws=200, seed=7))
    ok = (abs(iv.lower_db - (-23.71)) <= 0.05
          and abs(iv.upper_db - (-21.77)) <= 0.05
          and -22.5 <= mc_db <= -21.9)
    report(5, ok, f"bounds=[{iv.lower_db:.3f}, {iv.upper_db:.3f}] dB, "
                  f"MC subset search={mc_db:.3f} dB")


def test_criterion_06_high_snr_limits():
    rng = np.random.default_rng(60)
    worst_vector = 0.0
    for k in range(20):
        if k % 2 == 0:
            nt, nr = 1, int(rng.integers(1, 5))
        else:
            nt, nr = int(rng.integers(1, 5)), 1
        h = iid_rayleigh(nt, nr, seed=int(rng.integers(1 << 20)))
        cap = blahut_arimoto(h, 1e6).capacity_bits
        worst_vector = max(worst_vector, abs(cap - 2.0))
    worst_mimo = 0.0
    for _ in range(10):
        h = iid_rayleigh(3, 3, seed=int(rng.integers(1 << 20)))
        cap = blahut_arimoto(h, 1e6).capacity_bits
        c_inf = np.log2(len(receive_set(h)))
        worst_mimo = max(worst_mimo, abs(cap - c_inf))
    ok = worst_vector <= 1e-3 and worst_mimo <= 1e-3
    report(6, ok, f"vector-channel dev={worst_vector:.2e}, "
                  f"3x3 dev from log2|Y|={worst_mimo:.2e}")


def test_criterion_07_oracle_equivalence():
    rng = np.random.default_rng(70)
    worst = 0.0
    for _ in range(25):
        nt = int(rng.integers(1, 4))
        nr = int(rng.integers(1, 4))
        h = iid_rayleigh(nt, nr, seed=int(rng.integers(1 << 20)))
        snr = float(10 ** rng.uniform(-2, 2))
        probs = rng.random(4 ** (nt - 1))
        p = QuartetDistribution(probs / probs.sum())
        mine = mutual_information(h, snr, p).mi_bits
        worst = max(worst, abs(mine - dmc_mutual_information(h, snr, p)))
    ok = worst <= 1e-9
    report(7, ok, f"25 draws, max |MI - DMC oracle| = {worst:.2e} bits")


def test_criterion_08_derivative_consistency():
    rng = np.random.default_rng(80)
    p = QuartetDistribution.equiprobable(2)
    worst = 0.0
    for _ in range(10):
        h = iid_rayleigh(2, 2, seed=int(rng.integers(1 << 20)))
        m = metrics(h, p)
        di, ddi = fd_low_snr_derivatives(
            lambda s: mutual_information(h, s, p).mi_bits)
        fd_min = 1.0 / di
        fd_s0 = 2.0 * di ** 2 / (-ddi * LOG2E)
        worst = max(worst,
                    abs(fd_min - m.ebn0_min_linear) / m.ebn0_min_linear,
                    abs(fd_s0 - m.s0) / m.s0)
    ok = worst <= 1e-3
    report(8, ok, f"10 draws, worst relative finite-difference "
                  f"error = {worst:.2e}")


def test_criterion_09_breakeven_bandwidth():
    # nominal figure of merit at b=10 corresponds to 1e-14 J per step
    b = breakeven_bandwidth(watts_from_dbm(23.0), 0.4, 1e-14, 10, n_adc=2)
    ok = abs(b - 8.8e9) <= 0.1e9
    report(9, ok, f"break-even bandwidth = {b / 1e9:.2f} GHz vs 8.8 GHz")


def test_criterion_10_ergodic_bracketing():
    snr_db = np.arange(-10.0, 26.0, 5.0)
    ok = True
    worst = ""
    for nt, nr in ((2, 2), (4, 4)):
        spec = ChannelSpec(model="iid_rayleigh", nt=nt, nr=nr, geometry=None,
                           seed=10)
        for s in snr_db:
            snr = 10 ** (s / 10.0)
            est = ergodic_mi(spec, snr, "equiprobable", n=500, seed=10)
            b = ergodic_bounds(snr, nt, nr)
            # 3-stderr slack on the Monte Carlo side of each comparison
            if not (b.lower_bits - 3 * est.stderr <= est.mean
                    <= b.upper_bits + 3 * est.stderr):
                ok = False
                worst = (f"{nt}x{nr} at {s} dB: {est.mean:.4f} outside "
                         f"[{b.lower_bits:.4f}, {b.upper_bits:.4f}]")
    spec = ChannelSpec(model="iid_rayleigh", nt=4, nr=1, geometry=None,
                       seed=10)
    for s in snr_db:
        snr = 10 ** (s / 10.0)
        est = ergodic_mi(spec, snr, "equiprobable", n=500, seed=10)
        jla = ergodic_bounds(snr, 4, 1).jla_bits
        if abs(est.mean - jla) > 3 * est.stderr:
            ok = False
            worst = (f"4x1 at {s} dB: closed form {jla:.4f} vs MC "
                     f"{est.mean:.4f} +- {est.stderr:.4f}")
    report(10, ok, worst or "MC inside bounds at all points; 4x1 closed form "
                            "within 3 stderr")


def test_criterion_11_strategy_crossover():
    spec = channel_spec_from_json({
        "model": "los_planar", "nt": 4, "nr": 4, "wavelength": 0.005,
        "spacing_tx": 0.0025, "spacing_rx": 0.0025,
        "elev_tx_deg": 45.0, "elev_rx_deg": 30.0, "azimuth_deg": 45.0})
    h = spec.sample()
    vals = {}
    for s in (-15.0, 15.0):
        snr = 10 ** (s / 10.0)
        eq = mutual_information(h, snr,
                                QuartetDistribution.equiprobable(4)).mi_bits
        bf = best_mi_quartet(h, snr, mode="subset").objective
        cap = blahut_arimoto(h, snr).capacity_bits
        vals[s] = (eq, bf, cap)
    lo_eq, lo_bf, lo_cap = vals[-15.0]
    hi_eq, hi_bf, hi_cap = vals[15.0]
    ok = (lo_bf >= lo_eq
          and hi_eq > 2.2 > hi_bf
          and lo_cap >= max(lo_eq, lo_bf) - 1e-6
          and hi_cap >= max(hi_eq, hi_bf) - 1e-6)
    report(11, ok, f"-15 dB: bf={lo_bf:.3f} >= eq={lo_eq:.3f}; "
                   f"+15 dB: eq={hi_eq:.3f} > 2.2 > bf={hi_bf:.3f}; "
                   f"capacity dominates both")
