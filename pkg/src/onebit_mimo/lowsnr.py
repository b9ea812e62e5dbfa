"""Low-SNR machinery: minimum Eb/N0, wideband slope, the two-term
expansion curve, closed-form specializations, and the beamforming-advantage
bounds."""

from dataclasses import dataclass

import numpy as np

from .capacity import QuartetDistribution
from .channel import ChannelMatrix, ChannelSpec, spectral
from .numerics import LOG2E, db_from_linear
from .quantized_dmc import quartet_representatives

ONEBIT_PENALTY_DB = db_from_linear(np.pi / 2.0)  # 1.961 dB


@dataclass(frozen=True)
class LowSnrMetrics:
    ebn0_min_linear: float
    s0: float

    @property
    def ebn0_min_db(self) -> float:
        return db_from_linear(self.ebn0_min_linear)


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("interval endpoints out of order")

    @property
    def lower_db(self) -> float:
        return db_from_linear(self.lower)

    @property
    def upper_db(self) -> float:
        return db_from_linear(self.upper)


def _expect_over_draws(spec: ChannelSpec, func, n_draws: int, seed: int):
    import dataclasses
    spec = dataclasses.replace(spec, seed=seed)
    if not spec.is_ergodic:
        return func(spec.sample())
    return np.mean([func(spec.sample(draw=i)) for i in range(n_draws)], axis=0)


def ebn0_min(channel, p: QuartetDistribution, n_draws: int = 10_000,
             seed: int = 0) -> float:
    """Minimum Eb/N0 (linear), pi*Nt / (E[tr(H Sigma_x H*)] log2 e).

    channel is a fixed ChannelMatrix or a ChannelSpec ensemble.
    """
    nt = channel.nt
    sigma = p.sigma_x(nt)
    if float(np.trace(sigma).real) <= 0:
        raise ValueError("input covariance has zero trace")

    def tr_term(h: ChannelMatrix):
        return float(np.trace(h.entries @ sigma @ h.entries.conj().T).real)

    if isinstance(channel, ChannelSpec):
        e_tr = float(_expect_over_draws(channel, tr_term, n_draws, seed))
    else:
        e_tr = tr_term(channel)
    return np.pi * nt / (e_tr * LOG2E)


def equiprobable_ebn0_min(nr: int) -> float:
    """Closed form pi/(2 Nr log2 e), Nt-independent under normalization."""
    return np.pi / (2.0 * nr * LOG2E)


def _quartic_term(h: np.ndarray, p: QuartetDistribution) -> float:
    """E_x[ ||Re Hx||_4^4 + ||Im Hx||_4^4 ] for the quartet distribution."""
    x = quartet_representatives(h.shape[1])
    z = h @ x  # Nr x K
    per_k = np.sum(z.real ** 4 + z.imag ** 4, axis=0)
    return float(np.dot(p.probs, per_k))


def equiprobable_quartic_term(h: np.ndarray) -> float:
    """Closed-form quartic moment under IID QPSK inputs."""
    hh = h @ h.conj().T
    diag_sq = float(np.sum(np.abs(np.diag(hh)) ** 2))
    entry_term = float(np.sum(h.real ** 4 + h.imag ** 4))
    return 6.0 * diag_sq - 4.0 * entry_term


def wideband_slope(channel, p: QuartetDistribution, n_draws: int = 10_000,
                   seed: int = 0) -> float:
    """Wideband slope S0 in b/s/Hz per 3 dB.

    For ensembles the three expectations are Monte Carlo averages unless a
    closed form applies (see iid_rayleigh_equiprobable_s0, eta1_los_s0).
    """
    nt = channel.nt
    sigma = p.sigma_x(nt)
    equiprobable = np.allclose(p.probs, 1.0 / p.probs.size)

    def pieces(h: ChannelMatrix):
        hm = h.entries
        g = hm @ sigma @ hm.conj().T
        tr = float(np.trace(g).real)
        nd = g - np.diag(np.diag(g))
        nd_sq = float(np.trace(nd @ nd).real)
        if equiprobable:
            quartic = equiprobable_quartic_term(hm)
        else:
            quartic = _quartic_term(hm, p)
        return np.array([tr, nd_sq, quartic])

    if isinstance(channel, ChannelSpec):
        e_tr, e_nd, e_q4 = _expect_over_draws(channel, pieces, n_draws, seed)
    else:
        e_tr, e_nd, e_q4 = pieces(channel)
    return e_tr ** 2 / (0.5 * e_nd + (np.pi - 1.0) / 3.0 * e_q4)


def iid_rayleigh_equiprobable_s0(nt: int, nr: int) -> float:
    """Closed form 2 Nt Nr / ((pi-1) Nt + Nr - 1)."""
    return 2.0 * nt * nr / ((np.pi - 1.0) * nt + nr - 1.0)


def eta1_los_s0(n: int) -> float:
    """Closed-form S0 for the equal-eigenvalue ULA LOS channel, Nt=Nr=N."""
    idx = np.arange(n)
    ang = 2.0 * np.pi * np.outer(idx, idx) / n
    quartic = float(np.sum(np.cos(ang) ** 4 + np.sin(ang) ** 4))
    return (2.0 / (np.pi - 1.0)) * n ** 4 / (n ** 3 - (2.0 / 3.0) * quartic)


def metrics(channel, p: QuartetDistribution, n_draws: int = 10_000,
            seed: int = 0) -> LowSnrMetrics:
    return LowSnrMetrics(ebn0_min_linear=ebn0_min(channel, p, n_draws, seed),
                         s0=wideband_slope(channel, p, n_draws, seed))


def low_snr_curve(m: LowSnrMetrics, ebn0_db_grid) -> np.ndarray:
    """Two-term expansion S0 * (EbN0|dB - min|dB) / 3 per grid point.

    Points below the minimum are emitted as 0.
    """
    grid = np.asarray(ebn0_db_grid, dtype=float)
    bits = m.s0 * (grid - m.ebn0_min_db) / 3.0
    return np.maximum(bits, 0.0)


def fullres_ebn0_min(m: LowSnrMetrics) -> LowSnrMetrics:
    """Remove the 1-bit quantization penalty: scale the minimum by 2/pi."""
    return LowSnrMetrics(ebn0_min_linear=m.ebn0_min_linear * 2.0 / np.pi,
                         s0=m.s0)


def spectral_expectations(spec: ChannelSpec, n_draws: int = 10_000,
                          seed: int = 0):
    """(E[lambda0], E[lambda0 ||v0||_1^2]) for an ensemble, or the exact
    values for a deterministic LOS spec."""
    def stats(h: ChannelMatrix):
        sd = spectral(h)
        l1sq = float(np.sum(np.abs(sd.v0)) ** 2)
        return np.array([sd.lambda0, sd.lambda0 * l1sq])

    e_l0, e_l0v = _expect_over_draws(spec, stats, n_draws, seed)
    return float(e_l0), float(e_l0v)


def bf_advantage_bounds(spec: ChannelSpec, n_draws: int = 10_000,
                        seed: int = 0) -> Interval:
    """Bracketing of the low-SNR beamforming advantage over equiprobable
    signaling: [8 E[lambda0 ||v0||_1^2] / (pi^2 Nt Nr), E[lambda0] / Nr]."""
    e_l0, e_l0v = spectral_expectations(spec, n_draws, seed)
    return Interval(lower=8.0 * e_l0v / (np.pi ** 2 * spec.nt * spec.nr),
                    upper=e_l0 / spec.nr)
