"""Quartet search for transmit beamforming: the Nt-candidate subset aligned
with the top right singular vector, power- and MI-optimal selection, and the
minimum-Eb/N0 bracketing bounds."""

from dataclasses import dataclass

import numpy as np

from .capacity import QuartetDistribution, mutual_information
from .channel import ChannelMatrix, ChannelSpec, eta_parameter, spectral
from .lowsnr import Interval, spectral_expectations
from .numerics import LOG2E
from .quantized_dmc import (MAX_JOINT_BITS, EnumerationBudgetError, Quartet,
                            canonical_quartet, enumerate_quartets, quantize)


@dataclass(frozen=True)
class BeamformingResult:
    quartet: Quartet
    objective: float  # ||Hx||^2 in power mode, bits in MI mode
    candidate_count: int


def candidate_quartets(h: ChannelMatrix, epsilon: float = 1e-9) -> list[Quartet]:
    """The Nt quartets sgn(e^{j phi_m} v0) with phi_m just past each entry's
    switching angle. Contains the power-optimal quartet when H is rank-1.
    """
    if epsilon == 0:
        raise ValueError("epsilon must be nonzero")
    v0 = spectral(h).v0
    # Entry m of sgn(e^{j phi} v0) flips whenever phi + angle(v0_m) crosses a
    # quadrant boundary, so the quartet changes at phi = -angle(v0_m) mod pi/2.
    # One phi just past each switching angle covers every reachable quartet.
    switch = np.mod(-np.angle(v0), np.pi / 2)
    switch = np.sort(switch)
    # Eq-angle ties would collapse candidates; nudge later ones apart.
    for m in range(1, h.nt):
        if switch[m] - switch[m - 1] < epsilon:
            switch[m] = switch[m - 1] + 2.0 * epsilon
    quartets = []
    indices = set()
    for m in range(h.nt):
        x = quantize(np.exp(1j * (switch[m] + epsilon)) * v0)
        q = canonical_quartet(x)
        if q.index not in indices:
            indices.add(q.index)
            quartets.append(q)
    # Generic v0 yields exactly Nt candidates; degenerate channels (entries
    # switching at a common angle, e.g. eta = 1 ULAs) reach fewer quartets.
    return quartets


def _received_power(h: ChannelMatrix, q: Quartet) -> float:
    hx = h.entries @ q.representative.to_complex()
    return float(np.sum(np.abs(hx) ** 2))


def _search_space(h: ChannelMatrix, mode: str) -> list[Quartet]:
    if mode == "subset":
        return candidate_quartets(h)
    if mode == "exhaustive":
        if 2 * h.nt > MAX_JOINT_BITS:
            raise EnumerationBudgetError(
                f"exhaustive search over 4^{h.nt - 1} quartets exceeds the budget")
        return enumerate_quartets(h.nt)
    raise ValueError(f"unknown search mode {mode!r}")


def best_power_quartet(h: ChannelMatrix, mode: str = "subset") -> BeamformingResult:
    """Quartet maximizing the received power ||Hx||^2."""
    quartets = _search_space(h, mode)
    best = None
    for q in quartets:
        obj = _received_power(h, q)
        if best is None or obj > best.objective:
            best = BeamformingResult(q, obj, len(quartets))
    return best


def best_mi_quartet(h: ChannelMatrix, snr: float,
                    mode: str = "subset") -> BeamformingResult:
    """Quartet maximizing the single-quartet mutual information.

    Ties break toward the lowest canonical quartet index.
    """
    quartets = sorted(_search_space(h, mode), key=lambda q: q.index)
    best = None
    for q in quartets:
        p = QuartetDistribution.point_mass(h.nt, q.index)
        obj = mutual_information(h, snr, p).mi_bits
        if best is None or obj > best.objective + 1e-12:
            best = BeamformingResult(q, obj, len(quartets))
    return best


def beamforming_ebn0_bounds(spec: ChannelSpec, n_draws: int = 10_000,
                            seed: int = 0, asymptotic: bool = False) -> Interval:
    """Bracketing of the beamforming minimum Eb/N0 (linear):

        pi/(2 E[lambda0] log2 e) <= ebn0_min
                                 <= pi^3 Nt/(16 E[lambda0 ||v0||_1^2] log2 e)

    Specializations: planar LOS uses lambda0 = Nt*Nr and ||v0||_1^2 = Nt;
    spherical ULA uses lambda0 ~ Nmax/eta; IID Rayleigh with asymptotic=True
    uses E[lambda0] ~ (sqrt(Nt)+sqrt(Nr))^2 with lambda0 and v0 independent.
    """
    nt, nr = spec.nt, spec.nr
    if spec.model == "los_planar":
        e_l0, e_l0v = float(nt * nr), float(nt * nr) * nt
    elif spec.model == "los_spherical":
        l0 = max(nt, nr) / eta_parameter(spec.geometry)
        e_l0, e_l0v = l0, l0 * nt
    elif asymptotic:
        e_l0 = (np.sqrt(nt) + np.sqrt(nr)) ** 2
        e_l0v = e_l0 * _mean_l1sq_unit_sphere(nt, n_draws, seed)
    else:
        e_l0, e_l0v = spectral_expectations(spec, n_draws, seed)
    return Interval(lower=np.pi / (2.0 * e_l0 * LOG2E),
                    upper=np.pi ** 3 * nt / (16.0 * e_l0v * LOG2E))


def _mean_l1sq_unit_sphere(nt: int, n_draws: int, seed: int) -> float:
    """E[||v||_1^2] for v uniform on the complex Nt-sphere (Monte Carlo)."""
    rng = np.random.Generator(np.random.Philox(seed))
    from .channel import complex_normal
    z = complex_normal((n_draws, nt), rng)
    a = np.abs(z)
    l1 = a.sum(axis=1)
    l2 = np.sqrt((a ** 2).sum(axis=1))
    return float(np.mean((l1 / l2) ** 2))


def ergodic_beamforming_ebn0(spec: ChannelSpec, mode: str = "subset",
                             n_draws: int = 200, seed: int = 0) -> float:
    """Ergodic minimum Eb/N0 (linear) under per-draw power-optimal quartets.

    pi Nt / (E[max_x ||Hx||^2] log2 e), the expectation by Monte Carlo.
    """
    import dataclasses
    spec = dataclasses.replace(spec, seed=seed)
    draws = range(n_draws) if spec.is_ergodic else [0]
    powers = []
    for d in draws:
        h = spec.sample(draw=d)
        powers.append(best_power_quartet(h, mode).objective)
    return np.pi * spec.nt / (float(np.mean(powers)) * LOG2E)
