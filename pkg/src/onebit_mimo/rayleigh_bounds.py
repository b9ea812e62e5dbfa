"""Analytic bounds for IID Rayleigh fading with equiprobable signaling:
the conditional-entropy integral, the pairwise sign-coincidence probability
table, the output-entropy lower bound, and the ergodic bracketing."""

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from scipy.special import erfc

from .numerics import binary_entropy, q_function, quad2d_positive_quadrant


def conditional_entropy(snr: float, nr: int, nodes: int = 400) -> float:
    """E[H(y|x)] = 2 Nr E_xi[ Hb(Q(-sqrt(SNR) xi)) ] in bits.

    The integrand is a near-Gaussian bump of width ~1/sqrt(1+SNR), which
    fixed-order Gauss-Hermite stops resolving beyond moderate SNR, so the
    quadrature is Gauss-Legendre on an interval scaled to that width.
    """
    if snr < 0:
        raise ValueError("snr must be >= 0")
    if snr == 0:
        return 2.0 * nr
    root = np.sqrt(snr)
    sigma = 1.0 / np.sqrt(1.0 + snr)
    x, w = np.polynomial.legendre.leggauss(nodes)
    half = 9.0 * sigma
    xi = half * x
    vals = binary_entropy(q_function(-root * xi)) * np.exp(-xi ** 2 / 2.0)
    val = half * np.dot(w, vals) / np.sqrt(2.0 * np.pi)
    return 2.0 * nr * float(val)


def p_cap_integrand(i: int, j: int, nt: int):
    """Eq-56 integrand over the positive quadrant (generic i, j)."""
    den = np.sqrt(i * (nt - i) + j * (nt - j))

    def f(g, x):
        a = erfc(-(g * (nt - i - j) + x * (i - j)) / den)
        b = erfc((g * (i - j) - x * (nt - i - j)) / den)
        return (1.0 / (2.0 * np.pi)) * a * b * np.exp(-2.0 * (g ** 2 + x ** 2))

    return f


def p_cap_diagonal(i: int, nt: int) -> float:
    """Closed form (1/4 pi^2) arccos^2(2i/Nt - 1) for the diagonal."""
    return float(np.arccos(2.0 * i / nt - 1.0) ** 2 / (4.0 * np.pi ** 2))


def p_cap(i: int, j: int, nt: int, tol: float = 1e-8) -> float:
    """Probability that two inputs differing in i real and j imaginary signs
    both map to the all-positive quantized output on one receive antenna.
    """
    if not (0 <= i <= nt and 0 <= j <= nt):
        raise ValueError("need 0 <= i, j <= nt")
    boundary = {(0, 0): 0.25, (nt, nt): 0.0, (0, nt): 0.0, (nt, 0): 0.0}
    if (i, j) in boundary:
        return boundary[(i, j)]
    if i == j:
        return p_cap_diagonal(i, nt)
    return quad2d_positive_quadrant(p_cap_integrand(i, j, nt), tol=tol)


@dataclass(frozen=True)
class PcapTable:
    nt: int
    values: np.ndarray  # (nt+1) x (nt+1), symmetric


@lru_cache(maxsize=None)
def pcap_table(nt: int, tol: float = 1e-8) -> PcapTable:
    """SNR-independent table of p_cap(i, j, nt), cached per Nt."""
    v = np.empty((nt + 1, nt + 1))
    for i in range(nt + 1):
        for j in range(i, nt + 1):
            v[i, j] = v[j, i] = p_cap(i, j, nt, tol=tol)
    v.setflags(write=False)
    return PcapTable(nt=nt, values=v)


def entropy_lower_bound(nt: int, nr: int, tol: float = 1e-8) -> float:
    """Lower bound on E[H(y)] in bits (exactly 2 for nt=1)."""
    if nt < 1 or nr < 1:
        raise ValueError("antenna counts must be >= 1")
    table = pcap_table(nt, tol).values
    diag = sum(comb(nt, i) ** 2 * table[i, i] ** nr for i in range(nt + 1))
    off = sum(comb(nt, i) * comb(nt, j) * table[i, j] ** nr
              for i in range(nt + 1) for j in range(i + 1, nt + 1))
    return 2.0 * nt - 2.0 * nr - float(np.log2(diag + 2.0 * off))


@dataclass(frozen=True)
class ErgodicBound:
    snr: float
    lower_bits: float
    upper_bits: float
    jla_bits: float


def ergodic_bounds(snr: float, nt: int, nr: int, tol: float = 1e-8) -> ErgodicBound:
    """Bracketing of the ergodic spectral efficiency under equiprobable
    signaling. The upper bound is exact for SNR -> 0; the single-integral
    approximation (jla) is exact for Nr=1 or Nt -> infinity.
    """
    ce = conditional_entropy(snr, nr)
    upper = 2.0 * nr - ce
    # The output-entropy bound carries quadrature noise of order tol; keep
    # the bracket ordered.
    lower = min(max(0.0, entropy_lower_bound(nt, nr, tol) - ce), upper)
    jla = 2.0 * nr * (1.0 - ce / (2.0 * nr))
    return ErgodicBound(snr=snr, lower_bits=lower, upper_bits=upper,
                        jla_bits=jla)


def table1_rows(nts=(1, 2, 4, 8, 16, 32), nrs=(1, 2, 4, 8, 16, 32),
                tol: float = 1e-8):
    """(nr, nt, lower_bound_bits) rows of the output-entropy table."""
    return [(nr, nt, entropy_lower_bound(nt, nr, tol))
            for nr in nrs for nt in nts]
