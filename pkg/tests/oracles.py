"""Independent reference implementations used by several test modules.

Everything here is deliberately brute-force: generic DMC double sums over
every transmit/receive vector, and finite differences for derivatives.
"""

import numpy as np

from onebit_mimo.capacity import QuartetDistribution
from onebit_mimo.quantized_dmc import QpskVector, transition_prob


def dmc_mutual_information(h, snr: float, p: QuartetDistribution) -> float:
    """I(x;y) in bits by the full 4^Nt x 4^Nr double sum."""
    nt, nr = h.nt, h.nr
    n_in, n_out = 4 ** nt, 4 ** nr
    px = np.empty(n_in)
    w = np.empty((n_in, n_out))
    for a in range(n_in):
        x = QpskVector(a, nt)
        from onebit_mimo.quantized_dmc import canonical_quartet
        px[a] = p.probs[canonical_quartet(x).index] / 4.0
        for b in range(n_out):
            w[a, b] = transition_prob(h, snr, x, QpskVector(b, nr))
    py = px @ w
    mi = 0.0
    for a in range(n_in):
        for b in range(n_out):
            if px[a] > 0 and w[a, b] > 0:
                mi += px[a] * w[a, b] * np.log2(w[a, b] / py[b])
    return mi


def fd_low_snr_derivatives(mi_of_snr, base: float = 1e-3):
    """(I'(0), I''(0)) by Richardson extrapolation toward snr = 0.

    Fits I(s)/s = c1 + c2 s + c3 s^2 exactly through three geometrically
    spaced points, so the leading truncation errors cancel.
    """
    s = np.array([base, base / 2.0, base / 4.0])
    ratios = np.array([mi_of_snr(v) / v for v in s])
    c = np.linalg.solve(np.vander(s, 3, increasing=True), ratios)
    return float(c[0]), 2.0 * float(c[1])
