"""Exact mutual information, Blahut-Arimoto capacity over quartet
probabilities, the high-SNR limit, and Monte Carlo ergodic wrappers."""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix, ChannelSpec
from .numerics import binary_entropy, log_q_function, q_function
from .quantized_dmc import (MAX_JOINT_BITS, check_budget, receive_set,
                            sign_matrices)


@dataclass(frozen=True)
class QuartetDistribution:
    """Probability vector over the 4^(Nt-1) transmit quartets."""
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", p)
        if np.any(p < 0):
            raise ValueError("quartet probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"quartet probabilities sum to {p.sum()}, not 1")
        p.setflags(write=False)

    @classmethod
    def equiprobable(cls, nt: int) -> "QuartetDistribution":
        k = 4 ** (nt - 1)
        return cls(np.full(k, 1.0 / k))

    @classmethod
    def point_mass(cls, nt: int, index: int) -> "QuartetDistribution":
        p = np.zeros(4 ** (nt - 1))
        p[index] = 1.0
        return cls(p)

    def sigma_x(self, nt: int) -> np.ndarray:
        """Input covariance sum_k p_k x_k x_k* (rotation-invariant)."""
        from .quantized_dmc import quartet_representatives
        x = quartet_representatives(nt)
        return (x * self.probs) @ x.conj().T


@dataclass(frozen=True)
class MiResult:
    mi_bits: float
    hy_bits: float
    hyx_bits: float


@dataclass(frozen=True)
class BaResult:
    capacity_bits: float
    p: QuartetDistribution
    iterations: int
    certified: bool


@dataclass(frozen=True)
class ErgodicEstimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int


def quartet_channel(h: ChannelMatrix, snr: float,
                    budget_bits: int = MAX_JOINT_BITS):
    """Quartet-level DMC of the quantized channel.

    Returns (w, h_cond): w[k, l] is the probability that the receive vector
    falls in received quartet l given that transmit quartet k is active
    (rows sum to 1); h_cond[k] is the conditional output entropy H(y | x in
    quartet k) in bits, a sum of binary entropies of Q-values.
    """
    if snr < 0:
        raise ValueError("snr must be >= 0")
    check_budget(h.nt, h.nr, budget_bits)
    x_re, x_im = sign_matrices(h.nt)           # Nt x K
    z = h.entries @ (x_re + 1j * x_im)         # Nr x K
    s = np.sqrt(snr / h.nt)
    y_re, y_im = sign_matrices(h.nr)           # Nr x L
    k_n, l_n = x_re.shape[1], y_re.shape[1]

    # Rotations of h_n x by j^i permute (Re, Im) with signs.
    rotations = [(z.real, z.imag), (-z.imag, z.real),
                 (-z.real, -z.imag), (z.imag, -z.real)]
    w = np.zeros((k_n, l_n))
    for a_re, a_im in rotations:
        logp = np.zeros((l_n, k_n))
        for n in range(h.nr):
            lq_re = log_q_function(np.outer(-y_re[n], s * a_re[n]))  # L x K
            lq_im = log_q_function(np.outer(-y_im[n], s * a_im[n]))
            logp += lq_re + lq_im
        w += np.exp(logp).T
    h_cond = np.sum(binary_entropy(q_function(-s * z.real))
                    + binary_entropy(q_function(-s * z.imag)), axis=0)
    return w, h_cond


def mutual_information(h: ChannelMatrix, snr: float, p: QuartetDistribution,
                       budget_bits: int = MAX_JOINT_BITS) -> MiResult:
    """Exact I(x; y) in bits for a quartet distribution p.

    H(y) is accumulated over the 4^(Nr-1) received-quartet representatives
    (whose four members are equiprobable) and H(y|x) is the p-weighted sum
    of per-antenna binary entropies.
    """
    w, h_cond = quartet_channel(h, snr, budget_bits)
    p_out = p.probs @ w
    nz = p_out > 0
    hy = float(-np.sum(p_out[nz] * np.log2(p_out[nz])) + 2.0)
    hyx = float(np.dot(p.probs, h_cond))
    mi = hy - hyx
    if mi < 0 and mi > -1e-9:
        mi = 0.0
    return MiResult(mi_bits=mi, hy_bits=hy, hyx_bits=hyx)


def _support_scores(w, h_cond, p):
    """Per-quartet scores t_k with I(p) = sum_k p_k t_k and C <= max_k t_k."""
    p_out = p @ w
    logq = np.where(p_out > 0, np.log2(np.maximum(p_out, 1e-300)), 0.0)
    return -(w @ logq) + 2.0 - h_cond


def blahut_arimoto(h: ChannelMatrix, snr: float, tol: float = 1e-7,
                   max_iters: int = 10_000,
                   budget_bits: int = MAX_JOINT_BITS) -> BaResult:
    """Capacity over quartet probabilities by Blahut-Arimoto.

    Convergence is certified by the per-iteration gap between the lower
    bound I(p) and the upper bound max_k t_k; a run that hits max_iters
    returns the best iterate flagged uncertified.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    w, h_cond = quartet_channel(h, snr, budget_bits)
    k_n = w.shape[0]
    p = np.full(k_n, 1.0 / k_n)
    ln2 = np.log(2.0)
    prev_lb = -np.inf
    certified = False
    iterations = 0
    for iterations in range(1, max_iters + 1):
        t = _support_scores(w, h_cond, p)
        lb = float(np.dot(p, t))
        ub = float(np.max(t))
        if lb < prev_lb - 1e-9:
            raise AssertionError("Blahut-Arimoto lower bound decreased")
        prev_lb = lb
        if ub - lb <= tol:
            certified = True
            break
        p = p * np.exp(ln2 * (t - ub))
        p /= p.sum()
    # presentation stability of golden outputs
    p = np.where(p < 1e-15, 0.0, p)
    p /= p.sum()
    dist = QuartetDistribution(p)
    cap = mutual_information(h, snr, dist, budget_bits).mi_bits
    return BaResult(capacity_bits=cap, p=dist, iterations=iterations,
                    certified=certified)


def c_infinity(h: ChannelMatrix, budget_bits: int = MAX_JOINT_BITS) -> float:
    """High-SNR limiting capacity log2 |{sgn(Hx)}| in bits."""
    return float(np.log2(len(receive_set(h, budget_bits))))


def ergodic_mi(spec: ChannelSpec, snr: float, strategy="equiprobable",
               n: int = 1000, seed: int = 0,
               budget_bits: int = MAX_JOINT_BITS) -> ErgodicEstimate:
    """Sample mean/stderr of I(SNR, H) over n channel draws.

    strategy: "equiprobable", "beamforming" (subset-search MI-best quartet
    re-selected per draw), or a fixed QuartetDistribution.
    """
    if n < 2:
        raise ValueError("need at least 2 samples")
    from .beamforming import best_mi_quartet
    spec = dataclasses.replace(spec, seed=seed)
    vals = np.empty(n)
    for i in range(n):
        h = spec.sample(draw=i) if spec.is_ergodic else spec.sample()
        if isinstance(strategy, QuartetDistribution):
            p = strategy
        elif strategy == "equiprobable":
            p = QuartetDistribution.equiprobable(h.nt)
        elif strategy == "beamforming":
            res = best_mi_quartet(h, snr, mode="subset")
            p = QuartetDistribution.point_mass(h.nt, res.quartet.index)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        vals[i] = mutual_information(h, snr, p, budget_bits).mi_bits
    stderr = float(vals.std(ddof=1) / np.sqrt(n))
    return ErgodicEstimate(mean=float(vals.mean()), stderr=stderr,
                           n_samples=n, seed=seed)
