"""QPSK vectors, quartet equivalence classes, the sign quantizer, and the
exact transition probabilities of the quantized channel."""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix
from .numerics import log_q_function

# Exact joint input/output enumeration is priced at 2*(Nt+Nr) packed bits.
MAX_JOINT_BITS = 26

zero_crossing_count = 0  # diagnostic: exact zeros hit by quantize()


class EnumerationBudgetError(RuntimeError):
    pass


def check_budget(nt: int, nr: int, budget_bits: int = MAX_JOINT_BITS):
    bits = 2 * (nt + nr)
    if bits > budget_bits:
        raise EnumerationBudgetError(
            f"exact enumeration needs {bits} packed bits for Nt={nt}, Nr={nr}; "
            f"budget is {budget_bits}")


def _mask(n: int) -> int:
    # bits 0, 2, 4, ... (real-sign bits) over n entries
    return sum(1 << (2 * m) for m in range(n))


@dataclass(frozen=True)
class QpskVector:
    """Length-n vector over {+-1 +-j}, packed two bits per entry.

    Entry m occupies bit 2m (sign of the real part) and bit 2m+1 (sign of
    the imaginary part); a 0 bit encodes +1.
    """
    packed: int
    n: int

    def _bits(self) -> np.ndarray:
        # Shift in Python ints: packed exceeds 64 bits once n > 32.
        return np.array([(self.packed >> k) & 1 for k in range(2 * self.n)])

    def to_complex(self) -> np.ndarray:
        signs = 1.0 - 2.0 * self._bits()
        return signs[0::2] + 1j * signs[1::2]

    def rotate_j(self) -> "QpskVector":
        """Multiply every entry by j (an O(1) bit permutation)."""
        re_mask = _mask(self.n)
        re_bits = self.packed & re_mask
        im_bits = (self.packed >> 1) & re_mask
        return QpskVector((im_bits ^ re_mask) | (re_bits << 1), self.n)

    def __str__(self):
        bits = self._bits()
        return " ".join("%s%s" % ("-" if bits[2 * m] else "+",
                                  "-" if bits[2 * m + 1] else "+")
                        for m in range(self.n))


@dataclass(frozen=True)
class Quartet:
    """90-degree-rotation equivalence class of four QPSK vectors.

    The canonical representative has first entry 1+j, so the quartet index
    is simply the remaining 2(n-1) packed bits.
    """
    representative: QpskVector

    @property
    def index(self) -> int:
        return self.representative.packed >> 2

    def members(self) -> list[QpskVector]:
        out = [self.representative]
        for _ in range(3):
            out.append(out[-1].rotate_j())
        return out


def canonical_quartet(x: QpskVector) -> Quartet:
    """Quartet of x, represented by the member whose first entry is 1+j."""
    v = x
    for _ in range(4):
        if v.packed & 3 == 0:
            return Quartet(v)
        v = v.rotate_j()
    raise AssertionError("rotation by j must reach a canonical member")


def quantize(v: np.ndarray) -> QpskVector:
    """Componentwise sign of real and imaginary parts.

    Exact zeros (measure-zero under the channel models) resolve to +1 and
    bump a diagnostic counter.
    """
    global zero_crossing_count
    v = np.asarray(v, dtype=complex)
    re, im = v.real, v.imag
    nz = int(np.count_nonzero(re == 0) + np.count_nonzero(im == 0))
    if nz:
        zero_crossing_count += nz
    packed = 0
    for m in range(v.size):
        if re[m] < 0:
            packed |= 1 << (2 * m)
        if im[m] < 0:
            packed |= 1 << (2 * m + 1)
    return QpskVector(packed, v.size)


def enumerate_quartets(n: int, budget_bits: int = MAX_JOINT_BITS) -> list[Quartet]:
    """All 4^(n-1) transmit quartets by canonical representative."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if 2 * n > budget_bits:
        raise EnumerationBudgetError(
            f"4^{n - 1} quartets exceed the {budget_bits}-bit enumeration budget")
    return [Quartet(QpskVector(k << 2, n)) for k in range(4 ** (n - 1))]


def quartet_representatives(n: int) -> np.ndarray:
    """n x 4^(n-1) complex matrix whose columns are the canonical reps."""
    k = 4 ** (n - 1)
    cols = np.empty((n, k), dtype=complex)
    for idx in range(k):
        cols[:, idx] = QpskVector(idx << 2, n).to_complex()
    return cols


def sign_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Real/imag sign patterns (+-1) of the canonical reps, each n x 4^(n-1)."""
    x = quartet_representatives(n)
    return np.sign(x.real), np.sign(x.imag)


def log_transition_prob(h: ChannelMatrix, snr: float, x: QpskVector,
                        y: QpskVector) -> float:
    """log of the product-of-Q transition probability p(y|x)."""
    if snr < 0:
        raise ValueError("snr must be >= 0")
    if x.n != h.nt or y.n != h.nr:
        raise ValueError("dimension mismatch")
    s = np.sqrt(snr / h.nt)
    hx = h.entries @ x.to_complex()
    yv = y.to_complex()
    args = np.concatenate([-yv.real * s * hx.real, -yv.imag * s * hx.imag])
    return float(np.sum(log_q_function(args)))


def transition_prob(h: ChannelMatrix, snr: float, x: QpskVector,
                    y: QpskVector) -> float:
    return float(np.exp(log_transition_prob(h, snr, x, y)))


def transition_row(h: ChannelMatrix, snr: float, x: QpskVector) -> dict:
    """Map from every receive vector y to p(y|x); sums to 1."""
    check_budget(h.nt, h.nr)
    return {QpskVector(p, h.nr): transition_prob(h, snr, x, QpskVector(p, h.nr))
            for p in range(4 ** h.nr)}


def receive_set(h: ChannelMatrix, budget_bits: int = MAX_JOINT_BITS) -> set:
    """{sgn(Hx)} over all 4^Nt inputs, for a generic (no-zero-crossing) H."""
    if 2 * (h.nt + h.nr) > budget_bits:
        raise EnumerationBudgetError(
            f"receive_set needs {2 * (h.nt + h.nr)} packed bits; budget is {budget_bits}")
    out = set()
    for p in range(4 ** h.nt):
        x = QpskVector(p, h.nt)
        hx = h.entries @ x.to_complex()
        if np.any(hx.real == 0) or np.any(hx.imag == 0):
            raise ValueError(f"degenerate channel: h_n . x = 0 for x={x}")
        out.add(quantize(hx))
    return out
