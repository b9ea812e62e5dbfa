"""Information-theoretic performance of single-user MIMO links with 1-bit
DACs and ADCs: exact mutual information and capacity, low-SNR metrics,
beamforming strategies, and ergodic Rayleigh bounds."""

__version__ = "0.1.0"

from .capacity import (BaResult, ErgodicEstimate, MiResult,
                       QuartetDistribution, blahut_arimoto, c_infinity,
                       ergodic_mi, mutual_information)
from .channel import (ChannelMatrix, ChannelSpec, LosGeometry, SpectralData,
                      channel_spec_from_json, eta_parameter, iid_rayleigh,
                      los_planar, los_spherical, spectral)
from .beamforming import (BeamformingResult, beamforming_ebn0_bounds,
                          best_mi_quartet, best_power_quartet,
                          candidate_quartets, ergodic_beamforming_ebn0)
from .lowsnr import (Interval, LowSnrMetrics, ebn0_min, equiprobable_ebn0_min,
                     fullres_ebn0_min, low_snr_curve, metrics, wideband_slope)
from .power_model import PowerBudget, adc_power, breakeven_bandwidth, \
    watts_from_dbm
from .quantized_dmc import (EnumerationBudgetError, QpskVector, Quartet,
                            enumerate_quartets, quantize, receive_set,
                            transition_prob)
from .rayleigh_bounds import (ErgodicBound, conditional_entropy,
                              entropy_lower_bound, ergodic_bounds, p_cap,
                              table1_rows)
