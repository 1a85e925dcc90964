"""Modulo-hysteresis sampling: encoders and OMP-based reconstruction."""
from .encoders import (EncodedTrace, EncoderKind, HysteresisParams, RunawayFoldError, TimeGrid,
                       build_fold_signal, encode_generalized, encode_ideal, encode_modified,
                       ideal_modulo, sample_trace, transient, verify_return, verify_separation)
from .pipeline import (DEFAULT_CONFIG, ReconstructionReport, end_to_end_trial,
                       experiment_params, mse, reconstruct)
from .signal_model import (AdmissibilityReport, BandlimitedSignal, check_admissibility,
                           estimate_d2_bound, evaluate, generate_random_pw, sinc_interpolate)
from .sparse import SolverConfig, SparseSolveResult, least_squares_restricted, omp, saomp
from .spectral import (BandLayout, InsufficientOversampling, anti_difference, band_layout,
                       build_rhs, build_vandermonde, dft, forward_difference)

__version__ = "0.1.0"
