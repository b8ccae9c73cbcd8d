"""Interval reachability for control-affine systems via Chen-Fliess series."""
from .chenfliess import SampledInput, evaluate_series, iterated_integral, unit_iterated_integral
from .interval import Interval, interval_mul, interval_pow, scale_interval
from .mmreach import DivergenceError, EmbeddingTrajectory, decomposition, integrate_embedding
from .oracle import empirical_reach, sample_inputs, simulate
from .polylie import (
    Polynomial,
    PolySystem,
    estimate_growth,
    generate_coefficients,
    lie_derivative,
)
from .reachia import InputBox, ReachEnvelope, bound_coefficients, reach_envelope, tail_bound, word_reach
from .systems import SystemSpec, fixture, load_spec
from .words import EMPTY, FormalPowerSeries, Word, count_letter, enumerate_words, word_length

__version__ = "0.1.0"
