"""Exact and Monte Carlo tools for Gelfand and Plancherel random partitions."""

__version__ = "0.1.0"

from .partition import InterlacingCoordinates, Partition, dim_exact, interlacing_of, log_dim, moment_p, partitions_of
from .diagrams import OMEGA, lskv_moment, lskv_profile, normalized, rescale, sup_distance
from .square_roots import f_factor, involution_count, square_root_count
from .characters import central_character, character, gelfand_expectation_sigma, measure_table
from .ik_algebra import SigmaElement, power_top_formula, top_kerov_part
from .sampling import ExperimentConfig, run_experiment, sample_shape
from .asymptotics import chebyshev_functional, clt_report, clt_targets, deviation_moment, finite_n_moments

__all__ = [
    "InterlacingCoordinates", "Partition", "dim_exact", "interlacing_of", "log_dim", "moment_p", "partitions_of",
    "OMEGA", "lskv_moment", "lskv_profile", "normalized", "rescale", "sup_distance",
    "f_factor", "involution_count", "square_root_count",
    "central_character", "character", "gelfand_expectation_sigma", "measure_table",
    "SigmaElement", "power_top_formula", "top_kerov_part",
    "ExperimentConfig", "run_experiment", "sample_shape",
    "chebyshev_functional", "clt_report", "clt_targets", "deviation_moment", "finite_n_moments",
]
