"""Exact stability computations for decorated sheaves and torus-level GIT."""

__version__ = "0.1.0"

from .ratcore import RatPolynomial, Ordering, DimensionError, compare_ratios, lex_compare
from .rep import OneParamSubgroup, WeightedFlag, TensorPoint, enumerate_weights, gamma_vector, mu_kappa, weighted_flag_of_ops
from .kempf import instability_ops, destabilizing_certificate, torus_semistable, SemistableError
from .fans import chamber_fan, test_set, product_threshold, product_instability_probe, PreconditionError
from .decor import (
    SheafNumerics, FiltrationNumerics, DecoratedConfig, ConfigClass, WallReport,
    m_and_l, mu_decoration, character_line_degree, delta_semistable, asymptotically_semistable,
    candidate_walls, chamber_report, delta_bounds, ParameterError,
)
