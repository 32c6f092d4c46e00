from .phi import phi, phi_deriv, phi_expansion, truncation
from .solver import SaddleContext, derivative_tuples, saddle_estimate, saddle_series, solve_saddle
from .cauchy import CauchyResult, cauchy_count, default_quad_points
from .verify import (
    ArcReport,
    ExpansionReport,
    InversionRow,
    PeriodicityReport,
    check_periodicity,
    log_modulus_ratio,
    verify_arc_bound,
    verify_phi_expansion,
    verify_saddle_inversion,
)

__all__ = [
    'phi',
    'phi_deriv',
    'phi_expansion',
    'truncation',
    'SaddleContext',
    'derivative_tuples',
    'saddle_estimate',
    'saddle_series',
    'solve_saddle',
    'CauchyResult',
    'cauchy_count',
    'default_quad_points',
    'ArcReport',
    'ExpansionReport',
    'InversionRow',
    'PeriodicityReport',
    'check_periodicity',
    'log_modulus_ratio',
    'verify_arc_bound',
    'verify_phi_expansion',
    'verify_saddle_inversion',
]
