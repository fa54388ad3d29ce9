"""Numerical fractional calculus: differintegrals, Gamma kernel, transforms,
fractional relaxation solvers and fractional circuit elements."""

from .circuits import ElementKind, FracElement, FracTransferFunction, bode_data, impedance, step_response
from .differint import compare_rl_gl, gl_differint, gl_differint_fast, rl_derivative, rl_integral
from .errors import AccuracyError, DomainError, FracCalcError, ResolutionError, SingularStepError
from .fde import FDEProblem, fractional_sum, solve_frac_difference, solve_linear_fde
from .grid import Grid, Order, SampledSignal
from .special import gamma, gen_binomial, gl_weights, log_gamma, mittag_leffler
from .transforms import laplace_numeric, verify_laplace_differint_rule, z_transform_truncated

__version__ = "0.1.0"
