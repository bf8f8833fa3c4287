__version__ = '0.1.0'

from .series import (PowerSeries, ClosedForm, ConformalKernel, PowerKernel, GeometricOnes,
                     LogKernel, Lacunary, Monomial, Constant, make_series, evaluate,
                     differentiate, partial_sum_transform)
from .measure import Atoms, Lebesgue, BetaLog, MeasureSum, moment, moments, tail_mass, total_mass
from .carleson import tail_statistic, moment_decay_fit, log_moment_decay_fit, blasco_statistic
from .cesaro import OperatorInstance, apply, apply_integral, derivative_at, representation_residual
from .spaces import (Hardy, BlochType, Morrey, MeanLip, Lambda11, integral_mean, hardy_norm,
                     bloch_norm, bloch_coefficient_statistic, morrey_norm, mean_lipschitz_norm,
                     lambda11_statistic, growth_envelope_check, estimate_norm)
from .estimates import circle_integral, disk_integral, prop31_suprema
from .settings import Settings, DEFAULT
