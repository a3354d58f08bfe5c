"""Quasi-stationary distributions of the power-law logistic birth-death process.

The QSD is computed by iterating the restart map in log space; its cumulants
are compared with large-N asymptotic approximations and with rival
approximations from the literature.
"""

from .asymptotics import ApproxCumulants, CoeffSet, approx_cumulants, coefficients, h_values
from .cumulants import CumulantSet, cumulants_of, ode_rhs
from .errors import NoConvergence, ParameterError, QsdLabError
from .model import BartlettParams, ModelParams, from_bartlett, rates, to_bartlett
from .qsd import ProbVector, QsdResult, qsd_oracle_small, solve_qsd
from .rival import MethodTag, method_cumulants

__version__ = "0.1.0"
