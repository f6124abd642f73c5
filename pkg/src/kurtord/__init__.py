"""Kurtosis and lower-order stochastic orders via quantile transport maps."""

from .distributions import (FamilySpec, LocationScale, PowerUnit, ReflectedCubeRoot,
                            SinhArsinh, StandardNormal, Support, Weibull, make_distribution,
                            mode, quantile_numeric)
from .functionals import TD, TMode, eta_f, gamma_d, gamma_mode, kappa_q, kappa_qf, same_transitivity_set
from .orders import (InflectionReport, OrderVerdict, Relation, divided_difference, equiv_3,
                     inflection_values, kconvex_check, leq_gs, leq_k, reasonable_thresholds,
                     strict_gss, transitivity_probe)
from .transport import Grid, TransportMap, compose_check

__version__ = "0.1.0"
