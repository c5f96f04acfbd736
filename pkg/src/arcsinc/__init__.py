"""Every real branch of the inverse cardinal sine, by series, integral and root finding."""

from .applications import (FwhmEntry, IdentityReport, anger_integral_identity, fwhm,
                           weber_series_identity)
from .branches import (BranchDomain, DomainError, branch_domain, half_period_l,
                       lemma1_slack)
from .inverse import (EvalResult, Method, NumericsPolicy, evaluate, integral_rep, oracle,
                      series_anger, series_weber)
from .quadrature import QuadratureConfig
from .roots import bessel_3_2_zero, extremum_value
from .special import (SpecialValue, anger, incomplete_anger, incomplete_weber, sinc,
                      weber)

__version__ = "0.1.0"
