"""Parametric line-of-sight channel model for the 100-450 GHz band.

Molecular absorption from six fitted absorption lines and a continuum term,
combined with free-space path loss for link budgets.
"""

__version__ = "0.1.0"

from .absorption import (
    CONTINUUM_ONLY,
    D_BAND,
    FULL,
    THZ_WINDOW,
    AbsorptionCoefficient,
    LineSet,
    absorption_coefficient,
    absorption_loss_db,
    continuum_fit,
    kappa,
    line_center_hz,
    line_coefficient,
    transmittance,
)
from .atmosphere import Environment, mixing_ratio, resolve_mu, saturation_pressure
from .errors import *  # noqa: F401,F403
from .pathloss import (
    FrequencyGrid,
    LinkConfig,
    LossResult,
    LossSurface,
    band_average_loss_db,
    fspl_db,
    link_budget_db,
    loss_surface,
    sweep_distance,
    sweep_frequency,
    total_loss_db,
)
from .reference import ErrorReport, ReferenceCurve, compare, load_reference, model_curve
