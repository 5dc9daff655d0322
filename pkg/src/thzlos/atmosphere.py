"""Water-vapor volume mixing ratio from ambient conditions.

The Buck (1981) saturation vapor pressure formula over water is used,
with the enhancement factor for moist air.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import EnvironmentOutOfRange, InvalidMixingRatio

STANDARD_PRESSURE_HPA = 1013.25

#: Temperatures outside this window [degC] are rejected.
TEMPERATURE_WINDOW_C = (-40.0, 60.0)

#: Absorption operations refuse mixing ratios above this.
MU_CEILING = 0.2


@dataclass(frozen=True)
class Environment:
    """Ambient conditions at the link.

    Args:
        temperature: air temperature in degrees Celsius.
        relative_humidity: relative humidity in percent, 0 to 100.
        pressure: total air pressure in hPa.
    """

    temperature: float = 25.0
    relative_humidity: float = 50.0
    pressure: float = STANDARD_PRESSURE_HPA

    def __post_init__(self):
        for name in ("temperature", "relative_humidity", "pressure"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise EnvironmentOutOfRange(f"{name} must be finite, got {value!r}")
        if self.pressure <= 0:
            raise EnvironmentOutOfRange(f"pressure must be > 0 hPa, got {self.pressure}")
        if not 0.0 <= self.relative_humidity <= 100.0:
            raise EnvironmentOutOfRange(
                f"relative humidity must be within [0, 100] %, got {self.relative_humidity}"
            )
        lo, hi = TEMPERATURE_WINDOW_C
        if not lo <= self.temperature <= hi:
            raise EnvironmentOutOfRange(
                f"temperature must be within [{lo}, {hi}] degC, got {self.temperature}"
            )


def saturation_pressure(env: Environment) -> float:
    """Saturation vapor pressure of water in moist air [hPa]."""
    T, p = env.temperature, env.pressure
    return 6.1121 * (1.0007 + 3.46e-6 * p) * math.exp(17.502 * T / (240.97 + T))


def mixing_ratio(env: Environment) -> float:
    """Volume mixing ratio of water vapor (dimensionless).

    Examples:
        >>> round(mixing_ratio(Environment(25.0, 50.0)), 4)
        0.0157
    """
    if env.relative_humidity == 0:
        return 0.0
    return env.relative_humidity / 100.0 * saturation_pressure(env) / env.pressure


def check_mixing_ratio(mu: float) -> float:
    mu = float(mu)
    if not math.isfinite(mu) or mu < 0 or mu > MU_CEILING:
        raise InvalidMixingRatio(f"mixing ratio must be within [0, {MU_CEILING}], got {mu!r}")
    return mu


def resolve_mu(env: Optional[Environment] = None, mu: Optional[float] = None) -> float:
    """Return the mixing ratio from exactly one of `env` or `mu`.

    Neither given means the default :class:`Environment` (25 degC, 50 % RH,
    1013.25 hPa). Giving both is an error rather than a silent override.
    """
    if env is not None and mu is not None:
        raise InvalidMixingRatio("give either an Environment or a mixing ratio, not both")
    if mu is not None:
        return check_mixing_ratio(mu)
    return check_mixing_ratio(mixing_ratio(env if env is not None else Environment()))
