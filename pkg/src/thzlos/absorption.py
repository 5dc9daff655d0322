"""Molecular absorption from six fitted lines plus a continuum term.

Each line has a Lorentz-like shape in wavenumber,

    y_i(f, mu) = N_i(mu) / (W_i(mu) + (f / (100 c) - p_i)**2),

where the strength N_i and squared width W_i are low-order polynomials in
the water-vapor mixing ratio ``mu``. Line 1 is the 119 GHz oxygen line; the
others are water lines and vanish in dry air. A continuum term ``g`` absorbs
the wing mismatch of the Lorentz shape and out-of-band lines, and is part of
every evaluation, whatever subset of lines is active.

Frequencies are in Hz, coefficients in 1/m and distances in m.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .atmosphere import check_mixing_ratio
from .errors import (
    FrequencyOutOfValidityRange,
    InvalidFrequency,
    ModelError,
    NegativeDistance,
    ValidityRangeWarning,
)

ArrayLike = Union[float, Iterable[float], np.ndarray]

SPEED_OF_LIGHT = 299792458.0  # m/s

#: Line centers in wavenumber [1/cm], lines 1..6.
LINE_CENTERS_CM = (3.96, 6.11, 10.84, 12.68, 14.65, 14.94)

FIT_A = 0.915e-112
FIT_B = 9.42
#: Mixing ratio at the fit's design point (25 degC, 50 % RH).
FIT_MU_REF = 0.0157
FIT_OFFSET = 2e-4

VALIDITY_RANGE_HZ = (100e9, 450e9)

LINE_IDS = (1, 2, 3, 4, 5, 6)


def line_center_hz(index: int) -> float:
    """Center frequency of line `index` in Hz."""
    return 100.0 * SPEED_OF_LIGHT * LINE_CENTERS_CM[_check_index(index) - 1]


def _strength_width(index, mu):
    # (numerator, denominator-offset) polynomials for each line
    if index == 1:
        dry = 1.0 - mu
        return (
            5.159e-5 * dry * (-6.65e-5 * dry + 0.0159),
            (-2.09e-4 * dry + 0.05) ** 2,
        )
    if index == 2:
        return 0.1925 * mu * (0.1350 * mu + 0.0318), (0.4241 * mu + 0.0998) ** 2
    if index == 3:
        return 0.2251 * mu * (0.1314 * mu + 0.0297), (0.4127 * mu + 0.0932) ** 2
    if index == 4:
        return 2.053 * mu * (0.1717 * mu + 0.0306), (0.5394 * mu + 0.0961) ** 2
    if index == 5:
        return 0.177 * mu * (0.0832 * mu + 0.0213), (0.2615 * mu + 0.0668) ** 2
    return 2.146 * mu * (0.1206 * mu + 0.0277), (0.3789 * mu + 0.0871) ** 2


def _check_index(index) -> int:
    if isinstance(index, bool) or int(index) != index or index not in LINE_IDS:
        raise ModelError(f"line index must be one of 1..6, got {index!r}")
    return int(index)


def _as_frequency(f: ArrayLike) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if not np.all(np.isfinite(f)) or np.any(f <= 0):
        raise InvalidFrequency("frequencies must be finite and > 0 Hz")
    return f


def _out(x: np.ndarray, like: np.ndarray):
    return float(x) if like.ndim == 0 else x


@dataclass(frozen=True)
class LineSet:
    """Active absorption lines; the continuum term is always included.

    An empty set is legal and leaves only the continuum term.
    """

    active: frozenset = frozenset(LINE_IDS)

    def __post_init__(self):
        active = frozenset(_check_index(i) for i in self.active)
        object.__setattr__(self, "active", active)

    @property
    def include_fit(self) -> bool:
        return True

    @property
    def ids(self) -> tuple:
        return tuple(sorted(self.active))

    @classmethod
    def of(cls, *ids: int) -> "LineSet":
        return cls(frozenset(ids))

    @classmethod
    def parse(cls, text: str) -> "LineSet":
        """Parse a preset name or a comma separated list of line ids.

        Presets: ``full``/``all`` (1-6), ``d-band`` (1, 2), ``thz-window`` (3)
        and ``none`` (continuum only).
        """
        key = text.strip().lower()
        if key in PRESETS:
            return PRESETS[key]
        try:
            ids = [int(tok) for tok in key.split(",") if tok.strip()]
        except ValueError:
            raise ModelError(f"unrecognised line set {text!r}") from None
        if not ids:
            raise ModelError(f"unrecognised line set {text!r}")
        return cls(frozenset(ids))

    def label(self) -> str:
        for name, preset in PRESETS.items():
            if preset == self and name != "all":
                return name
        return ",".join(str(i) for i in self.ids)


FULL = LineSet()
D_BAND = LineSet.of(1, 2)
THZ_WINDOW = LineSet.of(3)
CONTINUUM_ONLY = LineSet(frozenset())

PRESETS = {
    "full": FULL,
    "all": FULL,
    "d-band": D_BAND,
    "thz-window": THZ_WINDOW,
    "none": CONTINUUM_ONLY,
}


@dataclass(frozen=True)
class AbsorptionCoefficient:
    """Absorption coefficient `kappa` [1/m] at `frequency` [Hz]."""

    kappa: Union[float, np.ndarray]
    frequency: Union[float, np.ndarray]
    mu: float
    lines: LineSet = FULL


def line_coefficient(index: int, f: ArrayLike, mu: float):
    """Absorption coefficient of a single line [1/m].

    Args:
        index: line id, 1 to 6.
        f: frequency in Hz, scalar or array.
        mu: water-vapor volume mixing ratio.
    """
    index = _check_index(index)
    f = _as_frequency(f)
    mu = check_mixing_ratio(mu)
    strength, width = _strength_width(index, mu)
    detuning = f / (100.0 * SPEED_OF_LIGHT) - LINE_CENTERS_CM[index - 1]
    return _out(strength / (width + detuning * detuning), f)


def continuum_fit(f: ArrayLike, mu: float):
    """Continuum correction term [1/m]; linear in `mu`."""
    f = _as_frequency(f)
    mu = check_mixing_ratio(mu)
    # a * f**b in log space: a ~ 1e-112 against f**b ~ 1e110
    power = np.exp(math.log(FIT_A) + FIT_B * np.log(f))
    return _out(mu / FIT_MU_REF * (FIT_OFFSET + power), f)


def check_validity_range(f: ArrayLike, strict: bool = False) -> None:
    """Warn, or raise when `strict`, if any frequency is outside 100-450 GHz."""
    f = np.asarray(f, dtype=float)
    lo, hi = VALIDITY_RANGE_HZ
    outside = (f < lo) | (f > hi)
    if np.any(outside):
        worst = f[outside].flat[0]
        msg = f"frequency {worst:.6g} Hz outside the model range [{lo:.0f}, {hi:.0f}] Hz"
        if strict:
            raise FrequencyOutOfValidityRange(msg)
        warnings.warn(msg, ValidityRangeWarning, stacklevel=3)


def kappa(f: ArrayLike, mu: float, lines: LineSet = FULL, strict: bool = False):
    """Total absorption coefficient [1/m] as a plain float or array."""
    f = _as_frequency(f)
    mu = check_mixing_ratio(mu)
    check_validity_range(f, strict)
    total = continuum_fit(f, mu)
    for i in lines.ids:
        total = total + line_coefficient(i, f, mu)
    return _out(np.asarray(total), f)


def absorption_coefficient(
    f: ArrayLike, mu: float, lines: LineSet = FULL, strict: bool = False
) -> AbsorptionCoefficient:
    """Sum of the active lines and the continuum term at `f`.

    Raises:
        FrequencyOutOfValidityRange: `strict` and `f` outside 100-450 GHz.
            Otherwise a :class:`ValidityRangeWarning` is issued.
    """
    k = kappa(f, mu, lines, strict)
    freq = _out(np.asarray(f, dtype=float), np.asarray(f))
    return AbsorptionCoefficient(kappa=k, frequency=freq, mu=float(mu), lines=lines)


def _check_distance(d):
    d = np.asarray(d, dtype=float)
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise NegativeDistance("distance must be finite and >= 0 m")
    return d


def transmittance(f: ArrayLike, mu: float, d: ArrayLike, lines: LineSet = FULL,
                  strict: bool = False):
    """Fraction of power surviving absorption over `d` meters."""
    d = _check_distance(d)
    k = np.asarray(kappa(f, mu, lines, strict))
    tau = np.exp(-k * d)
    return float(tau) if tau.ndim == 0 else tau


def absorption_loss_db(f: ArrayLike, mu: float, d: ArrayLike, lines: LineSet = FULL,
                       strict: bool = False):
    """Molecular absorption loss in dB, ``10 log10(e) * kappa * d``."""
    d = _check_distance(d)
    k = np.asarray(kappa(f, mu, lines, strict))
    loss = 10.0 * math.log10(math.e) * k * d
    return float(loss) if loss.ndim == 0 else loss
