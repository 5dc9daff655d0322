"""Free-space path loss combined with molecular absorption.

All losses are in dB and positive; antenna gains [dBi] reduce the total.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import absorption
from .absorption import FULL, SPEED_OF_LIGHT, LineSet
from .atmosphere import Environment, resolve_mu
from .errors import BandOutOfRange, InvalidGeometry, InvalidGrid, ModelError

DEFAULT_STEP_HZ = 100e6


@dataclass(frozen=True)
class LinkConfig:
    """Link distance [m] and antenna gains [dBi]."""

    distance: float
    gain_tx: float = 0.0
    gain_rx: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.distance) or self.distance <= 0:
            raise InvalidGeometry(f"link distance must be > 0 m, got {self.distance}")
        if not (math.isfinite(self.gain_tx) and math.isfinite(self.gain_rx)):
            raise InvalidGeometry("antenna gains must be finite")


@dataclass(frozen=True)
class FrequencyGrid:
    """Evaluation frequencies [Hz], either a closed range or explicit points.

    A range includes `stop` when it falls on the step lattice.
    """

    start: float = 100e9
    stop: float = 450e9
    step: float = DEFAULT_STEP_HZ
    explicit: Optional[tuple] = None

    def __post_init__(self):
        if self.explicit is not None:
            pts = np.asarray(self.explicit, dtype=float)
            if pts.ndim != 1 or pts.size == 0:
                raise InvalidGrid("explicit frequency grid must be a non-empty list")
            if np.any(np.diff(pts) <= 0):
                raise InvalidGrid("explicit frequencies must be strictly increasing")
            if np.any(pts <= 0) or not np.all(np.isfinite(pts)):
                raise InvalidGrid("frequencies must be finite and > 0 Hz")
            object.__setattr__(self, "explicit", tuple(float(x) for x in pts))
            return
        if not (self.start > 0 and self.start < self.stop):
            raise InvalidGrid(f"need 0 < start < stop, got {self.start}, {self.stop}")
        if not self.step > 0:
            raise InvalidGrid(f"step must be > 0, got {self.step}")

    @classmethod
    def from_points(cls, points: Sequence[float]) -> "FrequencyGrid":
        return cls(explicit=tuple(points))

    def points(self) -> np.ndarray:
        if self.explicit is not None:
            return np.array(self.explicit)
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)

    def __len__(self):
        return len(self.points())

    def describe(self) -> str:
        if self.explicit is not None:
            return "points:" + ";".join(repr(x) for x in self.explicit)
        return f"range:{self.start!r}:{self.stop!r}:{self.step!r}"


@dataclass(frozen=True)
class LossResult:
    """Loss budget at one frequency, with the inputs that produced it."""

    frequency: float
    fspl_db: float
    absorption_db: float
    total_db: float
    mu: float
    distance: float
    gain_tx: float = 0.0
    gain_rx: float = 0.0
    lines: LineSet = field(default=FULL)

    def as_dict(self) -> dict:
        return {
            "freq_hz": self.frequency,
            "distance_m": self.distance,
            "fspl_db": self.fspl_db,
            "absorption_db": self.absorption_db,
            "total_db": self.total_db,
        }


def fspl_db(d, f):
    """Free-space path loss ``20 log10(4 pi d f / c)`` [dB].

    Args:
        d: distance in m, > 0.
        f: frequency in Hz, > 0.
    """
    d = np.asarray(d, dtype=float)
    f = np.asarray(f, dtype=float)
    if np.any(~(d > 0)) or np.any(~(f > 0)):
        raise InvalidGeometry("FSPL needs distance > 0 m and frequency > 0 Hz")
    out = 20.0 * np.log10(4.0 * math.pi * d * f / SPEED_OF_LIGHT)
    return float(out) if out.ndim == 0 else out


def link_budget_db(f, d, mu: float, gain_tx=0.0, gain_rx=0.0, lines: LineSet = FULL,
                   strict: bool = False):
    """Vectorised ``(fspl_db, absorption_db, total_db)``; `f`, `d` and gains broadcast."""
    fs = fspl_db(d, f)
    ab = absorption.absorption_loss_db(f, mu, d, lines, strict)
    return fs, ab, fs + ab - gain_tx - gain_rx


def total_loss_db(
    link: LinkConfig,
    f: float,
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    *,
    mu: Optional[float] = None,
    strict: bool = False,
) -> LossResult:
    """Total link loss at a single frequency.

    Atmosphere comes from `env` or a direct mixing ratio `mu`, never both.
    """
    mu = resolve_mu(env, mu)
    fs, ab, tot = link_budget_db(float(f), link.distance, mu, link.gain_tx, link.gain_rx,
                                 lines, strict)
    return LossResult(float(f), fs, ab, tot, mu, link.distance,
                      link.gain_tx, link.gain_rx, lines)


def sweep_frequency(
    link: LinkConfig,
    grid: FrequencyGrid,
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    *,
    mu: Optional[float] = None,
    strict: bool = False,
) -> list:
    """One :class:`LossResult` per grid frequency, in grid order."""
    mu = resolve_mu(env, mu)
    f = grid.points()
    fs, ab, tot = link_budget_db(f, link.distance, mu, link.gain_tx, link.gain_rx, lines, strict)
    return [
        LossResult(float(f[k]), float(fs[k]), float(ab[k]), float(tot[k]), mu,
                   link.distance, link.gain_tx, link.gain_rx, lines)
        for k in range(f.size)
    ]


def _check_distances(distances) -> np.ndarray:
    d = np.asarray(distances, dtype=float)
    if d.ndim != 1 or d.size == 0:
        raise InvalidGrid("distance grid must be a non-empty list")
    if np.any(~(d > 0)) or not np.all(np.isfinite(d)):
        raise InvalidGeometry("distances must be finite and > 0 m")
    return d


def sweep_distance(
    f: float,
    distances: Sequence[float],
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    gain_tx: float = 0.0,
    gain_rx: float = 0.0,
    *,
    mu: Optional[float] = None,
    strict: bool = False,
) -> list:
    """One :class:`LossResult` per distance, in input order."""
    mu = resolve_mu(env, mu)
    d = _check_distances(distances)
    fs, ab, tot = link_budget_db(float(f), d, mu, gain_tx, gain_rx, lines, strict)
    return [
        LossResult(float(f), float(fs[k]), float(ab[k]), float(tot[k]), mu,
                   float(d[k]), gain_tx, gain_rx, lines)
        for k in range(d.size)
    ]


def band_points(center: float, bandwidth: float, n_points: Optional[int] = None) -> np.ndarray:
    """Uniform grid over ``[center - bandwidth/2, center + bandwidth/2]``.

    Without `n_points` the spacing is at most 100 MHz, with at least 3 points.
    """
    if not bandwidth > 0:
        raise InvalidGrid(f"bandwidth must be > 0 Hz, got {bandwidth}")
    if n_points is None:
        n_points = max(3, int(math.ceil(bandwidth / DEFAULT_STEP_HZ)) + 1)
    if n_points < 3:
        raise InvalidGrid(f"band average needs at least 3 points, got {n_points}")
    lo = center - bandwidth / 2.0
    if lo <= 0:
        raise InvalidGrid("band extends to non-positive frequency")
    return np.linspace(lo, center + bandwidth / 2.0, int(n_points))


def band_average_loss_db(
    center: float,
    bandwidth: float,
    n_points: Optional[int],
    link: LinkConfig,
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    *,
    mu: Optional[float] = None,
    domain: str = "linear",
    strict: bool = False,
) -> float:
    """Average total loss over a band [dB].

    With ``domain="linear"`` the received power fraction ``10**(-L/10)`` is
    averaged and converted back to dB; ``domain="db"`` averages the dB values
    directly.

    Raises:
        BandOutOfRange: `strict` and part of the band lies outside
            100-450 GHz. Otherwise a warning is issued.
    """
    if domain not in ("linear", "db"):
        raise ModelError(f"domain must be 'linear' or 'db', got {domain!r}")
    mu = resolve_mu(env, mu)
    f = band_points(center, bandwidth, n_points)
    lo, hi = absorption.VALIDITY_RANGE_HZ
    if strict and (f[0] < lo or f[-1] > hi):
        raise BandOutOfRange(
            f"band [{f[0]:.6g}, {f[-1]:.6g}] Hz leaves the model range [{lo:.0f}, {hi:.0f}] Hz"
        )
    _, _, tot = link_budget_db(f, link.distance, mu, link.gain_tx, link.gain_rx, lines, strict)
    if domain == "db":
        return float(np.mean(tot))
    # shift before exponentiating so very deep losses do not underflow
    ref = tot.min()
    mean_fraction = np.mean(10.0 ** (-(tot - ref) / 10.0))
    return float(ref - 10.0 * np.log10(mean_fraction))


@dataclass(frozen=True)
class LossSurface:
    """Total loss matrix, one row per distance and one column per frequency.

    `capped` records that values were clamped to `cap_db` for presentation.
    """

    frequencies: np.ndarray
    distances: np.ndarray
    total_db: np.ndarray
    cap_db: Optional[float] = None

    @property
    def capped(self) -> bool:
        return self.cap_db is not None and math.isfinite(self.cap_db)


def loss_surface(
    freq_grid: FrequencyGrid,
    distances: Sequence[float],
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    cap_db: Optional[float] = None,
    *,
    mu: Optional[float] = None,
    gain_tx: float = 0.0,
    gain_rx: float = 0.0,
    strict: bool = False,
) -> LossSurface:
    """Total loss over a distance x frequency grid.

    Rows follow `distances`, columns follow the frequency grid; each row is
    the frequency sweep at that distance. `cap_db` clamps the output only.
    """
    mu = resolve_mu(env, mu)
    f = freq_grid.points()
    d = _check_distances(distances)
    _, _, tot = link_budget_db(f[None, :], d[:, None], mu, gain_tx, gain_rx, lines, strict)
    if cap_db is not None:
        tot = np.minimum(tot, cap_db)
    return LossSurface(f, d, tot, cap_db)
