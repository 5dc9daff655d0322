"""Comparison of the model against externally computed loss curves.

Reference curves are CSV files with ``# key=value`` comment lines carrying
the conditions they were computed for, followed by a two-column table::

    # source=line-by-line
    # temperature_c=25
    # rh_percent=90
    # distance_m=1000
    freq_ghz,loss_db
    100,1.93
    ...

Recognised keys are ``source``, ``temperature_c``, ``pressure_hpa``,
``rh_percent``, ``mu``, ``distance_m`` and, optionally, ``quantity``
(``absorption``, the default, or ``total`` for FSPL plus absorption)
with ``gain_tx_db``/``gain_rx_db``. The frequency column is ``freq_hz``
or ``freq_ghz``; the loss column is ``loss_db``.
"""
from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import absorption
from .absorption import FULL, LineSet
from .atmosphere import STANDARD_PRESSURE_HPA, Environment, resolve_mu
from .errors import MissingMetadata, ModelError, ParseError, UnitError
from .pathloss import fspl_db

_FREQ_SCALE = {"freq_hz": 1.0, "freq_ghz": 1e9}
_NUMERIC_KEYS = ("temperature_c", "pressure_hpa", "rh_percent", "mu", "distance_m",
                 "gain_tx_db", "gain_rx_db")


@dataclass(frozen=True)
class ReferenceCurve:
    """Reference loss values `loss` [dB] at strictly increasing `frequency` [Hz]."""

    frequency: np.ndarray
    loss: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        f = np.asarray(self.frequency, dtype=float)
        loss = np.asarray(self.loss, dtype=float)
        if f.ndim != 1 or f.shape != loss.shape:
            raise ParseError("frequency and loss must be 1-D and of equal length")
        if f.size < 2:
            raise ParseError("a reference curve needs at least 2 points")
        if np.any(np.diff(f) <= 0):
            raise ParseError("reference frequencies must be strictly increasing")
        object.__setattr__(self, "frequency", f)
        object.__setattr__(self, "loss", loss)

    @property
    def source(self) -> str:
        return str(self.metadata.get("source", "unknown"))

    def shifted(self, offset_db: float) -> "ReferenceCurve":
        return ReferenceCurve(self.frequency, self.loss + offset_db, dict(self.metadata))


@dataclass(frozen=True)
class ErrorReport:
    """Model minus reference, per point and aggregated [dB]."""

    frequency: np.ndarray
    model_db: np.ndarray
    reference_db: np.ndarray
    errors: np.ndarray
    max_abs_error: float
    rms_error: float
    worst_frequency: float
    source: str = "unknown"

    def summary(self) -> dict:
        return {
            "source": self.source,
            "n_points": int(self.errors.size),
            "max_abs_error_db": self.max_abs_error,
            "rms_error_db": self.rms_error,
            "worst_frequency_hz": self.worst_frequency,
        }


def _parse_meta_value(key, raw):
    if key in _NUMERIC_KEYS:
        try:
            return float(raw)
        except ValueError:
            raise ParseError(f"metadata {key}={raw!r} is not a number") from None
    return raw


def parse_reference(text: str) -> ReferenceCurve:
    """Parse reference CSV content (see module docstring for the schema)."""
    if text.startswith("\ufeff"):
        text = text[1:]
    metadata = {}
    body = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if body:
                raise ParseError(f"line {lineno}: comment after the header")
            entry = stripped[1:].strip()
            if "=" in entry:
                key, _, value = entry.partition("=")
                key = key.strip().lower()
                metadata[key] = _parse_meta_value(key, value.strip())
            continue
        body.append((lineno, stripped))
    if not body:
        raise ParseError("missing header row")

    header_line, header = body[0]
    cols = [c.strip().lower() for c in next(csv.reader([header]))]
    if len(cols) != 2:
        raise ParseError(f"line {header_line}: expected 2 columns, got {len(cols)}")
    freq_col, loss_col = cols
    if freq_col not in _FREQ_SCALE:
        if freq_col.startswith("freq_"):
            raise UnitError(f"unsupported frequency unit in header {freq_col!r}")
        raise ParseError(f"line {header_line}: missing frequency header")
    if loss_col != "loss_db":
        if loss_col.startswith("loss_"):
            raise UnitError(f"unsupported loss unit in header {loss_col!r}")
        raise ParseError(f"line {header_line}: missing loss header")

    freqs, losses = [], []
    for lineno, raw in body[1:]:
        fields = [x.strip() for x in raw.split(",")]
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 2 fields, got {len(fields)}")
        try:
            fv, lv = float(fields[0]), float(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric value in {raw!r}") from None
        if not (math.isfinite(fv) and math.isfinite(lv)):
            raise ParseError(f"line {lineno}: non-finite value")
        freqs.append(fv * _FREQ_SCALE[freq_col])
        losses.append(lv)
    f = np.array(freqs)
    if f.size >= 2 and np.any(np.diff(f) <= 0):
        k = int(np.argmax(np.diff(f) <= 0)) + 1
        raise ParseError(f"frequency {f[k]!r} Hz is not above its predecessor")
    return ReferenceCurve(f, np.array(losses), metadata)


def load_reference(source: Union[str, os.PathLike, io.TextIOBase]) -> ReferenceCurve:
    """Read a reference curve from a path or an open text stream."""
    if hasattr(source, "read"):
        return parse_reference(source.read())
    with open(source, encoding="utf-8", newline="") as fh:
        return parse_reference(fh.read())


def format_reference(curve: ReferenceCurve) -> str:
    """Serialise `curve` in the reference CSV schema, frequencies in Hz."""
    lines = [f"# {k}={curve.metadata[k]!s}" for k in sorted(curve.metadata)]
    lines.append("freq_hz,loss_db")
    lines.extend(f"{f!r},{v!r}" for f, v in zip(curve.frequency.tolist(), curve.loss.tolist()))
    return "\n".join(lines) + "\n"


def curve_conditions(metadata: dict):
    """Return ``(mu, distance_m)`` implied by curve metadata."""
    if "distance_m" not in metadata:
        raise MissingMetadata("reference curve has no distance_m")
    distance = float(metadata["distance_m"])
    has_env = "rh_percent" in metadata or "temperature_c" in metadata
    if "mu" in metadata and has_env:
        raise ModelError("reference metadata gives both mu and an environment")
    if "mu" in metadata:
        return resolve_mu(mu=metadata["mu"]), distance
    if "rh_percent" not in metadata or "temperature_c" not in metadata:
        raise MissingMetadata("reference curve needs mu, or temperature_c and rh_percent")
    env = Environment(
        temperature=metadata["temperature_c"],
        relative_humidity=metadata["rh_percent"],
        pressure=metadata.get("pressure_hpa", STANDARD_PRESSURE_HPA),
    )
    return resolve_mu(env), distance


def model_loss(frequency, metadata: dict, lines: LineSet = FULL, strict: bool = False):
    """Model loss [dB] at `frequency` for the conditions in `metadata`."""
    mu, distance = curve_conditions(metadata)
    quantity = str(metadata.get("quantity", "absorption")).lower()
    loss = absorption.absorption_loss_db(frequency, mu, distance, lines, strict)
    if quantity == "absorption":
        return np.asarray(loss)
    if quantity == "total":
        gains = float(metadata.get("gain_tx_db", 0.0)) + float(metadata.get("gain_rx_db", 0.0))
        return np.asarray(loss + fspl_db(distance, frequency) - gains)
    raise ParseError(f"unknown quantity {quantity!r}; expected absorption or total")


def model_curve(
    frequency,
    distance: float,
    env: Optional[Environment] = None,
    lines: LineSet = FULL,
    *,
    mu: Optional[float] = None,
    quantity: str = "absorption",
    source: str = "thzlos",
) -> ReferenceCurve:
    """Model output packaged as a reference curve (useful for self-checks)."""
    metadata = {"source": source, "distance_m": float(distance), "quantity": quantity}
    if mu is not None and env is None:
        metadata["mu"] = float(mu)
    else:
        env = env if env is not None else Environment()
        metadata.update(temperature_c=env.temperature, rh_percent=env.relative_humidity,
                        pressure_hpa=env.pressure)
    f = np.asarray(frequency, dtype=float)
    return ReferenceCurve(f, model_loss(f, metadata, lines), metadata)


def compare(curve: ReferenceCurve, lines: LineSet = FULL, strict: bool = False) -> ErrorReport:
    """Evaluate the model at exactly the curve's frequencies and report errors.

    No interpolation is involved. ``error = model - reference``.
    """
    model = model_loss(curve.frequency, curve.metadata, lines, strict)
    err = model - curve.loss
    abs_err = np.abs(err)
    worst = int(np.argmax(abs_err))
    return ErrorReport(
        frequency=curve.frequency,
        model_db=model,
        reference_db=curve.loss,
        errors=err,
        max_abs_error=float(abs_err[worst]),
        # rounding in the mean must not push rms above max
        rms_error=min(float(np.sqrt(np.mean(err * err))), float(abs_err[worst])),
        worst_frequency=float(curve.frequency[worst]),
        source=curve.source,
    )
