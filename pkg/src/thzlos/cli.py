"""Command line front end: ``thzlos {coeff,loss,band-avg,surface,compare}``.

Frequencies are given in GHz on the command line and converted to whole Hz
here; the library itself works in Hz. Defaults may come from a ``key=value``
config file (``--config`` or the ``THZLOS_CONFIG`` environment variable);
command line flags win over file values.

Exit codes: 0 success, 2 usage or validation error, 3 frequency outside the
model range in strict mode, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

import numpy as np

from . import __version__, absorption, pathloss, reference
from .absorption import LineSet
from .atmosphere import STANDARD_PRESSURE_HPA, Environment, resolve_mu
from .errors import DomainRangeError, ModelError

EXIT_USAGE = 2
EXIT_RANGE = 3
EXIT_IO = 4

CONFIG_ENV_VAR = "THZLOS_CONFIG"

DEFAULTS = {
    "temp_c": 25.0,
    "rh": 50.0,
    "pressure_hpa": STANDARD_PRESSURE_HPA,
    "gain_tx_db": 0.0,
    "gain_rx_db": 0.0,
    "step_ghz": 0.1,
    "format": "csv",
    "strict": False,
    "lines": "full",
    "distance_m": "1000",
}
_FLOAT_KEYS = {"temp_c", "rh", "pressure_hpa", "mu", "gain_tx_db", "gain_rx_db", "step_ghz"}
_ATMOSPHERE_KEYS = ("mu", "temp_c", "rh", "pressure_hpa")


class UsageError(Exception):
    pass


def ghz_to_hz(value: float) -> float:
    """GHz to Hz, rounded to whole Hz."""
    hz = float(round(float(value) * 1e9))
    if not math.isfinite(hz):
        raise UsageError(f"invalid frequency {value!r} GHz")
    return hz


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _float_list(text: str, what: str) -> list:
    items = [tok.strip() for tok in str(text).split(",") if tok.strip()]
    try:
        return [float(tok) for tok in items]
    except ValueError:
        raise UsageError(f"invalid {what} list {text!r}") from None


def read_config(path: str) -> dict:
    """Parse a ``key=value`` config file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip().lower().replace("-", "_")
            value = value.strip()
            if key in _FLOAT_KEYS:
                try:
                    out[key] = float(value)
                except ValueError:
                    raise UsageError(f"{path}:{lineno}: {key} must be a number") from None
            elif key == "strict":
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise UsageError(f"{path}:{lineno}: strict must be true or false")
                out[key] = value.lower() in ("true", "1", "yes")
            elif key in ("format", "lines", "distance_m"):
                out[key] = value
            else:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
    return out


class Settings:
    """Effective options after merging built-in defaults, config file and flags."""

    def __init__(self, args: argparse.Namespace):
        path = args.config or os.environ.get(CONFIG_ENV_VAR)
        cfg = read_config(path) if path else {}
        self.config_path = path
        flags = {k: getattr(args, k, None) for k in DEFAULTS.keys() | {"mu"}}

        cli_atm = {k for k in _ATMOSPHERE_KEYS if flags.get(k) is not None}
        if cli_atm:
            # atmosphere given on the command line replaces the file's entirely
            cfg = {k: v for k, v in cfg.items() if k not in _ATMOSPHERE_KEYS}
            atm_source = flags
        else:
            atm_source = cfg
        atm = {k for k in _ATMOSPHERE_KEYS if atm_source.get(k) is not None}
        if "mu" in atm and len(atm) > 1:
            raise UsageError("--mu cannot be combined with --temp-c/--rh/--pressure-hpa")

        def pick(key):
            if flags.get(key) is not None:
                return flags[key]
            if key in cfg:
                return cfg[key]
            return DEFAULTS.get(key)

        self.values = {k: pick(k) for k in DEFAULTS}
        if "mu" in atm:
            self.env = None
            self.mu = resolve_mu(mu=atm_source["mu"])
        else:
            self.env = Environment(
                temperature=pick("temp_c"),
                relative_humidity=pick("rh"),
                pressure=pick("pressure_hpa"),
            )
            self.mu = resolve_mu(self.env)
        if self.values["format"] not in ("csv", "json"):
            raise UsageError(f"unknown format {self.values['format']!r}")
        self.lines = LineSet.parse(self.values["lines"])
        self.strict = bool(self.values["strict"])

    @property
    def format(self) -> str:
        return self.values["format"]

    @property
    def gains(self):
        return float(self.values["gain_tx_db"]), float(self.values["gain_rx_db"])

    def distances(self) -> list:
        d = _float_list(self.values["distance_m"], "distance")
        if not d:
            raise UsageError("empty distance grid")
        return d

    def metadata(self, command: str) -> dict:
        meta = {
            "model": "thzlos",
            "model_version": __version__,
            "command": command,
            "mu": self.mu,
            "temperature_c": self.env.temperature if self.env else "n/a",
            "pressure_hpa": self.env.pressure if self.env else "n/a",
            "rh_percent": self.env.relative_humidity if self.env else "n/a",
            "lines": self.lines.label(),
            "gain_tx_db": self.gains[0],
            "gain_rx_db": self.gains[1],
            "strict": self.strict,
        }
        if self.config_path:
            meta["config"] = self.config_path
        return meta


def frequency_grid(args, settings: Settings) -> pathloss.FrequencyGrid:
    if args.freq_ghz is not None:
        if args.start_ghz is not None or args.stop_ghz is not None:
            raise UsageError("--freq-ghz cannot be combined with --start-ghz/--stop-ghz")
        pts = [ghz_to_hz(v) for v in _float_list(args.freq_ghz, "frequency")]
        if not pts:
            raise UsageError("empty frequency grid")
        return pathloss.FrequencyGrid.from_points(pts)
    start = ghz_to_hz(args.start_ghz if args.start_ghz is not None else 100.0)
    stop = ghz_to_hz(args.stop_ghz if args.stop_ghz is not None else 450.0)
    step = ghz_to_hz(settings.values["step_ghz"])
    return pathloss.FrequencyGrid(start, stop, step)


# ---------------------------------------------------------------- output


def render_table(meta: dict, columns: list, rows: list, fmt: str) -> str:
    if fmt == "json":
        doc = {"metadata": meta, "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(doc, indent=2, default=_json_default) + "\n"
    out = [f"# {k}={_meta_str(v)}" for k, v in meta.items()]
    out.append(",".join(columns))
    out.extend(",".join(_fmt(x) for x in r) for r in rows)
    return "\n".join(out) + "\n"


def _meta_str(v) -> str:
    return v if isinstance(v, str) else _fmt(v)


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(type(x))


def emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------- commands


def cmd_coeff(args, settings: Settings) -> str:
    grid = frequency_grid(args, settings)
    f = grid.points()
    mu, lines = settings.mu, settings.lines
    absorption.check_validity_range(f, settings.strict)
    cols = ["freq_hz"] + [f"y{i}" for i in lines.ids] + ["g", "kappa"]
    terms = [absorption.line_coefficient(i, f, mu) for i in lines.ids]
    g = absorption.continuum_fit(f, mu)
    k = absorption.kappa(f, mu, lines, strict=settings.strict)
    rows = [[f[j]] + [t[j] for t in terms] + [g[j], k[j]] for j in range(f.size)]
    meta = settings.metadata("coeff")
    meta["grid"] = grid.describe()
    return render_table(meta, cols, rows, settings.format)


def cmd_loss(args, settings: Settings) -> str:
    grid = frequency_grid(args, settings)
    distances = settings.distances()
    gtx, grx = settings.gains
    opts = dict(mu=settings.mu, strict=settings.strict)
    if len(grid) > 1 and len(distances) > 1:
        raise UsageError("sweep either frequency or distance; use 'surface' for both")
    if len(distances) > 1:
        results = pathloss.sweep_distance(grid.points()[0], distances, None, settings.lines,
                                          gtx, grx, **opts)
    else:
        link = pathloss.LinkConfig(distances[0], gtx, grx)
        results = pathloss.sweep_frequency(link, grid, None, settings.lines, **opts)
    meta = settings.metadata("loss")
    meta["grid"] = grid.describe()
    meta["distance_m"] = ";".join(_fmt(d) for d in distances)
    if args.reference_format:
        if len(distances) > 1:
            raise UsageError("--reference-format needs a frequency sweep at one distance")
        return _as_reference(results, settings, args.quantity)
    cols = ["freq_hz", "distance_m", "fspl_db", "absorption_db", "total_db"]
    rows = [list(r.as_dict().values()) for r in results]
    return render_table(meta, cols, rows, settings.format)


def _as_reference(results, settings: Settings, quantity: str) -> str:
    f = [r.frequency for r in results]
    loss = [r.absorption_db if quantity == "absorption" else r.total_db for r in results]
    meta = {"source": f"thzlos-{__version__}", "distance_m": results[0].distance,
            "quantity": quantity, "lines": settings.lines.label()}
    if settings.env is None:
        meta["mu"] = settings.mu
    else:
        meta.update(temperature_c=settings.env.temperature,
                    rh_percent=settings.env.relative_humidity,
                    pressure_hpa=settings.env.pressure)
    if quantity == "total":
        meta.update(gain_tx_db=settings.gains[0], gain_rx_db=settings.gains[1])
    out = [f"# {k}={_meta_str(v)}" for k, v in meta.items()]
    out.append("freq_hz,loss_db")
    out.extend(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(f, loss))
    return "\n".join(out) + "\n"


def cmd_band_avg(args, settings: Settings) -> str:
    center = ghz_to_hz(args.center_ghz)
    band = ghz_to_hz(args.band_ghz)
    distances = settings.distances()
    gtx, grx = settings.gains
    rows = []
    for d in distances:
        link = pathloss.LinkConfig(d, gtx, grx)
        value = pathloss.band_average_loss_db(
            center, band, args.n_points, link, None, settings.lines,
            mu=settings.mu, domain=args.domain, strict=settings.strict,
        )
        rows.append([center, band, d, value])
    meta = settings.metadata("band-avg")
    meta.update(center_hz=center, band_hz=band, domain=args.domain,
                n_points=len(pathloss.band_points(center, band, args.n_points)))
    cols = ["center_hz", "band_hz", "distance_m", "avg_loss_db"]
    return render_table(meta, cols, rows, settings.format)


def cmd_surface(args, settings: Settings) -> str:
    grid = frequency_grid(args, settings)
    distances = settings.distances()
    gtx, grx = settings.gains
    cap = args.cap_db
    surf = pathloss.loss_surface(grid, distances, None, settings.lines, cap,
                                 mu=settings.mu, gain_tx=gtx, gain_rx=grx,
                                 strict=settings.strict)
    meta = settings.metadata("surface")
    meta.update(grid=grid.describe(), cap_db="none" if cap is None else cap,
                capped=surf.capped)
    if settings.format == "json":
        doc = {"metadata": meta, "freq_hz": surf.frequencies.tolist(),
               "distance_m": surf.distances.tolist(), "total_db": surf.total_db.tolist()}
        return json.dumps(doc, indent=2) + "\n"
    out = [f"# {k}={_meta_str(v)}" for k, v in meta.items()]
    out.append(",".join(["distance_m\\freq_hz"] + [_fmt(x) for x in surf.frequencies]))
    for d, row in zip(surf.distances, surf.total_db):
        out.append(",".join([_fmt(d)] + [_fmt(x) for x in row]))
    return "\n".join(out) + "\n"


def cmd_compare(args, settings: Settings) -> str:
    curve = reference.load_reference(args.reference)
    report = reference.compare(curve, settings.lines, strict=settings.strict)
    if args.points_csv:
        rows = zip(report.frequency, report.model_db, report.reference_db, report.errors)
        text = "freq_hz,model_db,reference_db,error_db\n" + "".join(
            ",".join(_fmt(x) for x in r) + "\n" for r in rows)
        emit(text, args.points_csv)
    doc = {
        "metadata": {"model": "thzlos", "model_version": __version__,
                     "command": "compare", "reference": os.fspath(args.reference),
                     "lines": settings.lines.label(), "strict": settings.strict,
                     "reference_metadata": curve.metadata},
        "report": report.summary(),
    }
    return json.dumps(doc, indent=2, default=_json_default) + "\n"


# ----------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=f"key=value defaults file (or ${CONFIG_ENV_VAR})")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output", "-o", help="write to file instead of stdout")
    common.add_argument("--lines", help="line ids like 1,2 or a preset: full, d-band, "
                                        "thz-window, none")
    common.add_argument("--strict", action="store_true", default=None,
                        help="fail (exit 3) outside 100-450 GHz instead of warning")
    atm = common.add_argument_group("atmosphere (either --mu or the environment)")
    atm.add_argument("--mu", type=float, help="water-vapor volume mixing ratio")
    atm.add_argument("--temp-c", type=float, help="temperature [degC], default 25")
    atm.add_argument("--rh", type=float, help="relative humidity [%%], default 50")
    atm.add_argument("--pressure-hpa", type=float, help="pressure [hPa], default 1013.25")

    freq = argparse.ArgumentParser(add_help=False)
    freq.add_argument("--freq-ghz", help="frequency or comma separated list [GHz]")
    freq.add_argument("--start-ghz", type=float, help="sweep start [GHz], default 100")
    freq.add_argument("--stop-ghz", type=float, help="sweep stop [GHz], default 450")
    freq.add_argument("--step-ghz", type=float, help="sweep step [GHz], default 0.1")

    link = argparse.ArgumentParser(add_help=False)
    link.add_argument("--distance-m", help="distance or comma separated list [m], default 1000")
    link.add_argument("--gain-tx-db", type=float, help="Tx antenna gain [dBi]")
    link.add_argument("--gain-rx-db", type=float, help="Rx antenna gain [dBi]")

    parser = _Parser(prog="thzlos", description="LOS channel model for 100-450 GHz.")
    parser.add_argument("--version", action="version", version=f"thzlos {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeff", parents=[common, freq],
                       help="per-line absorption coefficients and kappa [1/m]")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("loss", parents=[common, freq, link],
                       help="FSPL, absorption and total loss [dB]")
    p.add_argument("--reference-format", action="store_true",
                   help="emit a reference CSV (freq_hz,loss_db) usable by 'compare'")
    p.add_argument("--quantity", choices=("absorption", "total"), default="absorption",
                   help="loss column for --reference-format")
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("band-avg", parents=[common, link], help="band averaged total loss")
    p.add_argument("--center-ghz", type=float, required=True)
    p.add_argument("--band-ghz", type=float, required=True, help="bandwidth [GHz]")
    p.add_argument("--n-points", type=int, help="grid points; default keeps spacing <= 100 MHz")
    p.add_argument("--domain", choices=("linear", "db"), default="linear",
                   help="average received power (linear) or dB values")
    p.set_defaults(func=cmd_band_avg)

    p = sub.add_parser("surface", parents=[common, freq, link],
                       help="total loss matrix over distance x frequency")
    p.add_argument("--cap-db", type=float, help="clamp output values (presentation only)")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("compare", parents=[common],
                       help="error of the model against a reference CSV")
    p.add_argument("--reference", required=True, help="reference curve CSV")
    p.add_argument("--points-csv", help="write the per-point errors to this CSV")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        settings = Settings(args)
        text = args.func(args, settings)
        emit(text, args.output)
    except UsageError as exc:
        print(f"thzlos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainRangeError as exc:
        print(f"thzlos: range error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except ModelError as exc:
        print(f"thzlos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"thzlos: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
