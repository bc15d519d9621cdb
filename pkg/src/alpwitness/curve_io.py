"""CSV and JSON serialization of constraint curves.

CSV files open with ``# key: value`` metadata lines (model, kinds, and the
full run configuration as one JSON line), followed by the fixed columns
``abscissa,coupling,omega_ent_tau,valid,error_kind``. Floats are written
in scientific notation with 17 significant digits, independent of locale.
"""

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

CSV_COLUMNS = ("abscissa", "coupling", "omega_ent_tau", "valid", "error_kind")


def format_float(x):
    return "nan" if math.isnan(x) else f"{x:.16e}"


def _json_float(x):
    return None if math.isnan(x) else float(x)


def curve_to_csv(curve, config_dict):
    buf = io.StringIO()
    buf.write(f"# model: {curve.request.model}\n")
    buf.write(f"# abscissa_kind: {curve.abscissa_kind}\n")
    buf.write(f"# coupling_kind: {curve.coupling_kind}\n")
    buf.write(f"# config: {json.dumps(config_dict, sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for s in curve.samples:
        writer.writerow(
            [
                format_float(s.abscissa),
                format_float(s.coupling),
                format_float(s.omega_ent_tau),
                "true" if s.valid else "false",
                s.error_kind or "",
            ]
        )
    return buf.getvalue()


def curve_to_json(curve, config_dict, round_trip=None, classification=None):
    samples = []
    for i, s in enumerate(curve.samples):
        row = {
            "abscissa": s.abscissa,
            "coupling": _json_float(s.coupling),
            "omega_ent_tau": _json_float(s.omega_ent_tau),
            "valid": bool(s.valid),
            "error_kind": s.error_kind,
            "conjugate": bool(s.conjugate),
        }
        if classification is not None:
            row["classification"] = classification[i].value
        samples.append(row)
    doc = {
        "config": config_dict,
        "model": curve.request.model,
        "abscissa_kind": curve.abscissa_kind,
        "coupling_kind": curve.coupling_kind,
        "samples": samples,
    }
    if round_trip is not None:
        doc["round_trip"] = {
            "max_error": round_trip.max_error,
            "checked": round_trip.checked,
            "empty": round_trip.empty,
        }
    return json.dumps(doc, indent=2, sort_keys=True)


@dataclass
class CurveData:
    """A curve read back from disk: enough to classify it against bounds."""

    abscissa: np.ndarray
    coupling: np.ndarray
    abscissa_kind: str
    coupling_kind: str
    config: dict


def _read_json(text, path):
    doc = json.loads(text)
    rows = doc["samples"]
    return CurveData(
        abscissa=np.array([r["abscissa"] for r in rows], dtype=float),
        coupling=np.array([math.nan if r["coupling"] is None else r["coupling"] for r in rows]),
        abscissa_kind=doc["abscissa_kind"],
        coupling_kind=doc["coupling_kind"],
        config=doc.get("config", {}),
    )


def _read_csv(text, path):
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    rows = list(csv.DictReader(body))
    if "abscissa_kind" not in meta or "coupling_kind" not in meta:
        raise ConfigError(f"{path}: curve file lacks abscissa_kind/coupling_kind metadata")
    return CurveData(
        abscissa=np.array([float(r["abscissa"]) for r in rows]),
        coupling=np.array([float(r["coupling"]) for r in rows]),
        abscissa_kind=meta["abscissa_kind"],
        coupling_kind=meta["coupling_kind"],
        config=json.loads(meta["config"]) if "config" in meta else {},
    )


def load_curve(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read curve {path}: {exc}") from None
    try:
        if text.lstrip().startswith("{"):
            return _read_json(text, path)
        return _read_csv(text, path)
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: malformed curve file ({exc})") from None
