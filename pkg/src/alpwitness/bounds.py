"""Externally published exclusion regions and curve classification.

File format (UTF-8)::

    # name: Eot-Wash 2020
    # source: digitized from <citation>
    # abscissa: range_m        (or mass_eV)
    # coupling: alpha_g        (alpha_J_m | alpha_g | g_S | g_P)
    1e-5, 1e3
    1e-4  1e1

``#`` lines of the form ``key: value`` become metadata; other comment lines
are ignored. Data rows hold two numbers separated by a comma or whitespace.
Couplings are compared by magnitude against the upper limit; a point on or
above the limit is excluded.
"""

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import ExclusionFormatError, KindMismatchError

ABSCISSA_KINDS = ("range_m", "mass_eV")
COUPLING_KINDS = ("alpha_J_m", "alpha_g", "g_S", "g_P")

_META = re.compile(r"^#\s*([A-Za-z_][\w-]*)\s*:\s*(.*?)\s*$")
_SPLIT = re.compile(r"[,\s]+")


class Classification(str, Enum):
    EXCLUDED = "excluded"
    ALLOWED = "allowed"
    OUTSIDE = "outside_region_support"


@dataclass(frozen=True)
class ExclusionRegion:
    name: str
    source: str
    abscissa: np.ndarray
    limit: np.ndarray
    abscissa_kind: str
    coupling_kind: str
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.asarray(self.abscissa, dtype=float)
        y = np.asarray(self.limit, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or len(x) < 2:
            raise ExclusionFormatError("an exclusion region needs at least two (abscissa, limit) samples")
        if np.any(np.diff(x) <= 0):
            raise ExclusionFormatError("abscissa must be strictly increasing")
        if np.any(x <= 0) or np.any(y <= 0):
            raise ExclusionFormatError("abscissae and limits must be positive")
        if self.abscissa_kind not in ABSCISSA_KINDS:
            raise ExclusionFormatError(f"unknown abscissa kind {self.abscissa_kind!r}")
        if self.coupling_kind not in COUPLING_KINDS:
            raise ExclusionFormatError(f"unknown coupling kind {self.coupling_kind!r}")
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "limit", y)

    def __len__(self):
        return len(self.abscissa)

    @property
    def is_proxy(self):
        return str(self.metadata.get("proxy", "")).lower() in ("1", "true", "yes")

    def upper_limit(self, x):
        """Log-log interpolated limit; NaN outside the sampled support."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full(x.shape, np.nan)
        inside = (x >= self.abscissa[0]) & (x <= self.abscissa[-1])
        out[inside] = np.exp(np.interp(np.log(x[inside]), np.log(self.abscissa), np.log(self.limit)))
        # exp(log(y)) is not always y to the last bit
        idx = np.searchsorted(self.abscissa, x)
        hit = inside & (idx < len(self.abscissa))
        hit[hit] = self.abscissa[idx[hit]] == x[hit]
        out[hit] = self.limit[idx[hit]]
        return out


def _parse_row(text, lineno):
    parts = [p for p in _SPLIT.split(text.strip()) if p]
    if len(parts) != 2:
        raise ExclusionFormatError(f"expected two numeric columns, got {text.strip()!r}", lineno)
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise ExclusionFormatError(f"non-numeric value in {text.strip()!r}", lineno) from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ExclusionFormatError(f"non-finite value in {text.strip()!r}", lineno)
    return x, y


def load_exclusion(path):
    """Read an exclusion region; errors name the offending line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ExclusionFormatError(f"cannot read {path}: {exc}") from None
    meta, xs, ys = {}, [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _META.match(stripped)
            if m:
                meta[m.group(1).lower()] = m.group(2)
            continue
        x, y = _parse_row(stripped, lineno)
        if y <= 0:
            raise ExclusionFormatError(f"limit must be positive, got {y!r}", lineno)
        if x <= 0:
            raise ExclusionFormatError(f"abscissa must be positive, got {x!r}", lineno)
        if xs and x <= xs[-1]:
            raise ExclusionFormatError(
                f"abscissa {x!r} does not increase (previous {xs[-1]!r})", lineno
            )
        xs.append(x)
        ys.append(y)
    if not xs:
        raise ExclusionFormatError(f"{path}: no data rows")
    if len(xs) < 2:
        raise ExclusionFormatError(f"{path}: need at least two data rows")
    for key in ("abscissa", "coupling"):
        if key not in meta:
            raise ExclusionFormatError(f"{path}: missing '# {key}:' metadata line")
    return ExclusionRegion(
        name=meta.get("name", path.stem),
        source=meta.get("source", ""),
        abscissa=np.array(xs),
        limit=np.array(ys),
        abscissa_kind=meta["abscissa"],
        coupling_kind=meta["coupling"],
        metadata=meta,
    )


def _check_kinds(curve, region):
    if (curve.abscissa_kind, curve.coupling_kind) != (region.abscissa_kind, region.coupling_kind):
        raise KindMismatchError(
            f"curve is ({curve.abscissa_kind}, {curve.coupling_kind}) but region "
            f"{region.name!r} is ({region.abscissa_kind}, {region.coupling_kind})"
        )


def classify_points(abscissa, coupling, region):
    """Classify raw points; NaN couplings count as outside the support."""
    abscissa = np.asarray(abscissa, dtype=float)
    magnitude = np.abs(np.asarray(coupling, dtype=float))
    limit = region.upper_limit(abscissa)
    result = []
    for lim, g in zip(limit, magnitude):
        if math.isnan(lim) or math.isnan(g):
            result.append(Classification.OUTSIDE)
        elif g >= lim:
            result.append(Classification.EXCLUDED)
        else:
            result.append(Classification.ALLOWED)
    return result


def classify_curve(curve, region):
    """Per-sample classification of a constraint curve against one region.

    ``curve`` needs ``abscissa``, ``coupling``, ``abscissa_kind`` and
    ``coupling_kind`` attributes.
    """
    _check_kinds(curve, region)
    return classify_points(curve.abscissa, curve.coupling, region)


def combine(classifications):
    """Merge per-region labels: any exclusion wins, then any allowed."""
    per_sample = list(zip(*classifications)) if classifications else []
    merged = []
    for labels in per_sample:
        if Classification.EXCLUDED in labels:
            merged.append(Classification.EXCLUDED)
        elif Classification.ALLOWED in labels:
            merged.append(Classification.ALLOWED)
        else:
            merged.append(Classification.OUTSIDE)
    return merged


def classify_against(curve, regions):
    """Combined classification against several regions (empty list: all outside)."""
    if not regions:
        return [Classification.OUTSIDE] * len(curve.abscissa)
    return combine([classify_curve(curve, r) for r in regions])


def summarize(labels):
    return {c.value: sum(1 for label in labels if label == c) for c in Classification}
