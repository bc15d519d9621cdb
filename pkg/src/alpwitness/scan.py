"""Grid scans producing coupling-versus-range (or mass) constraint curves."""

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, UsageError, error_kind
from .inversion import (
    WitnessTarget,
    alpha_from_witness,
    alpha_g_from_witness,
    g_p_from_witness,
    g_s_from_witness,
)
from .potentials import (
    Geometry,
    ModifiedNewtonian,
    PseudoscalarALP,
    ScalarALP,
    SpinConfig,
    Yukawa,
    phase_pair,
)
from .qcore import witness_closed_form
from .validation import check_grid

MODEL_KINDS = ("yukawa", "modified_newtonian", "scalar_alp", "pseudoscalar_alp")

# model -> (abscissa kind, coupling kind)
CURVE_KINDS = {
    "yukawa": ("range_m", "alpha_J_m"),
    "modified_newtonian": ("range_m", "alpha_g"),
    "scalar_alp": ("mass_eV", "g_S"),
    "pseudoscalar_alp": ("mass_eV", "g_P"),
}


@dataclass(frozen=True)
class ScanRequest:
    """Everything needed to reproduce one constraint curve.

    ``mass`` is the particle mass (kg) of the modified-Newtonian model;
    ``spin`` is only read by the pseudoscalar model. ``ion_mass`` and
    ``trap_omega`` are informational once ``geom`` is built.
    """

    model: str
    geom: Geometry
    target: WitnessTarget
    grid_min: float
    grid_max: float
    points: int = 200
    log_grid: bool = True
    mass: Optional[float] = None
    spin: SpinConfig = field(default_factory=SpinConfig)
    allow_conjugate: bool = False
    ion_mass: Optional[float] = None
    trap_omega: Optional[float] = None

    def __post_init__(self):
        if self.model not in MODEL_KINDS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {MODEL_KINDS}")
        grid_min, grid_max, points = check_grid(self.grid_min, self.grid_max, self.points)
        object.__setattr__(self, "points", points)
        if self.model == "modified_newtonian" and not (self.mass and self.mass > 0):
            raise DomainError("modified_newtonian scans need a positive particle mass")
        if not math.isclose(self.target.tau, self.geom.tau, rel_tol=1e-12):
            raise DomainError("witness tau and geometry tau differ")

    @property
    def abscissa_kind(self):
        return CURVE_KINDS[self.model][0]

    @property
    def coupling_kind(self):
        return CURVE_KINDS[self.model][1]

    @property
    def spec(self):
        return PointSpec(self.model, self.geom, self.target, self.mass, self.spin, self.allow_conjugate)

    def grid(self):
        if self.log_grid:
            return np.geomspace(self.grid_min, self.grid_max, self.points)
        return np.linspace(self.grid_min, self.grid_max, self.points)


class PointSpec(NamedTuple):
    """The grid-independent part of a :class:`ScanRequest`."""

    model: str
    geom: Geometry
    target: WitnessTarget
    mass: Optional[float] = None
    spin: SpinConfig = SpinConfig()
    allow_conjugate: bool = False


class Sample(NamedTuple):
    abscissa: float
    coupling: float
    omega_ent_tau: float
    valid: bool
    error_kind: Optional[str] = None
    conjugate: bool = False


@dataclass(frozen=True)
class ConstraintCurve:
    request: ScanRequest
    samples: tuple

    def __len__(self):
        return len(self.samples)

    @property
    def abscissa(self):
        return np.array([s.abscissa for s in self.samples])

    @property
    def coupling(self):
        return np.array([s.coupling for s in self.samples])

    @property
    def valid(self):
        return np.array([s.valid for s in self.samples], dtype=bool)

    @property
    def abscissa_kind(self):
        return self.request.abscissa_kind

    @property
    def coupling_kind(self):
        return self.request.coupling_kind


def invert_point(request, x):
    """Coupling at one abscissa; raises the inversion's domain errors.

    ``request`` may be a :class:`ScanRequest` or a :class:`PointSpec`.
    """
    target, geom = request.target, request.geom
    if request.model == "yukawa":
        return alpha_from_witness(target, x, geom)
    if request.model == "modified_newtonian":
        return alpha_g_from_witness(target, x, request.mass, geom)
    if request.model == "scalar_alp":
        return g_s_from_witness(target, x, geom, allow_conjugate=request.allow_conjugate)
    return g_p_from_witness(target, x, request.spin, geom, allow_conjugate=request.allow_conjugate)


def build_model(request, abscissa, coupling):
    """Potential model of ``request.model`` at one curve point."""
    if request.model == "yukawa":
        return Yukawa(alpha=coupling, lam=abscissa)
    if request.model == "modified_newtonian":
        return ModifiedNewtonian(alpha_g=coupling, lam=abscissa, m=request.mass)
    if request.model == "scalar_alp":
        return ScalarALP(g_s=coupling, m_phi=abscissa)
    return PseudoscalarALP(g_p=coupling, m_phi=abscissa, spin=request.spin)


def _sample_at(request, x):
    x = float(x)
    try:
        result = invert_point(request, x)
    except DomainError as exc:
        return Sample(x, math.nan, math.nan, False, error_kind(exc))
    if not math.isfinite(result.value):
        return Sample(x, math.nan, result.omega_ent_tau, False, "non_finite")
    return Sample(x, result.value, result.omega_ent_tau, result.valid, None, result.conjugate)


def run_scan(request):
    """Invert every grid point of ``request``; per-point failures stay in-band."""
    samples = tuple(_sample_at(request, x) for x in request.grid())
    return ConstraintCurve(request=request, samples=samples)


class RoundTripReport(NamedTuple):
    max_error: float
    checked: int
    empty: bool


def forward_witness(request, abscissa, coupling, conjugate=False):
    """Closed-form witness reached by the curve point (``conjugate`` flips the phase)."""
    phases = phase_pair(build_model(request, abscissa, coupling), request.geom)
    omega = phases.entangling_angle / request.geom.tau
    if conjugate:
        omega = -omega
    return witness_closed_form(omega, request.target.gamma, request.target.tau)


def round_trip_check(curve, request):
    """Largest relative deviation of the forward witness from the target.

    Only samples flagged valid are checked. A target of exactly zero is
    compared in absolute terms.
    """
    if curve.request != request:
        raise UsageError("curve was not produced from this scan request")
    target_w = request.target.W
    scale = abs(target_w) if target_w != 0 else 1.0
    worst, checked = 0.0, 0
    for s in curve.samples:
        if not s.valid:
            continue
        if s.conjugate and not request.allow_conjugate:
            raise UsageError("conjugate sample in a curve whose request forbids it")
        w = forward_witness(request, s.abscissa, s.coupling, s.conjugate)
        worst = max(worst, abs(w - target_w) / scale)
        checked += 1
    return RoundTripReport(worst, checked, checked == 0)
