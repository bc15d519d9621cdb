"""Run configuration for the command line, plus the figure presets.

A config file is a flat YAML (or JSON) mapping whose keys are the fields of
:class:`RunConfig`. Unknown keys are rejected by name.
"""

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import yaml

from .errors import ConfigError, DomainError
from .inversion import WitnessTarget
from .potentials import Geometry, SpinConfig
from .scan import MODEL_KINDS, ScanRequest

FORMATS = ("csv", "json")

_FLOAT_FIELDS = ("d", "tau", "witness", "gamma", "grid_min", "grid_max")
_OPTIONAL_FLOAT_FIELDS = ("delta_x", "mass", "ion_mass", "trap_omega")


@dataclass
class RunConfig:
    model: str = "yukawa"
    d: float = 50e-6
    delta_x: Optional[float] = 10e-6
    tau: float = 1.0
    witness: float = -0.1
    gamma: float = 0.1
    grid_min: float = 1e-6
    grid_max: float = 1e-2
    points: int = 200
    log_grid: bool = True
    mass: Optional[float] = None
    ion_mass: Optional[float] = None
    trap_omega: Optional[float] = None
    spin1: list = field(default_factory=lambda: [1.0, 0.0, 0.0])
    spin2: list = field(default_factory=lambda: [1.0, 0.0, 0.0])
    allow_conjugate: bool = False
    out: Optional[str] = None
    format: str = "csv"
    exclusions: list = field(default_factory=list)
    preset: Optional[str] = None

    @classmethod
    def field_names(cls):
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError(f"configuration must be a mapping, got {type(data).__name__}")
        known = set(cls.field_names())
        for key in data:
            if key not in known:
                raise ConfigError(f"unknown configuration key '{key}'")
        cfg = cls(**data)
        cfg.normalize()
        return cfg

    @classmethod
    def from_file(cls, path):
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse config {path}: {exc}") from None
        return cls.from_dict(data or {})

    def to_dict(self):
        return dataclasses.asdict(self)

    def normalize(self):
        """Coerce types (YAML reads ``1e-6`` as a string) and check enums."""
        try:
            for name in _FLOAT_FIELDS:
                setattr(self, name, float(getattr(self, name)))
            for name in _OPTIONAL_FLOAT_FIELDS:
                value = getattr(self, name)
                setattr(self, name, None if value is None else float(value))
            if int(self.points) != float(self.points):
                raise ConfigError(f"points must be an integer, got {self.points!r}")
            self.points = int(self.points)
            self.spin1 = [float(v) for v in self.spin1]
            self.spin2 = [float(v) for v in self.spin2]
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad numeric value in configuration: {exc}") from None
        for name in ("log_grid", "allow_conjugate"):
            if not isinstance(getattr(self, name), bool):
                raise ConfigError(f"{name} must be true or false")
        if self.model not in MODEL_KINDS:
            raise ConfigError(f"model must be one of {MODEL_KINDS}, got {self.model!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        if isinstance(self.exclusions, str):
            self.exclusions = [self.exclusions]
        self.exclusions = [str(p) for p in self.exclusions]
        return self

    def geometry(self):
        if self.delta_x is None:
            if self.ion_mass is None or self.trap_omega is None:
                raise ConfigError("delta_x is unset: give ion_mass and trap_omega instead")
            return Geometry.ion_trap(self.d, self.tau, self.ion_mass, self.trap_omega)
        return Geometry(self.d, self.delta_x, self.tau)

    def to_request(self):
        """Build the :class:`ScanRequest`; invalid values surface as ConfigError."""
        try:
            return ScanRequest(
                model=self.model,
                geom=self.geometry(),
                target=WitnessTarget(self.witness, self.gamma, self.tau),
                grid_min=self.grid_min,
                grid_max=self.grid_max,
                points=self.points,
                log_grid=self.log_grid,
                mass=self.mass,
                spin=SpinConfig(tuple(self.spin1), tuple(self.spin2)),
                allow_conjugate=self.allow_conjugate,
                ion_mass=self.ion_mass,
                trap_omega=self.trap_omega,
            )
        except DomainError as exc:
            raise ConfigError(str(exc)) from None


# Grid ranges are estimates covering the plotted decades.
_QGEM = dict(d=50e-6, delta_x=10e-6, tau=1.0, grid_min=1e-6, grid_max=1e-2)
_ION = dict(
    delta_x=None, ion_mass=1e-27, trap_omega=1e5, tau=1e-6, gamma=1e3,
    grid_min=1e-15, grid_max=10.0,
)

PRESETS = {
    "fig2": dict(model="yukawa", witness=-0.1, gamma=0.1, **_QGEM),
    "fig3": dict(model="modified_newtonian", mass=1e-14, witness=-0.1, gamma=0.1, **_QGEM),
    # the scalar potential is attractive: W < 0 is reached on the conjugate phase
    "fig4-near": dict(model="scalar_alp", d=500e-9, witness=-0.1, allow_conjugate=True, **_ION),
    "fig4-far": dict(model="scalar_alp", d=50e-6, witness=-0.1, allow_conjugate=True, **_ION),
    # gamma = 1e3 Hz by default; fig5-low-gamma runs the same scan at 1e-3 Hz
    "fig5": dict(model="pseudoscalar_alp", d=500e-9, witness=-0.1, **_ION),
}
PRESETS["fig5-low-gamma"] = dict(PRESETS["fig5"], gamma=1e-3)
PRESET_ALIASES = {"fig4": "fig4-far"}


def preset_config(name):
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return RunConfig.from_dict(dict(PRESETS[name], preset=name))
