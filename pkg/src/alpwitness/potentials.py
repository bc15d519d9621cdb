"""Interaction potentials and the branch phases they imprint.

Parallel geometry: particle 2 sits a distance ``d`` from particle 1 along the
x axis, both superpositions are split by ``delta_x`` along y. Same-branch
pairs are ``(d, 0, 0)`` apart, cross-branch pairs ``(d, delta_x, 0)``.
All quantities are SI; ALP masses enter in eV and are converted to ranges.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .qcore import PhaseSet
from .units import G, HBAR, HBAR_C, M_E, C, mass_ev_to_range_m
from .validation import check_positive, check_unit_vector


@dataclass(frozen=True)
class Geometry:
    d: float
    delta_x: float
    tau: float

    def __post_init__(self):
        check_positive(self.d, "d")
        check_positive(self.delta_x, "delta_x")
        check_positive(self.tau, "tau")

    @classmethod
    def ion_trap(cls, d, tau, ion_mass, trap_omega):
        """Geometry whose superposition width is the trap ground-state width."""
        return cls(d=d, delta_x=ion_trap_delta_x(ion_mass, trap_omega), tau=tau)

    @property
    def r_cross(self):
        return math.hypot(self.d, self.delta_x)

    @property
    def aligned_vec(self):
        return np.array([self.d, 0.0, 0.0])

    @property
    def cross_vec(self):
        return np.array([self.d, self.delta_x, 0.0])


def ion_trap_delta_x(m, omega):
    """Ground-state width sqrt(hbar / (2 m omega)); ``omega`` is angular."""
    check_positive(m, "ion mass")
    check_positive(omega, "trap frequency")
    return math.sqrt(HBAR / (2.0 * m * omega))


def _distance(r_vec):
    r_vec = np.asarray(r_vec, dtype=float)
    if r_vec.shape != (3,):
        raise DomainError(f"displacement must be a 3-vector, got shape {r_vec.shape}")
    r = float(np.linalg.norm(r_vec))
    if not r > 0:
        raise DomainError("potential is undefined at zero separation (contact term)")
    return r


def yukawa_profile(r, lam):
    """e^{-r/lam} / r."""
    return math.exp(-r / lam) / r


@dataclass(frozen=True)
class Yukawa:
    """U = alpha e^{-r/lam} / r with ``alpha`` in J m."""

    alpha: float
    lam: float

    def __post_init__(self):
        check_positive(self.lam, "lambda")

    def potential(self, r_vec):
        return self.alpha * yukawa_profile(_distance(r_vec), self.lam)


@dataclass(frozen=True)
class ModifiedNewtonian:
    """U = (G m^2 / r)(1 + alpha_g e^{-r/lam}).

    ``alpha_g`` outside (-1, 1) is allowed but reported by
    :attr:`exceeds_alpha_bound`.
    """

    alpha_g: float
    lam: float
    m: float

    def __post_init__(self):
        check_positive(self.lam, "lambda")
        check_positive(self.m, "particle mass")

    @property
    def exceeds_alpha_bound(self):
        return abs(self.alpha_g) >= 1.0

    def potential(self, r_vec):
        r = _distance(r_vec)
        return G * self.m**2 / r * (1.0 + self.alpha_g * math.exp(-r / self.lam))


@dataclass(frozen=True)
class ScalarALP:
    """Scalar boson exchange, U = -(g_S^2 / 4 pi) hbar c e^{-r/lam_phi} / r."""

    g_s: float
    m_phi: float

    def __post_init__(self):
        check_positive(self.m_phi, "m_phi")

    @property
    def lam(self):
        return mass_ev_to_range_m(self.m_phi)

    def potential(self, r_vec):
        r = _distance(r_vec)
        return -(self.g_s**2) / (4.0 * math.pi) * HBAR_C * math.exp(-r / self.lam) / r

    def as_yukawa(self):
        """The equivalent :class:`Yukawa` with the attractive sign kept explicit."""
        return Yukawa(alpha=-(self.g_s**2) / (4.0 * math.pi) * HBAR_C, lam=self.lam)


@dataclass(frozen=True)
class SpinConfig:
    """Polarization directions of the two fermion spins (product state)."""

    s1_hat: tuple = (1.0, 0.0, 0.0)
    s2_hat: tuple = (1.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "s1_hat", check_unit_vector(self.s1_hat, "s1_hat"))
        object.__setattr__(self, "s2_hat", check_unit_vector(self.s2_hat, "s2_hat"))


# hbar c times the squared reduced Compton wavelength of the electron:
# the SI form of 1/(M1 M2) multiplying a 1/length^3 bracket
_DIPOLE_PREFACTOR = HBAR**3 / (M_E**2 * C)


@dataclass(frozen=True)
class PseudoscalarALP:
    """Pseudoscalar (dipole-dipole) boson exchange between electron spins.

    For product spin states <S1.S2> = s1.s2 / 4 and
    <(S1.r)(S2.r)> = (s1.r)(s2.r) / 4. The contact term is not modelled.
    """

    g_p: float
    m_phi: float
    spin: SpinConfig = field(default_factory=SpinConfig)

    def __post_init__(self):
        check_positive(self.m_phi, "m_phi")

    @property
    def lam(self):
        return mass_ev_to_range_m(self.m_phi)

    def potential(self, r_vec):
        r = _distance(r_vec)
        r_hat = np.asarray(r_vec, dtype=float) / r
        s1 = np.asarray(self.spin.s1_hat)
        s2 = np.asarray(self.spin.s2_hat)
        spin_spin = 0.25 * float(s1 @ s2)
        spin_axis = 0.25 * float(s1 @ r_hat) * float(s2 @ r_hat)
        k = 1.0 / self.lam
        bracket = spin_spin * (k / r**2 + 1.0 / r**3) - spin_axis * (
            k**2 / r + 3.0 * k / r**2 + 3.0 / r**3
        )
        return -(self.g_p**2) / (4.0 * math.pi) * _DIPOLE_PREFACTOR * math.exp(-r * k) * bracket


POTENTIAL_MODELS = (Yukawa, ModifiedNewtonian, ScalarALP, PseudoscalarALP)


def potential_energy(model, r_vec):
    """Potential energy in J of ``model`` at displacement ``r_vec`` (m)."""
    if not isinstance(model, POTENTIAL_MODELS):
        raise TypeError(f"unsupported potential model {type(model).__name__}")
    return model.potential(r_vec)


def branch_energies(model, geom):
    """(U at the same-branch separation, U at the cross-branch separation)."""
    return potential_energy(model, geom.aligned_vec), potential_energy(model, geom.cross_vec)


def phase_pair(model, geom):
    """Branch phases (tau/hbar) U; both cross-branch phases are equal here."""
    u_aligned, u_cross = branch_energies(model, geom)
    scale = geom.tau / HBAR
    phi = scale * (u_cross - u_aligned)
    return PhaseSet(phi_global=scale * u_aligned, phi_1=phi, phi_2=phi)
