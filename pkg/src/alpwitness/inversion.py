"""Invert a target witness value into the coupling of each potential model.

The entangling angle follows from the closed-form witness on the principal
arcsin branch, omega_ent tau in [-pi/2, pi/2]. Each model then relates the
angle linearly to its coupling (or coupling squared).

Attractive potentials (the scalar ALP, or a pseudoscalar with some spin
configurations) imprint a positive angle, whereas an entanglement-certifying
target (W < 0) needs a negative one. By default that mismatch raises
:class:`SignInconsistentWitnessError`. With ``allow_conjugate=True`` the
inversion targets the complex-conjugate state instead, which has an identical
partial-transpose spectrum. The result is then marked ``conjugate=True``.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateGeometryError, DomainError, SignInconsistentWitnessError, UnreachableWitnessError
from .potentials import PseudoscalarALP, ScalarALP, yukawa_profile, branch_energies
from .qcore import is_valid_approximation
from .units import G, HBAR, mass_ev_to_range_m
from .validation import check_finite, check_non_negative, check_positive

# smallest usable |e^{-r/lam}/r - e^{-d/lam}/d| in 1/m
MIN_BRACKET = 1e-300
# relative size below which a branch energy difference counts as zero
REL_DEGENERACY = 1e-12


@dataclass(frozen=True)
class WitnessTarget:
    W: float
    gamma: float
    tau: float

    def __post_init__(self):
        check_finite(self.W, "W")
        check_non_negative(self.gamma, "gamma")
        check_positive(self.tau, "tau")

    @property
    def gamma_tau(self):
        return self.gamma * self.tau

    @property
    def arcsin_argument(self):
        gt = self.gamma_tau
        return 0.5 * (math.exp(-gt) - math.exp(gt) * (1.0 - 4.0 * self.W))


class Coupling(NamedTuple):
    """An inverted coupling with the regime flags of its witness point."""

    value: float
    omega_ent_tau: float
    valid: bool
    conjugate: bool = False


def omega_ent_tau_from_witness(target):
    arg = target.arcsin_argument
    if abs(arg) > 1.0:
        raise UnreachableWitnessError(
            f"witness {target.W!r} is unreachable at gamma*tau = {target.gamma_tau!r} "
            f"(arcsin argument {arg!r} outside [-1, 1])"
        )
    return math.asin(arg)


def omega_ent_from_witness(target):
    """Entanglement frequency (rad/s) that yields ``target.W`` after ``target.tau``."""
    return omega_ent_tau_from_witness(target) / target.tau


def _check_times(target, geom):
    if not math.isclose(target.tau, geom.tau, rel_tol=1e-12):
        raise DomainError(f"witness tau {target.tau!r} differs from geometry tau {geom.tau!r}")


def yukawa_bracket(lam, geom):
    """e^{-r/lam}/r - e^{-d/lam}/d with r the cross-branch distance."""
    check_positive(lam, "lambda")
    bracket = yukawa_profile(geom.r_cross, lam) - yukawa_profile(geom.d, lam)
    if not abs(bracket) >= MIN_BRACKET:
        raise DegenerateGeometryError(
            f"branch factor {bracket!r} 1/m is numerically zero at lambda = {lam!r} m"
        )
    return bracket


def _coupling_result(value, angle, target, conjugate=False):
    return Coupling(value, angle, is_valid_approximation(target.gamma_tau, angle), conjugate)


def alpha_from_witness(target, lam, geom):
    """Yukawa strength alpha (J m) reproducing ``target`` at range ``lam``."""
    _check_times(target, geom)
    angle = omega_ent_tau_from_witness(target)
    alpha = HBAR * (angle / target.tau) / yukawa_bracket(lam, geom)
    return _coupling_result(alpha, angle, target)


def alpha_g_from_witness(target, lam, m, geom):
    """Dimensionless alpha_g of the Yukawa-modified Newtonian potential."""
    _check_times(target, geom)
    check_positive(m, "particle mass")
    angle = omega_ent_tau_from_witness(target)
    newton = 1.0 / geom.r_cross - 1.0 / geom.d
    alpha_g = (HBAR / (G * m**2) * (angle / target.tau) - newton) / yukawa_bracket(lam, geom)
    return _coupling_result(alpha_g, angle, target)


def _signed_root(target, angle, g_squared, allow_conjugate):
    """Positive root of ``g_squared``, resolving a negative value per ``allow_conjugate``."""
    conjugate = False
    if g_squared < 0:
        if not allow_conjugate:
            raise SignInconsistentWitnessError(
                f"witness {target.W!r} needs omega_ent*tau = {angle!r}, but this potential "
                "imprints the opposite sign (coupling squared would be negative)"
            )
        angle, g_squared, conjugate = -angle, -g_squared, True
    if not math.isfinite(g_squared):
        raise DegenerateGeometryError(f"coupling squared overflowed ({g_squared!r})")
    return _coupling_result(math.sqrt(abs(g_squared)), angle, target, conjugate)


def g_s_from_witness(target, m_phi, geom, allow_conjugate=False):
    """Scalar ALP coupling g_S for boson mass ``m_phi`` (eV).

    The scalar potential is attractive, so it generates omega_ent > 0;
    a target with W < 0 therefore needs ``allow_conjugate=True``.
    """
    _check_times(target, geom)
    lam = mass_ev_to_range_m(m_phi)
    angle = omega_ent_tau_from_witness(target)
    # Yukawa strength per unit g_S^2, negative for the attractive form
    alpha_unit = ScalarALP(g_s=1.0, m_phi=m_phi).as_yukawa().alpha
    g_squared = HBAR * (angle / target.tau) / alpha_unit / yukawa_bracket(lam, geom)
    return _signed_root(target, angle, g_squared, allow_conjugate)


def pseudoscalar_energy_difference(m_phi, spin, geom):
    """Cross minus aligned branch energy (J) of the pseudoscalar potential at g_P = 1."""
    u_aligned, u_cross = branch_energies(PseudoscalarALP(g_p=1.0, m_phi=m_phi, spin=spin), geom)
    delta_u = u_cross - u_aligned
    scale = max(abs(u_aligned), abs(u_cross))
    if scale == 0 or abs(delta_u) <= REL_DEGENERACY * scale:
        raise DegenerateGeometryError(
            f"pseudoscalar branch energies coincide at m_phi = {m_phi!r} eV"
        )
    return delta_u


def g_p_from_witness(target, m_phi, spin, geom, allow_conjugate=False):
    """Pseudoscalar ALP coupling g_P for boson mass ``m_phi`` (eV)."""
    _check_times(target, geom)
    check_positive(m_phi, "m_phi")
    delta_u = pseudoscalar_energy_difference(m_phi, spin, geom)
    angle = omega_ent_tau_from_witness(target)
    return _signed_root(target, angle, HBAR * (angle / target.tau) / delta_u, allow_conjugate)


def yukawa_plateau_alpha(target, geom):
    """Long-range limit of :func:`alpha_from_witness`, hbar omega_ent (1/r - 1/d)^-1."""
    _check_times(target, geom)
    return HBAR * omega_ent_from_witness(target) / (1.0 / geom.r_cross - 1.0 / geom.d)
