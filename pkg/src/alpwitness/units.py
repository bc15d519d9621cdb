"""Physical constants (CODATA 2018, SI) and the eV <-> metre range conversion.

Values are fixed here rather than pulled from ``scipy.constants`` so curve
output does not drift when a newer CODATA release is adopted upstream.

    HBAR       1.054571817e-34   J s      (exact from h)
    C          299792458         m s^-1   (exact)
    E_CHARGE   1.602176634e-19   C        (exact)
    G          6.67430e-11       m^3 kg^-1 s^-2
    M_E        9.1093837015e-31  kg
"""

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    G: float = 6.67430e-11
    m_e: float = 9.1093837015e-31
    c: float = 299792458.0
    e_charge: float = 1.602176634e-19

    @property
    def hbar_c_eV_m(self):
        """hbar*c expressed in eV m (about 1.97327e-7)."""
        return self.hbar * self.c / self.e_charge

    @property
    def hbar_c(self):
        """hbar*c in J m."""
        return self.hbar * self.c


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
G = CONSTANTS.G
M_E = CONSTANTS.m_e
C = CONSTANTS.c
E_CHARGE = CONSTANTS.e_charge
HBAR_C = CONSTANTS.hbar_c
HBAR_C_EV_M = CONSTANTS.hbar_c_eV_m


def mass_ev_to_range_m(m_phi):
    """Reduced Compton wavelength hbar c / (m_phi c^2) of a boson of mass ``m_phi`` eV."""
    if not (math.isfinite(m_phi) and m_phi > 0):
        raise DomainError(f"boson mass must be positive and finite, got {m_phi!r} eV")
    return HBAR_C_EV_M / m_phi


def range_m_to_mass_ev(lam):
    """Inverse of :func:`mass_ev_to_range_m`."""
    if not (math.isfinite(lam) and lam > 0):
        raise DomainError(f"range must be positive and finite, got {lam!r} m")
    return HBAR_C_EV_M / lam
