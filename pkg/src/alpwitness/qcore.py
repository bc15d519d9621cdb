"""Two-qubit state, dephasing, partial transpose and the PPT witness.

Basis order is (uu, ud, du, dd) with the first label belonging to particle 1.
The partial transpose always acts on the second qubit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# eigenvalues smaller than this (about 64 ulp of 1) are reported as zero
EIGEN_ZERO = 1e-14


@dataclass(frozen=True)
class PhaseSet:
    """Phases accumulated by the four branches of the two-particle superposition.

    ``phi_1`` multiplies the (du) amplitude and ``phi_2`` the (ud) amplitude.
    ``phi_global`` is carried for completeness; it never reaches the density
    matrix.
    """

    phi_global: float
    phi_1: float
    phi_2: float

    def __post_init__(self):
        for name in ("phi_global", "phi_1", "phi_2"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")

    @property
    def entangling_angle(self):
        """(phi_1 + phi_2) / 2, i.e. omega_ent * tau."""
        return 0.5 * (self.phi_1 + self.phi_2)


@dataclass(frozen=True)
class WitnessEvaluation:
    closed_form_W: float
    numeric_min_pt_eigenvalue: float
    negativity: float
    gamma_tau: float
    omega_ent_tau: float
    valid_approximation: bool


def is_valid_approximation(gamma_tau, omega_ent_tau):
    """Small-time regime where the closed-form witness is trusted."""
    return bool(gamma_tau < 1.0 and abs(omega_ent_tau) < 1.0)


def build_state(phases):
    """State vector e^{i phi}/2 (1, e^{i phi_2}, e^{i phi_1}, 1)."""
    return 0.5 * np.exp(1j * phases.phi_global) * np.array(
        [1.0, np.exp(1j * phases.phi_2), np.exp(1j * phases.phi_1), 1.0]
    )


def _check_rate_time(gamma, tau):
    if not (math.isfinite(gamma) and math.isfinite(tau)):
        raise DomainError(f"gamma and tau must be finite, got {gamma!r}, {tau!r}")
    if gamma < 0 or tau < 0:
        raise DomainError(f"gamma and tau must be non-negative, got {gamma!r}, {tau!r}")


# number of differing qubit indices between row and column basis states
_MISMATCH = np.array(
    [[(a >> 1 != b >> 1) + (a & 1 != b & 1) for b in range(4)] for a in range(4)],
    dtype=float,
)


def dephasing_factors(gamma_tau):
    """Element-wise decay e^{-gamma tau (2 - delta_ii' - delta_jj')} as a 4x4 array."""
    # exp(-inf * 0) would give nan on the diagonal
    if math.isinf(gamma_tau):
        return np.eye(4)
    return np.exp(-gamma_tau * _MISMATCH)


def density_with_dephasing(phases, gamma, tau):
    """Density matrix of :func:`build_state` after independent dephasing of each qubit."""
    _check_rate_time(gamma, tau)
    psi = build_state(phases)
    rho = np.outer(psi, psi.conj())
    return rho * dephasing_factors(gamma * tau)


def partial_transpose_second(rho):
    """Transpose over the second-qubit index of a 4x4 two-qubit operator."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {rho.shape}")
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def pt_eigenvalues_closed_form(phases):
    """Partial-transpose spectrum of the undephased state.

    Returns ``(l1, l2, l3, l4)`` with ``l1,2 = +-sin(a)/2`` and
    ``l3,4 = 1/2 +- cos(a)/2`` where ``a = (phi_1 + phi_2)/2``.
    """
    a = phases.entangling_angle
    s, c = 0.5 * math.sin(a), 0.5 * math.cos(a)
    return np.array([s, -s, 0.5 + c, 0.5 - c])


def negativity_closed_form(phases):
    return 0.5 * abs(math.sin(phases.entangling_angle))


def witness_from_angle(omega_ent_tau, gamma_tau):
    """Closed-form witness expectation in terms of the dimensionless products."""
    q = math.exp(-gamma_tau)
    return 0.25 - 0.25 * q * (q - 2.0 * math.sin(omega_ent_tau))


def witness_closed_form(omega_ent, gamma, tau):
    """<W> = 1/4 - (1/4) e^{-gamma tau} [e^{-gamma tau} - 2 sin(omega_ent tau)].

    This is the most negative partial-transpose eigenvalue only while
    ``sin(omega_ent tau) <= 0``; for positive sine it is returned unchanged.
    """
    if not math.isfinite(omega_ent):
        raise DomainError(f"omega_ent must be finite, got {omega_ent!r}")
    _check_rate_time(gamma, tau)
    return witness_from_angle(omega_ent * tau, gamma * tau)


def mirror_witness(W, gamma_tau):
    """Witness value at the conjugate phase.

    ``witness_from_angle(-x, g) == mirror_witness(witness_from_angle(x, g), g)``.
    The conjugate state has the same partial-transpose spectrum.
    """
    return 0.5 * (1.0 - math.exp(-2.0 * gamma_tau)) - W


def pt_spectrum(phases, gamma, tau):
    """Ascending eigenvalues of the partially transposed dephased state."""
    rho_pt = partial_transpose_second(density_with_dephasing(phases, gamma, tau))
    return np.linalg.eigvalsh(rho_pt)


def evaluate_witness(phases, gamma, tau):
    """Closed-form witness next to the numerically exact PPT quantities."""
    _check_rate_time(gamma, tau)
    evals = pt_spectrum(phases, gamma, tau)
    # eigensolver noise on a separable state should not read as entanglement
    evals[np.abs(evals) < EIGEN_ZERO] = 0.0
    angle = phases.entangling_angle
    gamma_tau = gamma * tau
    return WitnessEvaluation(
        closed_form_W=witness_from_angle(angle, gamma_tau),
        numeric_min_pt_eigenvalue=float(evals[0]),
        negativity=float(abs(evals[evals < 0].sum())),
        gamma_tau=gamma_tau,
        omega_ent_tau=angle,
        valid_approximation=is_valid_approximation(gamma_tau, angle),
    )
