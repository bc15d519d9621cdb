"""scikit-learn compatible front end to the witness inversion.

:class:`WitnessCouplingInverter` takes a single column of ranges (m) or
boson masses (eV) and transforms it into the coupling that produces the
configured witness value, so it can sit in a ``Pipeline`` or be swept with
``ParameterGrid``.
"""

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .errors import DomainError
from .inversion import WitnessTarget, omega_ent_tau_from_witness
from .potentials import Geometry, SpinConfig
from .qcore import mirror_witness
from .scan import MODEL_KINDS, PointSpec, ScanRequest, _sample_at, forward_witness, run_scan


class WitnessCouplingInverter(TransformerMixin, BaseEstimator):
    """Map ranges or masses to the coupling that yields a target witness.

    Parameters
    ----------
    model : {"yukawa", "modified_newtonian", "scalar_alp", "pseudoscalar_alp"}
        Interaction model. Range models take lambda in metres, ALP models
        take m_phi in eV.
    witness : float
        Target witness expectation value (negative certifies entanglement).
    gamma : float
        Dephasing rate in Hz.
    tau : float
        Interaction time in s.
    d : float
        Trap separation in m.
    delta_x : float or None
        Superposition width in m. When None it is derived from ``ion_mass``
        and ``trap_omega``.
    mass : float or None
        Particle mass in kg, required by ``modified_newtonian``.
    ion_mass, trap_omega : float or None
        Trap parameters used when ``delta_x`` is None.
    spin1, spin2 : tuple of float
        Spin polarization unit vectors for ``pseudoscalar_alp``.
    allow_conjugate : bool
        Accept the conjugate-phase solution when the potential's sign
        cannot produce the target directly.

    Attributes
    ----------
    spec_ : PointSpec
        Validated model, geometry and target.
    omega_ent_tau_ : float
        Entangling angle implied by the target.
    """

    def __init__(
        self,
        model="yukawa",
        witness=-0.1,
        gamma=0.0,
        tau=1.0,
        d=50e-6,
        delta_x=10e-6,
        mass=None,
        ion_mass=None,
        trap_omega=None,
        spin1=(1.0, 0.0, 0.0),
        spin2=(1.0, 0.0, 0.0),
        allow_conjugate=False,
    ):
        self.model = model
        self.witness = witness
        self.gamma = gamma
        self.tau = tau
        self.d = d
        self.delta_x = delta_x
        self.mass = mass
        self.ion_mass = ion_mass
        self.trap_omega = trap_omega
        self.spin1 = spin1
        self.spin2 = spin2
        self.allow_conjugate = allow_conjugate

    def _build_spec(self):
        if self.model not in MODEL_KINDS:
            raise DomainError(f"unknown model {self.model!r}; expected one of {MODEL_KINDS}")
        if self.delta_x is None:
            if self.ion_mass is None or self.trap_omega is None:
                raise DomainError("delta_x=None needs both ion_mass and trap_omega")
            geom = Geometry.ion_trap(self.d, self.tau, self.ion_mass, self.trap_omega)
        else:
            geom = Geometry(self.d, self.delta_x, self.tau)
        if self.model == "modified_newtonian" and not (self.mass and self.mass > 0):
            raise DomainError("modified_newtonian needs a positive particle mass")
        target = WitnessTarget(self.witness, self.gamma, self.tau)
        spin = SpinConfig(tuple(self.spin1), tuple(self.spin2))
        return PointSpec(self.model, geom, target, self.mass, spin, bool(self.allow_conjugate))

    def fit(self, X=None, y=None):
        """Validate parameters; the data are only checked for shape."""
        if X is not None:
            check_array(X)
            self.n_features_in_ = 1
        self.spec_ = self._build_spec()
        self.omega_ent_tau_ = omega_ent_tau_from_witness(self.spec_.target)
        return self

    def _abscissa(self, X):
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single abscissa column, got {X.shape[1]} columns")
        return X[:, 0]

    def transform(self, X):
        """Couplings as an ``(n, 1)`` array; NaN where the inversion fails."""
        check_is_fitted(self, "spec_")
        out = [_sample_at(self.spec_, x).coupling for x in self._abscissa(X)]
        return np.asarray(out, dtype=float).reshape(-1, 1)

    def inverse_transform(self, X):
        """Not defined: several abscissae share one coupling."""
        raise NotImplementedError("the coupling does not determine the abscissa")

    def predict(self, X):
        """Forward witness for ``(abscissa, coupling)`` rows.

        With ``allow_conjugate`` a phase whose sign opposes the target's is
        reported on the conjugate branch, matching how it was inverted.
        """
        check_is_fitted(self, "spec_")
        X = check_array(X)
        if X.shape[1] != 2:
            raise ValueError(f"expected (abscissa, coupling) columns, got {X.shape[1]}")
        gamma_tau = self.spec_.target.gamma_tau
        out = np.empty(len(X))
        for i, (x, g) in enumerate(X):
            w = forward_witness(self.spec_, x, g)
            if self.spec_.allow_conjugate and self._opposes_target(w, gamma_tau):
                w = mirror_witness(w, gamma_tau)
            out[i] = w
        return out

    def _opposes_target(self, w, gamma_tau):
        # the forward angle sits on the other side of zero from the target's
        neutral = 0.25 * (1.0 - math.exp(-2.0 * gamma_tau))
        return (w - neutral) * self.omega_ent_tau_ < 0

    def score(self, X, y=None):
        """Negative worst relative round-trip deviation over valid points."""
        check_is_fitted(self, "spec_")
        target_w = self.spec_.target.W
        scale = abs(target_w) if target_w != 0 else 1.0
        worst = 0.0
        for x in self._abscissa(X):
            s = _sample_at(self.spec_, x)
            if s.valid:
                w = forward_witness(self.spec_, s.abscissa, s.coupling, s.conjugate)
                worst = max(worst, abs(w - target_w) / scale)
        return -worst

    def scan(self, grid_min, grid_max, points=200, log_grid=True):
        """Run a full :class:`ScanRequest` with the fitted configuration."""
        check_is_fitted(self, "spec_")
        spec = self.spec_
        request = ScanRequest(
            model=spec.model,
            geom=spec.geom,
            target=spec.target,
            grid_min=grid_min,
            grid_max=grid_max,
            points=points,
            log_grid=log_grid,
            mass=spec.mass,
            spin=spec.spin,
            allow_conjugate=spec.allow_conjugate,
            ion_mass=self.ion_mass,
            trap_omega=self.trap_omega,
        )
        return run_scan(request)
