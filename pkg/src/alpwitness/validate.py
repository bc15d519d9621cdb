"""Named property checks run by ``alpwitness validate``.

Each check returns ``(passed, detail)``. :func:`run_validation` accepts a
replacement closed-form witness so that mutations can be injected and the
suite shown to catch them.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import qcore
from .bounds import ExclusionRegion, classify_points
from .config import PRESETS, RunConfig
from .inversion import WitnessTarget, omega_ent_from_witness
from .potentials import (
    Geometry,
    ModifiedNewtonian,
    PseudoscalarALP,
    ScalarALP,
    SpinConfig,
    Yukawa,
    phase_pair,
    potential_energy,
)
from .qcore import PhaseSet
from .scan import build_model, run_scan
from .units import C, G, HBAR, mass_ev_to_range_m, range_m_to_mass_ev
from .errors import UnreachableWitnessError

SEED = 20240917


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass
class Context:
    witness: Callable
    rng: np.random.Generator


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def check_units_roundtrip(ctx):
    masses = np.geomspace(1e-18, 1e2, 201)
    err = max(_rel(range_m_to_mass_ev(mass_ev_to_range_m(m)), m) for m in masses)
    ranges = [mass_ev_to_range_m(m) for m in masses]
    monotone = all(a > b for a, b in zip(ranges, ranges[1:]))
    return err <= 1e-12 and monotone, f"max rel err {err:.2e}, decreasing={monotone}"


def _random_angles(ctx, n=1000):
    return ctx.rng.uniform(-math.pi, 0.0, n)


def check_pt_eigenvalues(ctx):
    worst = 0.0
    for a in _random_angles(ctx):
        ph = PhaseSet(0.0, a, a)
        closed = np.sort(qcore.pt_eigenvalues_closed_form(ph))
        worst = max(worst, float(np.max(np.abs(closed - qcore.pt_spectrum(ph, 0.0, 1.0)))))
    return worst <= 1e-12, f"max abs dev {worst:.2e}"


def check_negativity(ctx):
    worst = 0.0
    for a in _random_angles(ctx):
        ph = PhaseSet(0.0, a, a)
        ev = qcore.evaluate_witness(ph, 0.0, 1.0)
        worst = max(worst, abs(ev.negativity - qcore.negativity_closed_form(ph)))
    return worst <= 1e-12, f"max abs dev {worst:.2e}"


def check_witness_gamma0(ctx):
    worst = 0.0
    for a in _random_angles(ctx):
        numeric = qcore.pt_spectrum(PhaseSet(0.0, a, a), 0.0, 1.0)[0]
        worst = max(worst, abs(ctx.witness(a, 0.0, 1.0) - numeric), abs(ctx.witness(a, 0.0, 1.0) - 0.5 * math.sin(a)))
    return worst <= 1e-12, f"max abs dev {worst:.2e}"


def check_eq8_roundtrip(ctx):
    worst = 0.0
    for gt in (0.0, 0.01, 0.1, 0.5):
        for angle in np.linspace(-1.5, 1.5, 61):
            w = ctx.witness(angle, gt, 1.0)
            try:
                back = omega_ent_from_witness(WitnessTarget(w, gt, 1.0))
            except UnreachableWitnessError:
                return False, f"forward value {w!r} at angle {angle!r} is unreachable"
            worst = max(worst, abs(back - angle))
    return worst <= 1e-12, f"max abs angle dev {worst:.2e}"


def check_trace_hermitian(ctx):
    worst = 0.0
    for _ in range(200):
        p1, p2, p = ctx.rng.uniform(-math.pi, math.pi, 3)
        gt = ctx.rng.uniform(0, 5)
        rho = qcore.density_with_dephasing(PhaseSet(p, p1, p2), gt, 1.0)
        pt = qcore.partial_transpose_second(rho)
        worst = max(
            worst,
            abs(np.trace(rho) - 1.0),
            float(np.max(np.abs(rho - rho.conj().T))),
            float(np.max(np.abs(pt - pt.conj().T))),
        )
    return worst <= 1e-14, f"max deviation {worst:.2e}"


def check_peres_separable(ctx):
    worst_sep = min(qcore.pt_spectrum(PhaseSet(0.0, 0.0, 0.0), g, 1.0)[0] for g in (0.0, 0.1, 1.0, 10.0))
    angles = ctx.rng.uniform(0.01, math.pi - 0.01, 200) * ctx.rng.choice([-1, 1], 200)
    entangled = all(qcore.pt_spectrum(PhaseSet(0.0, a, a), 0.0, 1.0)[0] < -1e-10 for a in angles)
    return worst_sep >= -1e-12 and entangled, f"separable min {worst_sep:.2e}, entangled detected={entangled}"


def check_witness_monotone_gamma(ctx):
    gammas = np.linspace(0.0, 1.0, 101)
    for a in np.linspace(-3.1, -0.01, 50):
        values = [ctx.witness(a, g, 1.0) for g in gammas]
        if not all(x < y for x, y in zip(values, values[1:])):
            return False, f"not increasing in gamma at angle {a:.3f}"
    return True, "strictly increasing on gamma*tau in [0, 1]"


def check_dephasing_limit(ctx):
    w = ctx.witness(-0.7, 50.0, 1.0)
    m = qcore.pt_spectrum(PhaseSet(0.0, -0.7, -0.7), 50.0, 1.0)[0]
    ok = abs(w - 0.25) < 1e-12 and abs(m - 0.25) < 1e-12
    return ok, f"W={w:.3e}, numeric min={m:.3e}"


def check_conjugate_spectrum(ctx):
    worst = 0.0
    for _ in range(100):
        a = ctx.rng.uniform(-math.pi, math.pi)
        gt = ctx.rng.uniform(0, 2)
        s1 = qcore.pt_spectrum(PhaseSet(0.0, a, a), gt, 1.0)
        s2 = qcore.pt_spectrum(PhaseSet(0.0, -a, -a), gt, 1.0)
        worst = max(worst, float(np.max(np.abs(s1 - s2))))
        worst = max(worst, abs(qcore.mirror_witness(ctx.witness(a, gt, 1.0), gt) - ctx.witness(-a, gt, 1.0)))
    return worst <= 1e-12, f"max abs dev {worst:.2e}"


def _random_geometry(ctx):
    d = 10 ** ctx.rng.uniform(-6.5, -4)
    return Geometry(d=d, delta_x=d * 10 ** ctx.rng.uniform(-1.5, 0.5), tau=10 ** ctx.rng.uniform(-6, 0))


def _phase_rel(p, q):
    return max(_rel(p.phi_1, q.phi_1), _rel(p.phi_global, q.phi_global))


def check_scalar_yukawa(ctx):
    worst = 0.0
    for _ in range(100):
        geom = _random_geometry(ctx)
        g_s = 10 ** ctx.rng.uniform(-12, 0)
        m_phi = range_m_to_mass_ev(geom.d * 10 ** ctx.rng.uniform(-0.5, 3))
        scalar = ScalarALP(g_s, m_phi)
        yuk = Yukawa(alpha=-(g_s**2) / (4 * math.pi) * HBAR * C, lam=mass_ev_to_range_m(m_phi))
        worst = max(worst, _phase_rel(phase_pair(scalar, geom), phase_pair(yuk, geom)))
    return worst <= 1e-12, f"max rel dev {worst:.2e}"


def check_newtonian_decomposition(ctx):
    worst = 0.0
    for _ in range(100):
        geom = _random_geometry(ctx)
        m = 10 ** ctx.rng.uniform(-16, -12)
        lam = geom.d * 10 ** ctx.rng.uniform(0, 3)
        alpha_g = ctx.rng.choice([-1, 1]) * 10 ** ctx.rng.uniform(-1, 4)
        full = phase_pair(ModifiedNewtonian(alpha_g, lam, m), geom)
        bare = phase_pair(ModifiedNewtonian(0.0, lam, m), geom)
        yuk = phase_pair(Yukawa(G * m**2 * alpha_g, lam), geom)
        # measured against the full phase: the subtraction cancels digits
        scale = max(abs(full.phi_1), abs(yuk.phi_1))
        worst = max(worst, abs(full.phi_1 - bare.phi_1 - yuk.phi_1) / scale)
    return worst <= 1e-12, f"max rel dev {worst:.2e}"


def check_yukawa_phase_sign(ctx):
    for _ in range(100):
        geom = _random_geometry(ctx)
        lam = geom.d * 10 ** ctx.rng.uniform(-1, 3)
        if not (phase_pair(Yukawa(1e-30, lam), geom).phi_1 < 0 < phase_pair(Yukawa(-1e-30, lam), geom).phi_1):
            return False, f"wrong sign at lambda={lam:.3e}"
    return True, "alpha > 0 gives phi_1 < 0"


def check_pseudoscalar_symmetry(ctx):
    worst = 0.0
    for _ in range(100):
        s1, s2 = (v / np.linalg.norm(v) for v in ctx.rng.normal(size=(2, 3)))
        r = ctx.rng.normal(size=3) * 1e-6
        m_phi = 10 ** ctx.rng.uniform(-3, 1)
        a = potential_energy(PseudoscalarALP(1.0, m_phi, SpinConfig(tuple(s1), tuple(s2))), r)
        b = potential_energy(PseudoscalarALP(1.0, m_phi, SpinConfig(tuple(s2), tuple(s1))), r)
        worst = max(worst, _rel(a, b))
    return worst <= 1e-13, f"max rel dev {worst:.2e}"


def check_phase_scaling(ctx):
    geom = Geometry(50e-6, 10e-6, 1.0)
    geom2 = Geometry(50e-6, 10e-6, 2.0)
    model = Yukawa(1e-27, 1e-4)
    err = _rel(2 * phase_pair(model, geom).phi_1, phase_pair(model, geom2).phi_1)
    return err <= 1e-15, f"rel dev {err:.2e}"


def check_inversion_roundtrip(ctx):
    worst, details = 0.0, []
    for name, preset in sorted(PRESETS.items()):
        request = RunConfig.from_dict(dict(preset, points=50)).to_request()
        curve = run_scan(request)
        for s in curve.samples:
            if not s.valid:
                continue
            phases = phase_pair(_model(request, s), request.geom)
            angle = phases.entangling_angle
            if s.conjugate:
                angle = -angle
            w = ctx.witness(angle, request.target.gamma_tau, 1.0)
            worst = max(worst, _rel(w, request.target.W))
        details.append(name)
    return worst <= 1e-9, f"max rel dev {worst:.2e} over {', '.join(details)}"


def _model(request, sample):
    return build_model(request, sample.abscissa, sample.coupling)


def check_unreachable_boundary(ctx):
    for gt in (0.0, 0.1, 0.5, 2.0):
        for w in np.linspace(-1.0, 1.0, 81):
            target = WitnessTarget(w, gt, 1.0)
            expected = abs(math.exp(-gt) - math.exp(gt) * (1 - 4 * w)) > 2
            try:
                omega_ent_from_witness(target)
                raised = False
            except UnreachableWitnessError:
                raised = True
            if raised != expected:
                return False, f"mismatch at W={w:.3f}, gamma*tau={gt}"
    return True, "error exactly outside the arcsin domain"


def check_interpolation(ctx):
    region = ExclusionRegion("t", "", np.array([1e-6, 1e-5, 1e-3]), np.array([1e4, 1e2, 1e-1]), "range_m", "alpha_g")
    exact = np.array_equal(region.upper_limit(region.abscissa), region.limit)
    x = np.geomspace(1e-6, 1e-3, 40)
    g = 10 ** ctx.rng.uniform(-2, 5, 40)
    before = classify_points(x, g, region)
    after = classify_points(x, 3 * g, region)
    monotone = all(not (b.value == "excluded" and a.value == "allowed") for b, a in zip(before, after))
    return exact and monotone, f"exact at nodes={exact}, monotone={monotone}"


CHECKS = {
    "units-roundtrip": check_units_roundtrip,
    "pt-eigenvalues": check_pt_eigenvalues,
    "negativity": check_negativity,
    "witness-gamma0": check_witness_gamma0,
    "eq8-roundtrip": check_eq8_roundtrip,
    "trace-hermitian": check_trace_hermitian,
    "peres-separable": check_peres_separable,
    "witness-monotone-gamma": check_witness_monotone_gamma,
    "dephasing-limit": check_dephasing_limit,
    "conjugate-spectrum": check_conjugate_spectrum,
    "scalar-yukawa-equivalence": check_scalar_yukawa,
    "newtonian-decomposition": check_newtonian_decomposition,
    "yukawa-phase-sign": check_yukawa_phase_sign,
    "pseudoscalar-spin-symmetry": check_pseudoscalar_symmetry,
    "phase-tau-scaling": check_phase_scaling,
    "inversion-roundtrip": check_inversion_roundtrip,
    "unreachable-boundary": check_unreachable_boundary,
    "bounds-interpolation": check_interpolation,
}


def run_validation(witness=None, seed=SEED):
    """Run every check; ``witness(omega_ent, gamma, tau)`` overrides the closed form."""
    ctx = Context(witness=witness or qcore.witness_closed_form, rng=np.random.default_rng(seed))
    results = []
    for name, check in CHECKS.items():
        try:
            passed, detail = check(ctx)
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
    return results
