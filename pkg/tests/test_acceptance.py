"""Acceptance criteria, one test per criterion.

Each test prints ``ACCEPTANCE <n> PASS|FAIL <name>: <detail>``; the lines
are repeated in the pytest terminal summary. Run this file directly for the
table alone: ``python tests/test_acceptance.py``.
"""

import json
import math
import time

import numpy as np
import pytest

from alpwitness import cli, qcore
from alpwitness.bounds import load_exclusion
from alpwitness.config import PRESETS, RunConfig, preset_config
from alpwitness.errors import (
    DegenerateGeometryError,
    ExclusionFormatError,
    SignInconsistentWitnessError,
    UnreachableWitnessError,
)
from alpwitness.inversion import (
    WitnessTarget,
    alpha_from_witness,
    g_s_from_witness,
    omega_ent_tau_from_witness,
    pseudoscalar_energy_difference,
    yukawa_plateau_alpha,
)
from alpwitness.potentials import Geometry, ModifiedNewtonian, ScalarALP, SpinConfig, Yukawa, phase_pair
from alpwitness.qcore import PhaseSet
from alpwitness.scan import forward_witness, round_trip_check, run_scan
from alpwitness.units import G, HBAR_C, mass_ev_to_range_m, range_m_to_mass_ev

def record(record_property, n, name, ok, detail):
    line = f"ACCEPTANCE {n} {'PASS' if ok else 'FAIL'} {name}: {detail}"
    record_property("acceptance", line)
    print(line)
    assert ok, line


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def _random_geometry(rng):
    d = 10 ** rng.uniform(-6.5, -4)
    return Geometry(d=d, delta_x=d * 10 ** rng.uniform(-1, 0.5), tau=10 ** rng.uniform(-6, 0))


def test_1_closed_form_matches_numeric(record_property):
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = {"eigenvalues": 0.0, "negativity": 0.0, "witness": 0.0}
    for a in rng.uniform(-math.pi, 0.0, 1000):
        ph = PhaseSet(0.0, a, a)
        numeric = qcore.pt_spectrum(ph, 0.0, 1.0)
        closed = np.sort(qcore.pt_eigenvalues_closed_form(ph))
        neg = abs(numeric[numeric < 0].sum())
        worst["eigenvalues"] = max(worst["eigenvalues"], float(np.max(np.abs(closed - numeric))))
        worst["negativity"] = max(worst["negativity"], abs(qcore.negativity_closed_form(ph) - neg))
        w = qcore.witness_closed_form(a, 0.0, 1.0)
        worst["witness"] = max(worst["witness"], abs(w - numeric[0]), abs(w - 0.5 * math.sin(a)))
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-12 and elapsed < 1.0
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f} s"
    record(record_property, 1, "closed form vs numeric PT spectrum", ok, detail)


def test_2_inversion_round_trip(record_property):
    start = time.perf_counter()
    worst, checked, models = 0.0, 0, set()
    for name, preset in sorted(PRESETS.items()):
        request = RunConfig.from_dict(dict(preset, points=50)).to_request()
        curve = run_scan(request)
        for s in curve.samples:
            if s.valid:
                w = forward_witness(request, s.abscissa, s.coupling, s.conjugate)
                worst = max(worst, _rel(w, request.target.W))
                checked += 1
        models.add(request.model)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and len(models) == 4 and checked > 0 and elapsed < 10
    record(record_property, 2, "inversion round trip", ok, f"max rel {worst:.1e} over {checked} points, {len(models)} models, {elapsed:.2f} s")


def test_3_scalar_equals_yukawa(record_property):
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        geom = _random_geometry(rng)
        g_s = 10 ** rng.uniform(-12, 0)
        # range tied to the geometry so the exponentials stay representable
        m_phi = range_m_to_mass_ev(geom.d * 10 ** rng.uniform(-0.5, 3))
        scalar = phase_pair(ScalarALP(g_s, m_phi), geom)
        # attractive sign and hbar c restore SI units
        yuk = phase_pair(Yukawa(-(g_s**2) / (4 * math.pi) * HBAR_C, mass_ev_to_range_m(m_phi)), geom)
        worst = max(worst, _rel(scalar.phi_1, yuk.phi_1), _rel(scalar.phi_global, yuk.phi_global))
    record(record_property, 3, "scalar ALP equals Yukawa", worst <= 1e-12, f"max rel {worst:.1e} over 100 tuples")


def test_4_newtonian_decomposition(record_property):
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        geom = _random_geometry(rng)
        m = 10 ** rng.uniform(-16, -12)
        lam = geom.d * 10 ** rng.uniform(0, 3)
        alpha_g = rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-1, 4)
        full = phase_pair(ModifiedNewtonian(alpha_g, lam, m), geom).phi_1
        bare = phase_pair(ModifiedNewtonian(0.0, lam, m), geom).phi_1
        yuk = phase_pair(Yukawa(G * m**2 * alpha_g, lam), geom).phi_1
        worst = max(worst, abs(full - bare - yuk) / abs(yuk))
    record(record_property, 4, "Newtonian decomposition", worst <= 1e-12, f"max rel {worst:.1e} over 100 tuples")


def test_5_decoherence_monotonicity(record_property):
    gammas = np.linspace(0.0, 1.0, 201)
    rising = all(
        np.all(np.diff([qcore.witness_closed_form(a, g, 1.0) for g in gammas]) > 0)
        for a in np.linspace(-3.1, -0.01, 60)
    )
    curves = {}
    for gamma in (1e-3, 1e-1):
        request = RunConfig.from_dict(dict(PRESETS["fig2"], gamma=gamma)).to_request()
        curves[gamma] = run_scan(request).coupling
    above = bool(np.all(curves[1e-1] > curves[1e-3]))
    record(record_property, 5, "decoherence monotonicity", rising and above and len(curves[1e-1]) == 200,
           f"W rising in gamma*tau={rising}, fig2 gamma=0.1 above gamma=0.001 at 200/200 points={above}")


def test_6_dephasing_gap_shrinks(record_property):
    angles = np.linspace(-1.0, 0.0, 201)
    gaps = []
    for gt in (0.01, 0.05, 0.1, 0.5):
        gap = max(abs(qcore.witness_from_angle(a, gt) - qcore.pt_spectrum(PhaseSet(0.0, a, a), gt, 1.0)[0]) for a in angles)
        gaps.append(gap)
    ok = all(x < y for x, y in zip(gaps, gaps[1:]))
    detail = ", ".join(f"gamma*tau={gt}: {g:.3e}" for gt, g in zip((0.01, 0.05, 0.1, 0.5), gaps))
    record(record_property, 6, "dephasing gap shrinks as gamma*tau -> 0", ok, detail)


def test_7_large_range_plateau(record_property):
    geom = Geometry(50e-6, 10e-6, 1.0)
    target = WitnessTarget(-0.1, 0.1, 1.0)
    alpha = alpha_from_witness(target, 1e2 * geom.r_cross, geom).value
    plateau = yukawa_plateau_alpha(target, geom)
    dev = abs(alpha - plateau) / abs(plateau)
    record(record_property, 7, "large-lambda plateau", dev <= 1e-3, f"rel deviation {dev:.2e} at lambda = 100 r_cross")


def test_8_error_paths(tmp_path, record_property):
    seen = []
    with pytest.raises(UnreachableWitnessError):
        omega_ent_tau_from_witness(WitnessTarget(-0.6, 0.0, 1.0))
    seen.append("unreachable")
    ion = Geometry.ion_trap(500e-9, 1e-6, 1e-27, 1e5)
    with pytest.raises(SignInconsistentWitnessError):
        g_s_from_witness(WitnessTarget(-0.1, 1e3, 1e-6), 0.1, ion)
    seen.append("sign-inconsistent")
    with pytest.raises(DegenerateGeometryError):
        alpha_from_witness(WitnessTarget(-0.1, 0.1, 1.0), 1e-9, Geometry(50e-6, 10e-6, 1.0))
    with pytest.raises(DegenerateGeometryError):
        pseudoscalar_energy_difference(0.01, SpinConfig((1.0, 0, 0), (0, 0, 1.0)), ion)
    seen.append("degenerate")
    bad = tmp_path / "bad.txt"
    bad.write_text("# abscissa: range_m\n# coupling: alpha_g\n1e-6, x\n")
    with pytest.raises(ExclusionFormatError, match="line 3"):
        load_exclusion(bad)
    seen.append("malformed-exclusion")
    record(record_property, 8, "error paths", len(seen) == 4, ", ".join(seen))


@pytest.mark.parametrize("preset", ["fig2", "fig3", "fig4-near", "fig4-far", "fig5"])
def test_9_preset_reproduction(preset, tmp_path, capsys, record_property):
    start = time.perf_counter()
    out = tmp_path / f"{preset}.json"
    code = cli.main(["scan", "--preset", preset, "--format", "json", "--out", str(out)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    doc = json.loads(out.read_text())
    x = [s["abscissa"] for s in doc["samples"]]
    flagged = all(isinstance(s["valid"], bool) and "error_kind" in s for s in doc["samples"])
    request = preset_config(preset).to_request()
    report = round_trip_check(run_scan(request), request)
    ok = (
        code == 0
        and len(x) == 200
        and all(a < b for a, b in zip(x, x[1:]))
        and flagged
        and report.max_error <= 1e-9
        and not report.empty
        and elapsed < 30
    )
    valid = sum(s["valid"] for s in doc["samples"])
    record(record_property, f"9[{preset}]", "preset reproduction", ok,
           f"exit {code}, {len(x)} samples ({valid} valid), round trip {report.max_error:.1e}, {elapsed:.2f} s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
