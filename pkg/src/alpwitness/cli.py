"""Command-line front end.

Subcommands::

    alpwitness scan      --preset fig2 --out fig2.csv
    alpwitness witness   --phi1 -0.3 --phi2 -0.3 --gamma 0.1
    alpwitness classify  curve.csv --exclusion bound.txt
    alpwitness validate

Exit status: 0 success, 1 configuration or input error, 2 computation error,
3 validation failure.
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .bounds import classify_against, load_exclusion, summarize
from .config import PRESET_ALIASES, PRESETS, RunConfig, preset_config
from .curve_io import curve_to_csv, curve_to_json, format_float, load_curve
from .errors import ConfigError, DomainError, ExclusionFormatError, KindMismatchError, WitnessError
from .qcore import PhaseSet, evaluate_witness
from .scan import build_model, round_trip_check, run_scan
from .potentials import phase_pair
from .validate import run_validation

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_VALIDATION = 0, 1, 2, 3
ROUND_TRIP_TOL = 1e-9

# CLI flag -> RunConfig field, for flags that override the loaded config
_OVERRIDES = (
    "model", "d", "delta_x", "tau", "witness", "gamma", "grid_min", "grid_max",
    "points", "mass", "ion_mass", "trap_omega", "format", "out",
)


def _add_config_args(p):
    p.add_argument("--config", help="YAML or JSON run configuration")
    p.add_argument("--preset", help=f"named parameter set: {', '.join(sorted(PRESETS) + sorted(PRESET_ALIASES))}")
    p.add_argument("--model", help="yukawa, modified_newtonian, scalar_alp or pseudoscalar_alp")
    p.add_argument("--d", type=float, help="trap separation (m)")
    p.add_argument("--delta-x", dest="delta_x", type=float, help="superposition width (m)")
    p.add_argument("--tau", type=float, help="interaction time (s)")
    p.add_argument("--witness", type=float, help="target witness value")
    p.add_argument("--gamma", type=float, help="dephasing rate (Hz)")
    p.add_argument("--mass", type=float, help="particle mass (kg), modified_newtonian only")
    p.add_argument("--ion-mass", dest="ion_mass", type=float, help="ion mass (kg) when delta_x is derived")
    p.add_argument("--trap-omega", dest="trap_omega", type=float, help="trap angular frequency (rad/s)")
    p.add_argument("--allow-conjugate", action="store_true", default=None,
                   help="accept the conjugate-phase solution for attractive potentials")


class _Parser(argparse.ArgumentParser):
    # bad flags are input errors, not argparse's default status 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="alpwitness", description="Witness-based coupling constraints")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="invert the target witness over a grid")
    _add_config_args(scan)
    scan.add_argument("--points", type=int)
    scan.add_argument("--grid-min", dest="grid_min", type=float)
    scan.add_argument("--grid-max", dest="grid_max", type=float)
    scan.add_argument("--out", help="output path (default: stdout)")
    scan.add_argument("--format", choices=("csv", "json"))
    scan.add_argument("--exclusion", action="append", default=[], help="exclusion file (repeatable)")

    wit = sub.add_parser("witness", help="evaluate the witness for given phases or a model point")
    _add_config_args(wit)
    wit.add_argument("--phi1", type=float, help="branch phase phi_1 (rad)")
    wit.add_argument("--phi2", type=float, help="branch phase phi_2 (rad)")
    wit.add_argument("--phi", type=float, default=0.0, help="global phase (rad)")
    wit.add_argument("--abscissa", type=float, help="range (m) or boson mass (eV)")
    wit.add_argument("--coupling", type=float, help="model coupling")

    cls = sub.add_parser("classify", help="classify a curve file against exclusion regions")
    cls.add_argument("curve", help="CSV or JSON curve written by 'scan'")
    cls.add_argument("--exclusion", action="append", default=[], help="exclusion file (repeatable)")
    cls.add_argument("--out", help="classification CSV path (default: stdout)")

    sub.add_parser("validate", help="run the property suite")
    return parser


def resolve_config(args):
    """Preset or config file first, then explicit flags on top."""
    if args.config and args.preset:
        raise ConfigError("give --config or --preset, not both")
    if args.preset:
        cfg = preset_config(args.preset)
    elif args.config:
        cfg = RunConfig.from_file(args.config)
    else:
        cfg = RunConfig()
    data = cfg.to_dict()
    for name in _OVERRIDES:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if getattr(args, "allow_conjugate", None):
        data["allow_conjugate"] = True
    exclusions = getattr(args, "exclusion", None)
    if exclusions:
        data["exclusions"] = list(data["exclusions"]) + list(exclusions)
    return RunConfig.from_dict(data)


def _emit(text, out):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


def cmd_scan(args):
    cfg = resolve_config(args)
    request = cfg.to_request()
    regions = [load_exclusion(p) for p in cfg.exclusions]
    curve = run_scan(request)
    report = round_trip_check(curve, request)
    labels = classify_against(curve, regions) if regions else None
    config_dict = cfg.to_dict()
    if cfg.format == "json":
        text = curve_to_json(curve, config_dict, report, labels)
    else:
        text = curve_to_csv(curve, config_dict)
    _emit(text, cfg.out)
    valid = int(curve.valid.sum())
    print(
        f"{len(curve)} samples, {valid} valid, round-trip max error {report.max_error:.3e}",
        file=sys.stderr,
    )
    if labels is not None:
        print(_summary_line(summarize(labels)), file=sys.stderr)
    if report.max_error > ROUND_TRIP_TOL:
        print(f"round trip failed: {report.max_error:.3e} > {ROUND_TRIP_TOL:.0e}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_witness(args):
    cfg = resolve_config(args)
    if args.phi1 is not None or args.phi2 is not None:
        if args.phi1 is None or args.phi2 is None:
            raise ConfigError("give both --phi1 and --phi2")
        phases = PhaseSet(args.phi, args.phi1, args.phi2)
    elif args.abscissa is not None and args.coupling is not None:
        request = cfg.to_request()
        phases = phase_pair(build_model(request, args.abscissa, args.coupling), request.geom)
    else:
        raise ConfigError("give --phi1/--phi2, or --abscissa and --coupling with a model")
    ev = evaluate_witness(phases, cfg.gamma, cfg.tau)
    print(f"closed_form_W: {format_float(ev.closed_form_W)}")
    print(f"numeric_min_pt_eigenvalue: {format_float(ev.numeric_min_pt_eigenvalue)}")
    print(f"negativity: {format_float(ev.negativity)}")
    print(f"gamma_tau: {format_float(ev.gamma_tau)}")
    print(f"omega_ent_tau: {format_float(ev.omega_ent_tau)}")
    print(f"valid_approximation: {str(ev.valid_approximation).lower()}")
    return EXIT_OK


def _summary_line(counts):
    return ", ".join(f"{k}: {v}" for k, v in counts.items())


def cmd_classify(args):
    curve = load_curve(args.curve)
    regions = [load_exclusion(p) for p in args.exclusion]
    labels = classify_against(curve, regions)
    rows = ["abscissa,coupling,classification"]
    rows += [f"{format_float(x)},{format_float(g)},{c.value}" for x, g, c in zip(curve.abscissa, curve.coupling, labels)]
    _emit("\n".join(rows) + "\n", args.out)
    print(_summary_line(summarize(labels)), file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_validate(args, witness=None):
    results = run_validation(witness=witness)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "witness": cmd_witness, "classify": cmd_classify, "validate": cmd_validate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ExclusionFormatError, KindMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
