"""Command-line front end.

Subcommands: find-triads, classify, bound, plan, sweep, eval.
Exit codes: 0 success, 2 usage error, 3 domain error, 4 I/O error.

Every run embeds its resolved configuration in the output header
(suppressed with --no-header); payloads carry no timestamps, so identical
configurations produce byte-identical output regardless of --threads.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import report
from .classify import classify_modes
from .dispersion import (
    LIQUID_PRESETS,
    BasinGeometry,
    DispersionSpec,
    SpectralDomain,
    domain_for,
    eval_frequency,
    WaveVector,
)
from .errors import DomainError, UsageError
from .experiment import geometry_sweep, plan_experiment
from .search import (
    discrepancy_lower_bound,
    find_max_discrepancy_triads,
    find_near_triads,
    find_exact_triads,
)

_CLI_KINDS = {
    "rossby-sphere": "rossby_sphere",
    "capillary": "capillary",
    "gravity-capillary": "gravity_capillary",
    "gravity-tanh": "gravity_tanh",
    "bve-plane": "bve_plane",
}


def _add_dispersion_args(p: argparse.ArgumentParser):
    p.add_argument("--dispersion", choices=sorted(_CLI_KINDS),
                   help="dispersion relation")
    p.add_argument("--liquid", choices=sorted(LIQUID_PRESETS),
                   help="gravity-capillary preset for a named liquid")
    p.add_argument("--mu-nu", type=float, dest="mu_nu",
                   help="surface tension over density (cm^3/s^2)")
    p.add_argument("--g", type=float, default=None,
                   help="gravitational acceleration (cm/s^2, default 981)")
    p.add_argument("--alpha", type=float, help="depth parameter (gravity-tanh)")
    p.add_argument("--lx", type=float, default=None, help="basin side Lx (cm)")
    p.add_argument("--ly", type=float, default=None, help="basin side Ly (cm)")
    p.add_argument("--plane-form", choices=("printed", "squared"),
                   default="printed", help="plane dispersion variant")
    p.add_argument("--config", help="JSON file with a dispersion configuration")


def _add_common_args(p: argparse.ArgumentParser):
    p.add_argument("--T", type=int, default=30, help="spectral truncation")
    p.add_argument("--shape", choices=("square", "triangular"), default=None,
                   help="domain shape (default: triangular on the sphere)")
    p.add_argument("--format", choices=("json", "csv", "table"),
                   default="table", help="output format")
    p.add_argument("--output", help="write to file instead of stdout")
    p.add_argument("--no-header", action="store_true",
                   help="suppress the configuration header")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for searches (same output for any N)")


def build_spec(args) -> DispersionSpec:
    if args.config:
        if args.dispersion or args.liquid:
            raise UsageError("--config conflicts with --dispersion/--liquid")
        with open(args.config) as fh:
            return DispersionSpec.from_config(json.load(fh))
    kind = None
    mu = args.mu_nu
    if args.liquid:
        if mu is not None:
            raise UsageError("--liquid conflicts with --mu-nu")
        kind = "gravity_capillary"
        mu = LIQUID_PRESETS[args.liquid]
    if args.dispersion:
        cli_kind = _CLI_KINDS[args.dispersion]
        if kind is not None and cli_kind != kind:
            raise UsageError("--liquid implies --dispersion gravity-capillary")
        kind = cli_kind
    if kind is None:
        raise UsageError("a dispersion must be selected "
                         "(--dispersion, --liquid or --config)")
    lx = args.lx if args.lx is not None else 1.0
    ly = args.ly if args.ly is not None else 1.0
    if kind == "rossby_sphere":
        basin = BasinGeometry("sphere")
    elif lx == 1.0 and ly == 1.0:
        basin = BasinGeometry("unit_square")
    else:
        basin = BasinGeometry("rectangle", lx=lx, ly=ly)
    return DispersionSpec(kind=kind,
                          g=args.g if args.g is not None else 981.0,
                          mu_over_nu=mu, alpha=args.alpha, basin=basin,
                          plane_form=args.plane_form)


def build_domain(args, spec) -> SpectralDomain:
    if args.shape:
        return SpectralDomain(args.T, args.shape)
    return domain_for(spec, args.T)


def _emit(args, header: dict, payload, text: str | None, csv_text: str | None):
    if args.format == "json":
        out = report.to_json(payload, None if args.no_header else header)
    elif args.format == "csv":
        if csv_text is None:
            raise UsageError(f"csv output is not defined for this command")
        out = csv_text
        if not args.no_header:
            hdr = "".join(f"# {k}={json.dumps(v, sort_keys=True)}\n"
                          for k, v in header.items())
            out = hdr + out
    else:
        out = text if text is not None else report.to_json(payload)
        if not args.no_header:
            hdr = "".join(f"# {k}={json.dumps(v, sort_keys=True)}\n"
                          for k, v in header.items())
            out = hdr + out
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _header(args, spec, extra: dict) -> dict:
    h = {"command": args.command, "dispersion": spec.to_config()}
    h.update(extra)
    return h


# -- command handlers --------------------------------------------------------

def cmd_find_triads(args):
    spec = build_spec(args)
    domain = build_domain(args, spec)
    if args.d_max is not None and args.d_min is not None:
        raise UsageError("--d-max and --d-min are mutually exclusive")
    if args.exact:
        if args.d_max is not None or args.d_min is not None:
            raise UsageError("--exact conflicts with --d-max/--d-min")
        triads = find_exact_triads(spec, domain)
        mode = {"mode": "exact"}
    elif args.d_min is not None:
        triads = find_max_discrepancy_triads(spec, domain, args.d_min,
                                             patterns=args.patterns,
                                             closure=args.closure,
                                             workers=args.threads)
        mode = {"mode": "max-discrepancy", "d_min": args.d_min}
    else:
        d_max = args.d_max if args.d_max is not None else 1e-6
        triads = find_near_triads(spec, domain, d_max,
                                  patterns=args.patterns,
                                  closure=args.closure, workers=args.threads)
        mode = {"mode": "near", "d_max": d_max}
    header = _header(args, spec, {
        "domain": {"T": domain.truncation, "shape": domain.shape}, **mode,
        "patterns": args.patterns, "closure": args.closure,
    })
    _emit(args, header, report.triads_to_records(triads),
          report.triads_to_table(triads), report.triads_to_csv(triads))


def cmd_classify(args):
    spec = build_spec(args)
    domain = build_domain(args, spec)
    part = classify_modes(spec, domain, args.omega_max,
                          patterns=args.patterns, closure=args.closure,
                          n_selection=args.n_selection,
                          bridge_mode=args.bridge_mode)
    header = _header(args, spec, {
        "domain": {"T": domain.truncation, "shape": domain.shape},
        "omega_max": args.omega_max, "patterns": args.patterns,
        "closure": args.closure, "n_selection": args.n_selection,
        "bridge_mode": args.bridge_mode,
    })
    _emit(args, header, report.partition_to_records(part),
          report.partition_to_table(part), report.partition_to_csv(part))


def cmd_bound(args):
    spec = build_spec(args)
    domain = build_domain(args, spec)
    rep = discrepancy_lower_bound(spec, domain, workers=args.threads)
    header = _header(args, spec, {
        "domain": {"T": domain.truncation, "shape": domain.shape}})
    rec = report.bound_to_record(rep)
    _emit(args, header, rec, report.to_json(rec), None)


def cmd_plan(args):
    spec = build_spec(args)
    domain = build_domain(args, spec)
    plan = plan_experiment(spec, domain, args.d_max, args.d_min, args.epsilon,
                           workers=args.threads)
    header = _header(args, spec, {
        "domain": {"T": domain.truncation, "shape": domain.shape},
        "d_max": args.d_max, "d_min": args.d_min, "epsilon": args.epsilon,
    })
    _emit(args, header, report.plan_to_record(plan),
          report.plan_to_table(plan), None)


def cmd_sweep(args):
    spec = build_spec(args)
    domain = build_domain(args, spec)
    try:
        lxs = [float(v) for v in args.lx_values.split(",") if v]
        lys = [float(v) for v in args.ly_values.split(",") if v]
    except ValueError as exc:
        raise UsageError(f"bad grid value: {exc}") from exc
    rep = geometry_sweep(spec, domain, lxs, lys, args.d_max, args.omega_max,
                         workers=args.threads)
    header = _header(args, spec, {
        "domain": {"T": domain.truncation, "shape": domain.shape},
        "d_max": args.d_max, "omega_max": args.omega_max,
        "lx_values": lxs, "ly_values": lys,
    })
    _emit(args, header, report.sweep_to_record(rep),
          report.sweep_to_table(rep), None)


def cmd_eval(args):
    spec = build_spec(args)
    freq = eval_frequency(spec, WaveVector(args.m, args.n))
    if isinstance(freq.omega, Fraction):
        text = f"{freq.omega.numerator}/{freq.omega.denominator}\n"
        payload = {"m": args.m, "n": args.n,
                   "omega": report._num(freq.omega),
                   "omega_float": float(freq.omega), "hz": freq.hz}
    else:
        text = f"{freq.omega!r}\n"
        payload = {"m": args.m, "n": args.n, "omega": freq.omega,
                   "hz": freq.hz}
    header = _header(args, spec, {"m": args.m, "n": args.n})
    _emit(args, header, payload, text, None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wavetriads",
        description="Exact and approximate resonant wave triads over finite "
                    "integer spectral domains")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find-triads", help="enumerate resonant triads")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.add_argument("--d-max", type=float, dest="d_max", default=None,
                   help="near-resonance ceiling on d_ratio (default 1e-6)")
    p.add_argument("--d-min", type=float, dest="d_min", default=None,
                   help="max-discrepancy floor on d_ratio")
    p.add_argument("--exact", action="store_true",
                   help="exact rational search (spherical dispersion only)")
    p.add_argument("--patterns", choices=("sum", "all"), default="sum")
    p.add_argument("--closure", choices=("auto", "both", "zonal", "box"),
                   default="auto")
    p.set_defaults(func=cmd_find_triads)

    p = sub.add_parser("classify", help="partition modes into classes")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.add_argument("--omega-max", type=float, dest="omega_max", required=True,
                   help="approximate-resonance threshold on |Omega|")
    p.add_argument("--patterns", choices=("sum", "all"), default="sum")
    p.add_argument("--closure", choices=("auto", "both", "zonal", "box"),
                   default="auto")
    p.add_argument("--n-selection", dest="n_selection",
                   choices=("none", "parity", "triangle", "both"),
                   default="none")
    p.add_argument("--bridge-mode", dest="bridge_mode",
                   choices=("per_pair", "per_triad"), default="per_pair")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bound", help="discrepancy lower bounds")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("plan", help="experiment plan (frequencies, amplitudes)")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.add_argument("--d-max", type=float, dest="d_max", default=1e-6)
    p.add_argument("--d-min", type=float, dest="d_min", default=0.1)
    p.add_argument("--epsilon", type=float, default=0.1,
                   help="wave steepness for amplitude selection")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("sweep", help="basin geometry sweep")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.add_argument("--lx-values", dest="lx_values", required=True,
                   help="comma-separated Lx grid")
    p.add_argument("--ly-values", dest="ly_values", required=True,
                   help="comma-separated Ly grid")
    p.add_argument("--d-max", type=float, dest="d_max", default=1e-6)
    p.add_argument("--omega-max", type=float, dest="omega_max", default=0.3)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("eval", help="evaluate the dispersion at one mode")
    _add_dispersion_args(p)
    _add_common_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_eval)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
