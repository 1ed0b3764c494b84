"""
Command-line entry point.

Subcommands::

    dsscat optimize --order 2 --q + --alpha-scs 1.0
    dsscat table 1 --out-dir results/
    dsscat simulate circuit.json
    dsscat wigner dsscs --alpha-scs 1.4 --q + --r -0.40712 --disp 0,-1.32164 --out w.txt
    dsscat verify --json

Exit codes: 0 success, 1 usage or parse error, 2 numeric or tolerance failure.
Angles take radians or ``+``/``-`` for the even/odd cat; complex values take
``re,im`` (write ``--disp=-1,2`` when the real part is negative).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import CircuitSpec, coeffs_from_circuit, run_circuit
from .fock import TruncationWarning
from .optimizer import OptConfig, maximize
from .states import EVEN, ODD, HalfFinished, TargetCat, dsscs, scs
from .tables import reproduce_table
from .verify import run_checks
from .wigner import emit_grid, w_dsscs, w_halffinished, w_scs

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2

DEFAULTS = {"dim": 100, "restarts": 16, "seed": 20110, "tolerances": {"table": 2e-3}, "output_dir": "."}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str) -> float:
    """``+`` / ``-`` for +-pi/4, otherwise radians."""
    t = text.strip()
    if t in ("+", "even"):
        return EVEN
    if t in ("-", "odd"):
        return ODD
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def parse_complex(text: str) -> complex:
    """``re,im`` or a single real number."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im, got {text!r}")


def parse_range(text: str) -> tuple[float, float]:
    z = parse_complex(text)
    if not z.real < z.imag:
        raise argparse.ArgumentTypeError(f"range must be lo,hi with lo < hi, got {text!r}")
    return z.real, z.imag


def load_config(path) -> dict:
    """Read a JSON run configuration; unknown keys are rejected."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(doc) - {"dim", "restarts", "seed", "seed_list", "tolerances", "output_dir"}
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if "seed_list" in doc:
        seeds = doc.pop("seed_list")
        if not seeds:
            raise UsageError("seed_list must not be empty")
        doc.setdefault("seed", int(seeds[0]))
    return doc


def resolve(args) -> dict:
    """Defaults, then config file, then explicit flags."""
    cfg = json.loads(json.dumps(DEFAULTS))
    if args.config:
        file_cfg = load_config(args.config)
        tol = file_cfg.pop("tolerances", {})
        cfg.update(file_cfg)
        cfg["tolerances"].update(tol)
    for key in ("dim", "restarts", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if getattr(args, "out_dir", None) is not None:
        cfg["output_dir"] = args.out_dir
    if getattr(args, "tol", None) is not None:
        cfg["tolerances"]["table"] = args.tol
    if cfg["dim"] < 8:
        raise UsageError("dim must be >= 8")
    if cfg["restarts"] < 1:
        raise UsageError("restarts must be >= 1")
    return cfg


def _opt_config(cfg, **kw) -> OptConfig:
    return OptConfig(dim=cfg["dim"], restarts=cfg["restarts"], seed=cfg["seed"], **kw)


def cmd_optimize(args) -> int:
    cfg = resolve(args)
    config = _opt_config(cfg, restricted=not args.full, fixed_r=args.fixed_r)
    res = maximize(args.order, args.q, args.alpha_scs, config)
    print(json.dumps(res.to_dict(), indent=1))
    return EXIT_OK if res.converged else EXIT_NUMERIC


def cmd_table(args) -> int:
    cfg = resolve(args)
    report = reproduce_table(args.which, _opt_config(cfg))
    out = Path(cfg["output_dir"])
    out.mkdir(parents=True, exist_ok=True)
    (out / f"table{args.which}.csv").write_text(report.to_csv())
    (out / f"table{args.which}.json").write_text(report.to_json())
    for note in report.notes:
        print(f"note: {note}")
    tol = cfg["tolerances"]["table"]
    print(f"table {args.which}: {len(report.rows)} rows, max |dF| = {report.max_abs_dF:.3e} (tol {tol:g})")
    return EXIT_OK if report.max_abs_dF <= tol else EXIT_NUMERIC


def cmd_simulate(args) -> int:
    try:
        spec = CircuitSpec.load(args.circuit)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad circuit file {args.circuit}: {exc}") from None
    if args.dim is not None:
        spec = replace(spec, dim=args.dim)
    out = run_circuit(spec)
    probs = np.abs(out.amps) ** 2
    last = int(np.searchsorted(np.cumsum(probs), 1.0 - args.cutoff)) + 1
    print("# n re im")
    for n in range(min(last, out.dim)):
        z = out.amps[n]
        print(f"{n} {z.real:.12e} {z.imag:.12e}")
    print(f"# scale {out.scale:.12e}")
    return EXIT_OK


def _wigner_source(args, dim):
    """Closed form (or the ket for the numeric oracle) named by the wigner subcommand."""
    kind = args.kind
    if kind in ("scs", "dsscs"):
        if args.alpha_scs is None:
            raise UsageError(f"wigner {kind} needs --alpha-scs")
        target = TargetCat(args.alpha_scs, args.q, args.disp if kind == "dsscs" else 0j,
                           args.r if kind == "dsscs" else 0.0)
        if args.numeric:
            return dsscs(target, dim) if kind == "dsscs" else scs(target.q, target.alpha_scs, dim)
        if kind == "scs":
            return lambda x, p: w_scs(target.q, target.alpha_scs, x, p)
        return lambda x, p: w_dsscs(target, x, p)
    if kind == "circuit":
        if args.circuit is None:
            raise UsageError("wigner circuit needs --circuit FILE")
        try:
            spec = CircuitSpec.load(args.circuit)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad circuit file {args.circuit}: {exc}") from None
        kinds = [type(s).__name__ for s in spec.steps]
        if not args.numeric and kinds == ["AddPhoton", "Displace", "AddPhoton"]:
            a1 = spec.steps[1].beta
            h = coeffs_from_circuit(spec.seed, a1)
            return lambda x, p: w_halffinished(h, spec.seed + a1, x, p)
        if not args.numeric and kinds == ["AddPhoton"] and spec.seed != 0:
            h = HalfFinished(1, 1 / spec.seed.conjugate())
            return lambda x, p: w_halffinished(h, spec.seed, x, p)
        return run_circuit(spec)
    if kind == "file":
        if args.state is None:
            raise UsageError("wigner file needs --state FILE (.npy ket or density matrix)")
        try:
            return np.load(args.state)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read state {args.state}: {exc}") from None
    raise UsageError(f"unknown state kind {kind!r}")


def cmd_wigner(args) -> int:
    cfg = resolve(args)
    source = _wigner_source(args, cfg["dim"])
    out = Path(args.out) if args.out else Path(cfg["output_dir"]) / f"wigner_{args.kind}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    grid = emit_grid(source, out, args.x_range, args.p_range, args.nx, args.np, args.format)
    w00 = None
    if grid.x_min <= 0 <= grid.x_max and grid.p_min <= 0 <= grid.p_max:
        i, j = np.argmin(np.abs(grid.xs)), np.argmin(np.abs(grid.ps))
        w00 = grid.values[j, i]
    print(f"wrote {out}: {grid.nx}x{grid.np} grid, norm {grid.norm:.6f}"
          + (f", W near origin {w00:.6f}" if w00 is not None else ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = resolve(args)
    report = run_checks(cfg["dim"], args.only)
    if args.json:
        print(report.to_json())
    else:
        print("\n".join(report.lines()))
        if not report.passed:
            print("failed: " + ", ".join(report.failures))
    return EXIT_OK if report.passed else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dsscat", description="Displaced squeezed cat states from photon-addition circuits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run configuration (flags override it)")
    common.add_argument("--dim", type=int, help="Fock truncation (default 100)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("optimize", parents=[common], help="maximize the fidelity for one target")
    p.add_argument("--order", type=int, choices=(1, 2), required=True)
    p.add_argument("--q", type=parse_angle, required=True, help="rotation angle, or + / -")
    p.add_argument("--alpha-scs", type=float, required=True)
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--fixed-r", type=float, help="pin the squeeze parameter")
    p.add_argument("--full", action="store_true", help="search complex amplitudes, not just the imaginary axis")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("table", parents=[common], help="reproduce a published table")
    p.add_argument("which", type=int, choices=(1, 2, 3))
    p.add_argument("--out-dir")
    p.add_argument("--tol", type=float, help="pass threshold on max |dF| (default 2e-3)")
    p.add_argument("--restarts", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="run a circuit file and dump the output amplitudes")
    p.add_argument("circuit", help="CircuitSpec JSON file")
    p.add_argument("--dim", type=int, help="override the file's truncation")
    p.add_argument("--cutoff", type=float, default=1e-10, help="stop once 1 - cutoff of the mass is printed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("wigner", parents=[common], help="write a Wigner-function grid")
    p.add_argument("kind", choices=("scs", "dsscs", "circuit", "file"))
    p.add_argument("--alpha-scs", type=float)
    p.add_argument("--q", type=parse_angle, default=EVEN)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--disp", type=parse_complex, default=0j)
    p.add_argument("--circuit", help="CircuitSpec JSON for kind=circuit")
    p.add_argument("--state", help=".npy ket or density matrix for kind=file")
    p.add_argument("--numeric", action="store_true", help="use the displaced-parity oracle")
    p.add_argument("--x-range", type=parse_range, default=(-6.0, 6.0))
    p.add_argument("--p-range", type=parse_range, default=(-6.0, 6.0))
    p.add_argument("--nx", type=int, default=301)
    p.add_argument("--np", type=int, default=301)
    p.add_argument("--out")
    p.add_argument("--out-dir")
    p.add_argument("--format", choices=("txt", "json"))
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("--json", action="store_true")
    p.add_argument("--only", nargs="+", help="run only the named checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "nx", 2) < 2 or getattr(args, "np", 2) < 2:
        parser.error("grid resolution must be >= 2 per axis")
    if not hasattr(args, "config"):
        args.config = None
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            return args.func(args)
    except UsageError as exc:
        print(f"dsscat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as exc:
        print(f"dsscat: numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
