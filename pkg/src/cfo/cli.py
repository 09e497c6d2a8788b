"""Command-line entry point: cfo <subcommand> ..."""
from __future__ import annotations

import argparse
import filecmp
import sys
import tempfile
from pathlib import Path
from typing import Optional

from . import benchmarks
from .config import MONOPOLE_ID, ConfigError, RunConfig, load_config
from .core import ObjectiveError, run_cfo
from .landscape import grid_scan
from .report import _fmt, _fmte, write_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_OBJECTIVE = 3
EXIT_BACKEND = 4
EXIT_REPLAY = 5


def _err(msg: str):
    print(f"cfo: error: {msg}", file=sys.stderr)


def _config(args) -> RunConfig:
    return load_config(args.config, args.set)


# --- subcommands -----------------------------------------------------------

def cmd_list(args) -> int:
    for bid in benchmarks.benchmark_ids():
        e = benchmarks.get_entry(bid)
        nd = e.nd_default
        b = benchmarks.default_bounds(bid, nd)
        lo = {x for x, _ in b}
        hi = {x for _, x in b}
        box = f"[{b[0][0]!r},{b[0][1]!r}]^{nd}" if len(lo) == 1 and len(hi) == 1 else \
            "x".join(f"[{x!r},{y!r}]" for x, y in b)
        nd_txt = f"{nd}" if e.fixed_nd else f"{nd}+"
        if not e.implemented:
            print(f"{e.id:<18} nd={nd_txt:<4} bounds={box}  UNIMPLEMENTED")
            continue
        opt = benchmarks.known_optimum(bid, nd)
        opt_txt = "optimum=none" if opt is None else f"optimum={opt.value!r}"
        print(f"{e.id:<18} nd={nd_txt:<4} bounds={box}  {opt_txt}")
    print(f"{MONOPOLE_ID:<18} nd=2    bounds=[0.0,1000.0]x[0.05,10.65]  optimum=none  "
          "(loaded monopole, fitness f1|f2|f3, needs a NEC backend)")
    return EXIT_OK


def run_optimize(cfg: RunConfig, outdir, quiet: bool = True):
    objective = cfg.make_objective()
    space = cfg.space()
    settings = cfg.cfo_settings()
    eff = cfg.effective_lines()
    result = run_cfo(objective, space, settings)
    write_report(outdir, result, space.diag_length, settings.nt, cfg.objective_name(), eff)
    if not quiet:
        coords = " ".join(_fmt(c) for c in result.best_coords)
        print(f"best fitness {result.best_fitness!r} at ({coords}) "
              f"ppd={result.best_ppd} gamma={result.best_gamma:.3f} neval={result.neval_total}")
        print(f"wrote {outdir}")
    return result


def cmd_optimize(args) -> int:
    cfg = _config(args)
    run_optimize(cfg, args.output or cfg.output, quiet=False)
    return EXIT_OK


def cmd_landscape(args) -> int:
    cfg = _config(args)
    if cfg.resolved_nd() != 2:
        raise ConfigError("landscape needs a two-dimensional objective")
    objective = cfg.make_objective()
    scan = grid_scan(objective, cfg.space().bounds(), args.n1, args.n2)
    out = Path(args.output or cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    (out / "landscape.dat").write_text(
        "".join(f"{_fmt(a)} {_fmt(b)} {_fmte(v)}\n" for a, b, v in scan.rows()))
    x1, x2 = scan.best_point
    line = f"argmax {_fmt(x1)} {_fmt(x2)} {_fmte(scan.best_value)}"
    (out / "landscape_argmax.txt").write_text(line + "\n")
    print(line)
    return EXIT_OK


def cmd_deck(args) -> int:
    from .antenna import LoadedDesign, generate_multi_load_deck, generate_single_load_deck
    if args.loads:
        try:
            loads = [float(v) for v in args.loads.split(",")]
        except ValueError:
            raise ConfigError("--loads must be comma-separated numbers") from None
        deck = generate_multi_load_deck(loads, z0=args.z0 if args.z0 is not None else 300.0)
    else:
        if args.r is None or args.h is None:
            raise ConfigError("deck needs --r and --h, or --loads")
        try:
            design = LoadedDesign(args.r, args.h)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        deck = generate_single_load_deck(design, z0=args.z0 if args.z0 is not None else 50.0)
    if args.out:
        Path(args.out).write_text(deck)
    else:
        sys.stdout.write(deck)
    return EXIT_OK


def cmd_parse_nec(args) -> int:
    from .antenna import parse_nec_output
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise ConfigError(str(exc)) from exc
    resp = parse_nec_output(text, z0=args.z0, efficiency=args.efficiency)
    print("# freq_mhz eff_pct gmax_dbi rin xin vswr")
    for row in zip(resp.freqs_mhz, resp.efficiency_pct, resp.gmax_dbi, resp.rin_ohms,
                   resp.xin_ohms, resp.vswr):
        print(" ".join(_fmt(v) for v in row))
    return EXIT_OK


def cmd_vswr_sweep(args) -> int:
    from .antenna import LoadedDesign, z0_sweep
    cfg = _config(args)
    try:
        z0s = [float(v) for v in args.z0.split(",")]
        design = LoadedDesign(args.r, args.h)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    resp, curves = z0_sweep(design, z0s, cfg.make_backend(), efficiency=cfg.efficiency)
    lines = [f"{_fmt(z)} {_fmt(f)} {_fmt(v)}" for z in z0s
             for f, v in zip(resp.freqs_mhz, curves[z])]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def compare_trees(a: Path, b: Path) -> list[str]:
    """Relative paths that differ or exist on one side only."""
    fa = {p.relative_to(a).as_posix() for p in a.rglob("*") if p.is_file()}
    fb = {p.relative_to(b).as_posix() for p in b.rglob("*") if p.is_file()}
    diff = sorted(fa ^ fb)
    for rel in sorted(fa & fb):
        if not filecmp.cmp(a / rel, b / rel, shallow=False):
            diff.append(rel)
    return sorted(diff)


def cmd_replay_check(args) -> int:
    cfg1 = _config(args)
    cfg2 = load_config(args.config, (args.set or []) + (args.second_set or []))
    with tempfile.TemporaryDirectory(prefix="cfo_replay_") as tmp:
        root = Path(args.keep) if args.keep else Path(tmp)
        d1, d2 = root / "run1", root / "run2"
        run_optimize(cfg1, d1)
        run_optimize(cfg2, d2)
        diff = compare_trees(d1, d2)
    if diff:
        print("replay mismatch:")
        for rel in diff:
            print(f"  {rel}")
        return EXIT_REPLAY
    print(f"replay ok: {cfg1.objective_name()}")
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cfo", description="Central force optimization runner")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", "-c", help="key=value config file")
        p.add_argument("--set", "-s", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (repeatable)")

    p = sub.add_parser("list", help="catalog of objectives")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("optimize", help="run CFO and write report files")
    with_config(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("landscape", help="grid scan of a 2-D objective")
    with_config(p)
    p.add_argument("--n1", type=int, default=200)
    p.add_argument("--n2", type=int, default=200)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("deck", help="emit a NEC input deck")
    p.add_argument("--r", type=float, help="load resistance, ohms")
    p.add_argument("--h", type=float, help="load height, m")
    p.add_argument("--loads", help="comma-separated per-segment resistances (14-segment model)")
    p.add_argument("--z0", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("parse-nec", help="tabulate a NEC output file")
    p.add_argument("file")
    p.add_argument("--z0", type=float, default=50.0)
    p.add_argument("--efficiency", choices=["power_budget", "average_gain"], default="power_budget")
    p.set_defaults(func=cmd_parse_nec)

    p = sub.add_parser("vswr-sweep", help="VSWR of one design against several z0")
    with_config(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--z0", required=True, help="comma-separated list")
    p.add_argument("--out")
    p.set_defaults(func=cmd_vswr_sweep)

    p = sub.add_parser("replay-check", help="run optimize twice and byte-compare outputs")
    with_config(p)
    p.add_argument("--second-set", action="append", default=[], metavar="KEY=VALUE",
                   help="override applied to the second run only (negative controls)")
    p.add_argument("--keep", help="keep both output trees under this directory")
    p.set_defaults(func=cmd_replay_check)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    from .antenna.backends import BackendError
    from .antenna.necio import NecParseError
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        _err(str(exc))
        return EXIT_CONFIG
    except BackendError as exc:
        _err(str(exc))
        return EXIT_BACKEND
    except NecParseError as exc:
        _err(str(exc))
        return EXIT_BACKEND
    except ObjectiveError as exc:
        cause = exc.__cause__
        if isinstance(cause, BackendError):
            _err(f"{cause} at ppd={exc.ppd} gamma={exc.gamma} step={exc.step} probe={exc.probe}")
            return EXIT_BACKEND
        _err(str(exc))
        return EXIT_OBJECTIVE


if __name__ == "__main__":
    sys.exit(main())
