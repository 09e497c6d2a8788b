"""Optimize the loaded monopole with a NEC backend and print the best design.

Example:
    python3 scripts/run_monopole.py --fitness f3 --z0 50 --out mono_f3
"""
import argparse
import time

from cfo.antenna import ExternalNecBackend, LoadedDesign, PyNecBackend, make_monopole_objective, z0_sweep
from cfo.antenna.pipeline import LD_MONO_BOUNDS
from cfo.core import CfoSettings, DecisionSpace, run_cfo
from cfo.report import write_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fitness", choices=["f1", "f2", "f3"], default="f3")
    ap.add_argument("--z0", type=float, default=50.0)
    ap.add_argument("--nec", help="NEC-2 executable; PyNEC is used when omitted")
    ap.add_argument("--out", default="mono_out")
    ap.add_argument("--sweep", default="", help="comma-separated z0 values for a VSWR sweep of the best design")
    args = ap.parse_args()

    backend = ExternalNecBackend(args.nec) if args.nec else PyNecBackend()
    objective = make_monopole_objective(args.fitness, args.z0, backend)
    space = DecisionSpace.from_bounds(LD_MONO_BOUNDS)
    settings = CfoSettings.for_problem("LD_MONO", 2)
    t0 = time.perf_counter()
    res = run_cfo(objective, space, settings)
    write_report(args.out, res, space.diag_length, settings.nt, objective.name)
    r, h = res.best_coords
    print(f"best {args.fitness} = {res.best_fitness!r} at R = {r:.6f} ohm, H = {h:.6f} m")
    print(f"neval {res.neval_total}, distinct decks {len(objective.cache)}, "
          f"{time.perf_counter() - t0:.0f} s")

    if args.sweep:
        z0s = [float(v) for v in args.sweep.split(",")]
        resp, curves = z0_sweep(LoadedDesign(r, h), z0s, backend)
        for z in z0s:
            print(f"z0 {z:g}: max VSWR {curves[z].max():.3f}, min VSWR {curves[z].min():.3f}")


if __name__ == "__main__":
    main()
