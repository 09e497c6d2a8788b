"""Run CFO on catalog entries and tabulate best fitness against the stated optimum.

    python3 scripts/benchmark_sweep.py                 # every implemented entry, nd <= 10
    python3 scripts/benchmark_sweep.py F18 HIMMELBLAU --nd 2
"""
import argparse
import time

from cfo import benchmarks
from cfo.core import CfoSettings, DecisionSpace, run_cfo


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("ids", nargs="*")
    ap.add_argument("--nd", type=int, default=10, help="dimension for variable-dimension entries")
    ap.add_argument("--nt", type=int)
    args = ap.parse_args()

    ids = args.ids or [b for b in benchmarks.benchmark_ids() if benchmarks.get_entry(b).implemented]
    print(f"{'id':<18} {'nd':>3} {'best':>15} {'stated':>15} {'neval':>7} {'secs':>6}")
    for bid in ids:
        e = benchmarks.get_entry(bid)
        nd = e.nd_default if e.fixed_nd else max(args.nd, e.min_nd)
        overrides = {} if args.nt is None else {"nt": args.nt}
        settings = CfoSettings.for_problem(bid, nd, **overrides)
        space = DecisionSpace.from_bounds(benchmarks.default_bounds(bid, nd))
        t0 = time.perf_counter()
        res = run_cfo(benchmarks.make_objective(bid, nd), space, settings)
        opt = benchmarks.known_optimum(bid, nd)
        stated = "" if opt is None else f"{opt.value:.6g}"
        print(f"{e.id:<18} {nd:>3} {res.best_fitness:>15.6g} {stated:>15} {res.neval_total:>7} "
              f"{time.perf_counter() - t0:>6.1f}")


if __name__ == "__main__":
    main()
