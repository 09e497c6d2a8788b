"""Grid-scan a 2-D objective and write x1 x2 value rows.

Benchmarks by id, or the monopole via --monopole with PyNEC:
    python3 scripts/scan_landscape.py HIMMELBLAU --n 200 --out himmelblau.dat
    python3 scripts/scan_landscape.py --monopole f1 --n 50 --out mono_f1.dat
"""
import argparse

from cfo import benchmarks
from cfo.landscape import grid_scan


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("objective", nargs="?", default="HIMMELBLAU")
    ap.add_argument("--monopole", choices=["f1", "f2", "f3"])
    ap.add_argument("--z0", type=float, default=50.0)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--out", default="landscape.dat")
    args = ap.parse_args()

    if args.monopole:
        from cfo.antenna import PyNecBackend, make_monopole_objective
        from cfo.antenna.pipeline import LD_MONO_BOUNDS
        objective = make_monopole_objective(args.monopole, args.z0, PyNecBackend())
        bounds = LD_MONO_BOUNDS
    else:
        objective = benchmarks.make_objective(args.objective, 2)
        bounds = benchmarks.default_bounds(args.objective, 2)

    scan = grid_scan(objective, bounds, args.n, args.n)
    with open(args.out, "w") as fh:
        for a, b, v in scan.rows():
            fh.write(f"{a:.6f} {b:.6f} {v:.6e}\n")
    x1, x2 = scan.best_point
    print(f"argmax {x1:.6f} {x2:.6f} {scan.best_value:.6e}")


if __name__ == "__main__":
    main()
