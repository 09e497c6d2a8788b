"""Plot-data and summary files for a finished run_cfo.

Data files are plain whitespace-separated columns with 6 fractional digits
(coordinates fixed-point, fitness and Davg in exponent form) so that two
runs can be compared byte for byte.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .core import RunResult, RunTrace, davg

N_BEST_TRAJECTORIES = 10
N_PROBE_TRAJECTORIES = 16


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _fmte(x: float) -> str:
    # fitness-like values span many decades (f3 ~ 1e-5), so keep 6 mantissa digits
    return f"{0.0 if x == 0 else x:.6e}"


def _write(path: Path, lines: Iterable[str]):
    path.write_text("".join(line + "\n" for line in lines))


def fitness_lines(trace: RunTrace) -> list[str]:
    vals, _ = trace.step_best()
    return [f"{j} {_fmte(v)}" for j, v in enumerate(vals)]


def best_probe_lines(trace: RunTrace) -> list[str]:
    _, probes = trace.step_best()
    return [f"{j} {p + 1}" for j, p in enumerate(probes)]


def davg_values(trace: RunTrace, diag_length: float) -> np.ndarray:
    _, probes = trace.step_best()
    return np.array([davg(trace.positions[:, :, j], int(probes[j]), diag_length)
                     for j in range(trace.steps)])


def davg_lines(trace: RunTrace, diag_length: float) -> list[str]:
    return [f"{j} {_fmte(v)}" for j, v in enumerate(davg_values(trace, diag_length))]


def best_trajectories(trace: RunTrace, count: int = N_BEST_TRAJECTORIES) -> list[np.ndarray]:
    """Coordinates of the k-th best probe at every step, k = 1..count.

    After each pass the chosen cells are overwritten with the run's minimum
    fitness so the next pass picks the runner-up. Each pass scans probes in
    order with >=, so the last maximal probe wins.
    """
    M = trace.fitness.copy()
    floor = M.min()
    out = []
    for _ in range(min(count, trace.np)):
        vals = M.max(axis=0)
        probes = M.shape[0] - 1 - np.argmax(M[::-1, :] == vals, axis=0)
        steps = np.arange(trace.steps)
        out.append(trace.positions[probes, :, steps])
        M[probes, steps] = floor
    return out


def trajectory_lines(xy: np.ndarray) -> list[str]:
    return [" ".join(_fmt(v) for v in row) for row in xy]


def probe_coordinate_lines(trace: RunTrace) -> list[str]:
    head = "# step " + " ".join(f"P{p + 1}" for p in range(trace.np))
    rows = [head]
    for j in range(trace.steps):
        rows.append(f"{j} " + " ".join(_fmt(v) for v in trace.positions[:, 0, j]))
    return rows


def summary_lines(result: RunResult, settings_nt: int, objective_name: str) -> list[str]:
    coords = " ".join(repr(float(c)) for c in result.best_coords)
    return [
        f"objective: {objective_name}",
        f"best_fitness: {float(result.best_fitness)!r}",
        f"best_coords: {coords}",
        f"best_probe: {result.best_probe + 1}",
        f"best_step: {result.best_step}",
        f"best_gamma: {float(result.best_gamma)!r}",
        f"best_ppd: {result.best_ppd}",
        f"nt: {settings_nt}",
        f"neval: {result.neval_total}",
        f"last_step: {result.last_step_best_run}",
        (f"Best Gamma: {result.best_gamma:7.3f} BestNp/Nd: {result.best_ppd:3d} "
         f"Nt: {settings_nt:5d} Neval: {result.neval_total:5d} "
         f"LastStep: {result.last_step_best_run:5d}"),
    ]


def write_report(outdir, result: RunResult, diag_length: float, nt: int, objective_name: str,
                 effective_config: Optional[list[str]] = None) -> list[Path]:
    """Write every output file; returns the paths written, sorted."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    tr = result.best_trace
    files = {
        "fitness.dat": fitness_lines(tr),
        "davg.dat": davg_lines(tr, diag_length),
        "best_probe.dat": best_probe_lines(tr),
        "summary.txt": summary_lines(result, nt, objective_name),
    }
    if tr.nd == 2:
        for k, xy in enumerate(best_trajectories(tr), 1):
            files[f"traj_best_{k:02d}.dat"] = trajectory_lines(xy)
        for p in range(min(N_PROBE_TRAJECTORIES, tr.np)):
            files[f"traj_probe_{p + 1:02d}.dat"] = trajectory_lines(tr.positions[p].T)
    if tr.nd == 1:
        files["probe_coordinates.dat"] = probe_coordinate_lines(tr)
    if effective_config is not None:
        files["effective_config.txt"] = effective_config
    paths = []
    for name in sorted(files):
        _write(out / name, files[name])
        paths.append(out / name)
    return paths


def read_columns(path) -> np.ndarray:
    """Generic numeric reader for every emitted data file ('#' lines skipped)."""
    rows = [line.split() for line in Path(path).read_text().splitlines()
            if line.strip() and not line.startswith("#")]
    return np.array(rows, dtype=float)
