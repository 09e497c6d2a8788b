"""Central force optimization engine.

Probes move through a box under gravity-like pulls toward fitter probes.
Fitness is maximized. The engine is fully deterministic: no random numbers
are drawn anywhere, and ties are broken by a fixed scan order (the later
candidate wins).

Array conventions
-----------------
positions   (np, nd, steps)  R[p, i, j]
accels      (np, nd, steps)  A[p, i, j]
fitness     (np, steps)      M[p, j]

Probe and step indices are 0-based in the API. Report files print probes
1-based.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

# Stand-in for "worse than any real fitness". The finite float minimum keeps
# acceleration arithmetic finite where -inf would produce nan.
FITNESS_FLOOR = -sys.float_info.max


class ObjectiveError(RuntimeError):
    """Objective evaluation failed inside a run."""

    def __init__(self, message, ppd=None, gamma=None, step=None, probe=None):
        self.ppd = ppd
        self.gamma = gamma
        self.step = step
        self.probe = probe
        where = f"ppd={ppd} gamma={gamma} step={step} probe={probe}"
        super().__init__(f"{message} [{where}]")


class DecisionSpace:
    """Box bounds with a frozen copy of the starting box."""

    def __init__(self, lower, upper):
        lo = np.array(lower, dtype=float).ravel()
        hi = np.array(upper, dtype=float).ravel()
        if lo.shape != hi.shape or lo.size < 1:
            raise ValueError("lower and upper must be nonempty and the same length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("bounds must be finite")
        if np.any(lo >= hi):
            raise ValueError("every lower bound must be below its upper bound")
        self._start_min = lo.copy()
        self._start_max = hi.copy()
        self._start_min.setflags(write=False)
        self._start_max.setflags(write=False)
        self.xi_min = lo.copy()
        self.xi_max = hi.copy()
        self.diag_length = float(np.sqrt(np.sum((hi - lo) ** 2)))

    @classmethod
    def from_bounds(cls, bounds: Sequence[tuple[float, float]]) -> "DecisionSpace":
        b = np.asarray(bounds, dtype=float).reshape(-1, 2)
        return cls(b[:, 0], b[:, 1])

    @property
    def nd(self) -> int:
        return self.xi_min.size

    @property
    def starting_xi_min(self) -> np.ndarray:
        return self._start_min

    @property
    def starting_xi_max(self) -> np.ndarray:
        return self._start_max

    def bounds(self):
        return list(zip(self.xi_min.tolist(), self.xi_max.tolist()))

    def reset(self):
        self.xi_min = self._start_min.copy()
        self.xi_max = self._start_max.copy()

    def copy(self) -> "DecisionSpace":
        out = DecisionSpace(self._start_min, self._start_max)
        out.xi_min = self.xi_min.copy()
        out.xi_max = self.xi_max.copy()
        return out

    def __repr__(self):
        return f"DecisionSpace({self.bounds()!r})"


def ppd_max_for_dimension(nd: int) -> int:
    if nd <= 6:
        return 14
    if nd <= 10:
        return 12
    if nd <= 15:
        return 10
    if nd <= 20:
        return 8
    if nd <= 30:
        return 6
    return 4


def _hundredths(x: float, name: str) -> int:
    h = round(x * 100)
    if abs(h - x * 100) > 1e-9:
        raise ValueError(f"{name} must be a multiple of 0.01, got {x}")
    return int(h)


@dataclass(frozen=True)
class CfoSettings:
    nt: int = 1000
    alpha: float = 1.0
    beta: float = 1.0
    frep_init: float = 0.5
    frep_delta: float = 0.1
    frep_min: float = 0.05
    gamma_count: int = 4
    ppd_min: int = 2
    ppd_step: int = 2
    ppd_max: int = 14
    saturation_window: int = 25
    saturation_tol: float = 1e-6
    shrink_start_step: int = 20
    shrink_interval: int = 10
    directional_retrieval: bool = False

    def __post_init__(self):
        if self.nt < 0:
            raise ValueError("nt must be >= 0")
        if self.gamma_count < 2:
            raise ValueError("gamma_count must be >= 2")
        if self.ppd_min < 2 or self.ppd_min % 2 or self.ppd_step < 2 or self.ppd_step % 2:
            raise ValueError("ppd_min and ppd_step must be even and >= 2")
        if self.ppd_max < self.ppd_min:
            raise ValueError("ppd_max must be >= ppd_min")
        if self.saturation_window < 1 or self.shrink_interval < 1:
            raise ValueError("saturation_window and shrink_interval must be >= 1")
        for name in ("frep_init", "frep_delta", "frep_min"):
            h = _hundredths(getattr(self, name), name)
            if not 0 < h <= 100:
                raise ValueError(f"{name} must lie in (0, 1]")

    def gammas(self) -> list[float]:
        n = self.gamma_count - 1
        return [float(Fraction(k, n)) for k in range(self.gamma_count)]

    def ppd_values(self) -> list[int]:
        return list(range(self.ppd_min, self.ppd_max + 1, self.ppd_step))

    def run_count(self) -> int:
        return len(self.ppd_values()) * self.gamma_count

    @classmethod
    def for_problem(cls, name: str, nd: int, **overrides) -> "CfoSettings":
        """Per-problem defaults: step budget and probe-line ceiling."""
        key = name.upper()
        base = dict(nt=1000, ppd_max=ppd_max_for_dimension(nd))
        if key == "F7":
            base["nt"] = 100
        elif key == "LD_MONO":
            base.update(nt=200, ppd_max=6)
        base.update(overrides)
        return cls(**base)


@dataclass
class ObjectiveHandle:
    """Fitness function wrapper. Larger is better.

    ``batch`` (optional) maps an (n, nd) array to n fitnesses and must agree
    bit-for-bit with ``func`` row by row.
    """

    func: Callable[[np.ndarray], float]
    nd: Optional[int] = None
    name: str = "objective"
    deterministic: bool = True
    seed: Optional[int] = None
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, x) -> float:
        return float(self.func(np.asarray(x, dtype=float)))

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if self.batch is not None:
            return np.asarray(self.batch(X), dtype=float).reshape(X.shape[0])
        return np.array([float(self.func(row)) for row in X], dtype=float)


@dataclass
class RunTrace:
    ppd: int
    gamma: float
    positions: np.ndarray       # (np, nd, steps)
    accelerations: np.ndarray   # (np, nd, steps)
    fitness: np.ndarray         # (np, steps)
    frep_used: np.ndarray       # repositioning factor used at each step
    xi_min: np.ndarray          # (steps, nd) bounds in force after step j
    xi_max: np.ndarray
    frep: float                 # value after the last increment
    neval: int
    last_step: int
    best_fitness: float
    best_probe: int
    best_step: int

    @property
    def np(self) -> int:
        return self.positions.shape[0]

    @property
    def nd(self) -> int:
        return self.positions.shape[1]

    @property
    def steps(self) -> int:
        return self.positions.shape[2]

    def step_best(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-step best fitness and probe (>= scan, later probe wins)."""
        M = self.fitness
        vals = M.max(axis=0)
        probes = M.shape[0] - 1 - np.argmax(M[::-1, :] == vals, axis=0)
        return vals, probes


@dataclass
class RunRecord:
    ppd: int
    gamma: float
    best_fitness: float
    last_step: int
    neval: int


@dataclass
class RunResult:
    best_fitness: float
    best_coords: np.ndarray
    best_probe: int
    best_step: int
    best_gamma: float
    best_ppd: int
    neval_total: int
    last_step_best_run: int
    best_trace: RunTrace
    runs: list[RunRecord] = field(default_factory=list)


def initial_probe_distribution(space: DecisionSpace, ppd: int, gamma: float) -> np.ndarray:
    """Probe lines parallel to each axis, crossing the diagonal at gamma."""
    nd = space.nd
    if nd < 1:
        raise ValueError("nd must be >= 1")
    if ppd < 2:
        raise ValueError("ppd must be >= 2")
    if nd > 1 and ppd % 2:
        raise ValueError("odd ppd is only allowed for one-dimensional problems")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError("gamma must lie in [0, 1]")
    lo, hi = space.xi_min, space.xi_max
    n_probes = ppd * nd
    R = np.empty((n_probes, nd))
    R[:] = lo + gamma * (hi - lo)
    for i in range(nd):
        delta = (hi[i] - lo[i]) / (ppd - 1)
        for k in range(ppd):
            # clip: lo + (ppd-1)*delta can land one ulp past hi
            R[k + ppd * i, i] = min(lo[i] + k * delta, hi[i])
    return R


def compute_accelerations(R: np.ndarray, M: np.ndarray, alpha: float = 1.0, beta: float = 1.0) -> np.ndarray:
    """Pull of every fitter probe on every other probe.

    A[p] = sum_k U(M_k - M_p) (M_k - M_p)^alpha (R_k - R_p) / |R_k - R_p|^beta
    Coincident pairs and ties contribute nothing.
    """
    R = np.asarray(R, dtype=float)
    M = np.asarray(M, dtype=float)
    if R.shape[0] < 2:
        return np.zeros_like(R)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        diff = R[np.newaxis, :, :] - R[:, np.newaxis, :]   # [p, k, i] = R_k - R_p
        dist = np.sqrt(np.sum(diff * diff, axis=2))
        dm = M[np.newaxis, :] - M[:, np.newaxis]          # [p, k] = M_k - M_p
        live = (dm > 0) & (dist > 0)
        w = np.where(live, np.power(np.where(live, dm, 1.0), alpha)
                     / np.power(np.where(live, dist, 1.0), beta), 0.0)
        terms = np.where(live[:, :, np.newaxis] & (diff != 0), w[:, :, np.newaxis] * diff, 0.0)
        A = terms.sum(axis=1)
    # sentinel fitness differences can overflow; keep the result finite
    return np.nan_to_num(A, nan=0.0, posinf=sys.float_info.max, neginf=-sys.float_info.max)


def update_positions(R_prev: np.ndarray, A_prev: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        R = np.asarray(R_prev, dtype=float) + np.asarray(A_prev, dtype=float)
    return np.nan_to_num(R, nan=0.0, posinf=sys.float_info.max, neginf=-sys.float_info.max)


def retrieve_errant_probes(R: np.ndarray, R_prev: np.ndarray, space: DecisionSpace, frep: float) -> np.ndarray:
    """Pull out-of-box coordinates back inside, a fraction frep of the way
    from the boundary toward the previous position."""
    lo, hi = space.xi_min, space.xi_max
    R = np.array(R, dtype=float)
    R_prev = np.asarray(R_prev, dtype=float)
    R = np.where(R < lo, np.maximum(lo + frep * (R_prev - lo), lo), R)
    R = np.where(R > hi, np.minimum(hi - frep * (hi - R_prev), hi), R)
    return R


def retrieve_errant_probes_directional(R, R_prev, A_prev, space: DecisionSpace, frep: float) -> np.ndarray:
    """Move errant probes back along their previous acceleration direction.

    The step is frep times the distance to the nearest boundary crossing.
    Probes with no acceleration along an offending axis are left alone.
    """
    lo, hi = space.xi_min, space.xi_max
    R = np.array(R, dtype=float)
    R_prev = np.asarray(R_prev, dtype=float)
    A_prev = np.asarray(A_prev, dtype=float)
    outside = (R < lo) | (R > hi)
    errant = np.any(outside & (A_prev != 0), axis=1)
    for p in np.flatnonzero(errant):
        a = A_prev[p]
        nz = a != 0
        etas = np.concatenate(((lo[nz] - R_prev[p, nz]) / a[nz], (hi[nz] - R_prev[p, nz]) / a[nz]))
        etas = etas[etas >= 0]
        if etas.size == 0:
            continue
        eta = etas.min()
        mag = math.hypot(*a)
        d_max = eta * mag
        R[p] = R_prev[p] + frep * d_max * (a / mag)
    return R


def frep_next(frep: float, delta: float = 0.1, floor: float = 0.05) -> float:
    """Next repositioning factor; anything above 1 wraps to ``floor``.

    Counted in whole hundredths so the wrap never drifts.
    """
    h = _hundredths(frep, "frep") + _hundredths(delta, "delta")
    if h > 100:
        h = _hundredths(floor, "floor")
    return h / 100


def shrink_space(space: DecisionSpace, best_position) -> DecisionSpace:
    b = np.asarray(best_position, dtype=float)
    space.xi_min = space.xi_min + (b - space.xi_min) / 2
    space.xi_max = space.xi_max - (space.xi_max - b) / 2
    return space


def reset_space(space: DecisionSpace) -> DecisionSpace:
    space.reset()
    return space


def has_fitness_saturated(M: np.ndarray, j: int, window: int = 25, tol: float = 1e-6) -> bool:
    """True when the last ``window`` per-step bests average to the latest one."""
    if j < window + 10:
        return False
    b = np.asarray(M, dtype=float)[:, j - window + 1:j + 1].max(axis=0)
    return _flat_tail(b, tol)


def _flat_tail(b: np.ndarray, tol: float) -> bool:
    # mean(b) - b[-1] computed as mean(b - b[-1]): exact zero for a flat
    # history and no overflow when the sentinel is involved
    with np.errstate(over="ignore", invalid="ignore"):
        d = b - b[-1]
    if not np.all(np.isfinite(d)):
        return False
    try:
        return abs(math.fsum(d.tolist()) / b.size) <= tol
    except OverflowError:  # sentinel differences; certainly not flat
        return False


def get_best_fitness(M: np.ndarray, j: int) -> tuple[float, int, int]:
    """Best fitness over steps 0..j. Steps scanned outer, probes inner, >=."""
    sub = np.asarray(M, dtype=float)[:, :j + 1]
    v = sub.max()
    hit = sub == v
    step = int(np.flatnonzero(hit.any(axis=0))[-1])
    probe = int(np.flatnonzero(hit[:, step])[-1])
    return float(sub[probe, step]), probe, step


def davg(R_j: np.ndarray, best_probe: int, diag_length: float) -> float:
    """Mean probe distance to the best probe, normalized by the diagonal."""
    R_j = np.asarray(R_j, dtype=float)
    n = R_j.shape[0]
    if n < 2:
        raise ValueError("need at least two probes")
    dist = np.sqrt(np.sum((R_j - R_j[best_probe]) ** 2, axis=1))
    return float(math.fsum(dist.tolist()) / (diag_length * (n - 1)))


def _evaluate(objective: ObjectiveHandle, R: np.ndarray, ppd, gamma, step) -> np.ndarray:
    try:
        M = objective.evaluate_many(R)
    except ObjectiveError:
        raise
    except Exception as exc:
        # find the offending row for the diagnostic
        probe = None
        for p, row in enumerate(R):
            try:
                objective(row)
            except Exception:
                probe = p
                break
        raise ObjectiveError(f"objective {objective.name!r} failed: {exc}",
                             ppd, gamma, step, probe) from exc
    bad = np.flatnonzero(np.isnan(M))
    if bad.size:
        raise ObjectiveError(f"objective {objective.name!r} returned nan",
                             ppd, gamma, step, int(bad[0]))
    return M


def run_inner(objective: ObjectiveHandle, space: DecisionSpace, ppd: int, gamma: float,
              settings: CfoSettings) -> RunTrace:
    """One CFO run for a fixed (ppd, gamma). Mutates ``space`` by shrinking."""
    s = settings
    R = initial_probe_distribution(space, ppd, gamma)
    n_probes = R.shape[0]
    M = _evaluate(objective, R, ppd, gamma, 0)
    A = np.zeros_like(R)
    neval = n_probes
    frep_h = _hundredths(s.frep_init, "frep_init")
    delta_h = _hundredths(s.frep_delta, "frep_delta")
    floor_h = _hundredths(s.frep_min, "frep_min")

    Rs, As, Ms = [R], [A], [M]
    freps = [frep_h / 100]
    mins, maxs = [space.xi_min.copy()], [space.xi_max.copy()]

    # running best, >= scan with probes inner
    best_val, best_p, best_j = M[0], 0, 0
    for p in range(n_probes):
        if M[p] >= best_val:
            best_val, best_p = M[p], p
    step_max = [float(M.max())]

    last_step = s.nt
    for j in range(1, s.nt + 1):
        R_prev, A_prev = Rs[-1], As[-1]
        frep = frep_h / 100
        R = update_positions(R_prev, A_prev)
        if s.directional_retrieval:
            R = retrieve_errant_probes_directional(R, R_prev, A_prev, space, frep)
        R = retrieve_errant_probes(R, R_prev, space, frep)
        freps.append(frep)

        M = _evaluate(objective, R, ppd, gamma, j)
        neval += n_probes
        A = compute_accelerations(R, M, s.alpha, s.beta)

        top = M.max()
        if top >= best_val:
            best_val, best_p, best_j = top, int(n_probes - 1 - np.argmax(M[::-1] == top)), j
        step_max.append(float(top))

        frep_h += delta_h
        if frep_h > 100:
            frep_h = floor_h

        if j >= s.shrink_start_step and j % s.shrink_interval == 0:
            r_best = R[best_p] if best_j == j else Rs[best_j][best_p]
            shrink_space(space, r_best)
            frep = frep_h / 100
            if s.directional_retrieval:
                R = retrieve_errant_probes_directional(R, R_prev, A_prev, space, frep)
            R = retrieve_errant_probes(R, R_prev, space, frep)

        Rs.append(R)
        As.append(A)
        Ms.append(M)
        mins.append(space.xi_min.copy())
        maxs.append(space.xi_max.copy())

        if j >= s.saturation_window + 10:
            if _flat_tail(np.array(step_max[j - s.saturation_window + 1:j + 1]), s.saturation_tol):
                last_step = j
                break

    return RunTrace(
        ppd=ppd, gamma=gamma,
        positions=np.stack(Rs, axis=2),
        accelerations=np.stack(As, axis=2),
        fitness=np.stack(Ms, axis=1),
        frep_used=np.array(freps),
        xi_min=np.array(mins), xi_max=np.array(maxs),
        frep=frep_h / 100,
        neval=neval, last_step=last_step,
        best_fitness=float(best_val), best_probe=int(best_p), best_step=int(best_j),
    )


def run_cfo(objective: ObjectiveHandle, space: DecisionSpace, settings: CfoSettings,
            progress: Optional[Callable[[RunRecord], None]] = None) -> RunResult:
    """Sweep probes-per-dimension and gamma; keep the best run (>=, later wins)."""
    best: Optional[RunTrace] = None
    total = 0
    runs = []
    for ppd in settings.ppd_values():
        for gamma in settings.gammas():
            trace = run_inner(objective, space, ppd, gamma, settings)
            total += trace.neval
            rec = RunRecord(ppd, gamma, trace.best_fitness, trace.last_step, trace.neval)
            runs.append(rec)
            if progress is not None:
                progress(rec)
            if best is None or trace.best_fitness >= best.best_fitness:
                best = trace
            space.reset()
    assert best is not None
    return RunResult(
        best_fitness=best.best_fitness,
        best_coords=best.positions[best.best_probe, :, best.best_step].copy(),
        best_probe=best.best_probe,
        best_step=best.best_step,
        best_gamma=best.gamma,
        best_ppd=best.ppd,
        neval_total=total,
        last_step_best_run=best.last_step,
        best_trace=best,
        runs=runs,
    )
