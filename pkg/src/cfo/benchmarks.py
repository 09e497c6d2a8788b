"""Benchmark objectives in the maximize convention.

Every function takes a 2-D array ``X`` of shape (n, nd) and returns n
fitness values. Minimization problems come back negated. ``evaluate`` is
the single-point entry used by tests and the cli.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .core import FITNESS_FLOOR, ObjectiveHandle

PI = math.pi
TWO_PI = 2 * math.pi


class UnknownBenchmark(KeyError):
    pass


class BenchmarkUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class KnownOptimum:
    value: float
    location: Optional[tuple]          # None when only the value is known
    other_locations: tuple = ()


@dataclass(frozen=True)
class BenchmarkEntry:
    id: str
    nd_default: int
    fixed_nd: bool
    min_nd: int = 1
    noisy: bool = False
    constrained: bool = False
    implemented: bool = True
    title: str = ""
    params: dict = field(default_factory=dict)

    def bounds(self, nd: Optional[int] = None):
        return default_bounds(self.id, nd)

    def known_max(self, nd: Optional[int] = None) -> Optional[KnownOptimum]:
        return known_optimum(self.id, nd)

    @property
    def bounds_default(self):
        return default_bounds(self.id)


# ---------------------------------------------------------------- helpers

def _sign(x):
    return np.where(x <= 0, -1.0, 1.0)


def _u(x, a, k, m):
    return np.where(x > a, k * (x - a) ** m, np.where(x < -a, k * (-x - a) ** m, 0.0))


def _round_half_even(x, decimals=0):
    # half-to-even rounding, as numpy does
    return np.round(x, decimals)


FOXHOLES = np.array([
    [-32.0, -16.0, 0.0, 16.0, 32.0] * 5,
    [v for v in (-32.0, -16.0, 0.0, 16.0, 32.0) for _ in range(5)],
])

_KOWALIK_A = np.array([0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                       0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
_KOWALIK_B = 1.0 / np.array([0.25, 0.50, 1.00, 2.00, 4.00, 6.00,
                             8.00, 10.0, 12.0, 14.0, 16.0])

_H3_A = np.array([[3.0, 10, 30], [0.1, 10, 35], [3.0, 10, 30], [0.1, 10, 35]])
_H3_C = np.array([1.0, 1.2, 3.0, 3.2])
_H3_P = np.array([[0.36890, 0.1170, 0.2673],
                  [0.46990, 0.4387, 0.7470],
                  [0.10910, 0.8732, 0.5547],
                  [0.03815, 0.5743, 0.8828]])

_H6_A = np.array([[10.0, 3.00, 17.0, 3.5, 1.7, 8],
                  [0.05, 10.0, 17.0, 0.1, 8, 14],
                  [3.00, 3.50, 1.70, 10, 17, 8],
                  [17.0, 8.00, 0.05, 10, 0.1, 14]])
_H6_C = np.array([1.0, 1.2, 3.0, 3.2])
_H6_P = np.array([[0.13120, 0.1696, 0.5569, 0.01240, 0.8283, 0.5886],
                  [0.23290, 0.4135, 0.8307, 0.37360, 0.1004, 0.9991],
                  [0.23480, 0.1415, 0.3522, 0.28830, 0.3047, 0.6650],
                  [0.40470, 0.8828, 0.8732, 0.57430, 0.1091, 0.0381]])

_SHEKEL_A = np.array([[4, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6],
                      [3, 7, 3, 7], [2, 9, 2, 9], [5, 5, 3, 3], [8, 1, 8, 1],
                      [6, 2, 6, 2], [7, 3.6, 7, 3.6]], dtype=float)
_SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


# ------------------------------------------------------------- functions

def f1(X):
    return -np.sum(X ** 2, axis=1)


def f2(X):
    a = np.abs(X)
    return -(np.sum(a, axis=1) + np.prod(a, axis=1))


def f3(X):
    return -np.sum(np.cumsum(X, axis=1) ** 2, axis=1)


def f4(X):
    return -np.max(np.abs(X), axis=1)


def f5(X):
    xi, xn = X[:, :-1], X[:, 1:]
    # deliberately not textbook Rosenbrock: the (x_i - 1) term sits inside the square
    return -np.sum((100.0 * (xn - xi ** 2) ** 2 + (xi - 1.0)) ** 2, axis=1)


def f6(X):
    return -np.sum(np.floor(X + 0.5) ** 2, axis=1)


def f7_quartic(X):
    i = np.arange(1, X.shape[1] + 1)
    return -np.sum(i * X ** 4, axis=1)


def f8(X):
    return np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)


def f9(X):
    # each Rastrigin term is squared on purpose
    return -np.sum((X ** 2 - 10.0 * np.cos(TWO_PI * X) + 10.0) ** 2, axis=1)


def f10(X):
    nd = X.shape[1]
    s1 = np.sum(X ** 2, axis=1)
    s2 = np.sum(np.cos(TWO_PI * X), axis=1)
    z = -20.0 * np.exp(-0.2 * np.sqrt(s1 / nd)) - np.exp(s2 / nd) + 20.0 + math.e
    return -z


def f11(X):
    y = X - 100.0
    i = np.arange(1, X.shape[1] + 1)
    z = np.sum(y ** 2, axis=1) / 4000.0 - np.prod(np.cos(y / np.sqrt(i)), axis=1) + 1.0
    return -z


def f12(X):
    nd = X.shape[1]
    y = 1.0 + (X + 1.0) / 4.0
    s1 = np.sum((y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(PI * y[:, 1:]) ** 2), axis=1)
    s1 = s1 + 10.0 * np.sin(PI * y[:, 0]) ** 2 + (y[:, -1] - 1.0) ** 2
    s1 = PI * s1 / nd
    s2 = np.sum(_u(X, 10.0, 100.0, 4.0), axis=1)
    return -(s1 + s2)


def f13(X):
    s1 = np.sum((X[:, :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * PI * X[:, 1:]) ** 2), axis=1)
    xn = X[:, -1]
    s1 = s1 + np.sin(PI * 3.0 * X[:, 0]) ** 2 + (xn - 1.0) ** 2 * (1.0 + np.sin(TWO_PI * xn) ** 2)
    s2 = np.sum(_u(X, 5.0, 100.0, 4.0), axis=1)
    return -(s1 / 10.0 + s2)


def f14(X):
    d = X[:, :, np.newaxis] - FOXHOLES[np.newaxis, :, :]      # (n, 2, 25)
    s2 = np.sum(d ** 6, axis=1)
    s1 = np.sum(1.0 / (np.arange(1, 26) + s2), axis=1)
    return -(1.0 / (0.002 + s1))


def f15(X):
    b = _KOWALIK_B
    x1, x2, x3, x4 = (X[:, k:k + 1] for k in range(4))
    num = x1 * (b ** 2 + b * x2)
    den = b ** 2 + b * x3 + x4
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.sum((_KOWALIK_A - num / den) ** 2, axis=1)
    return -z


def f16(X):
    x1, x2 = X[:, 0], X[:, 1]
    z = 4.0 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3.0 + x1 * x2 - 4 * x2 ** 2 + 4 * x2 ** 4
    return -z


def f17(X):
    x1, x2 = X[:, 0], X[:, 1]
    z = ((x2 - 5.1 * x1 ** 2 / (4.0 * PI ** 2) + 5.0 * x1 / PI - 6.0) ** 2
         + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * np.cos(x1) + 10.0)
    return -z


def _goldstein_price(x1, x2):
    t1 = 1.0 + (x1 + x2 + 1.0) ** 2 * (19.0 - 14.0 * x1 + 3.0 * x1 ** 2 - 14.0 * x2
                                      + 6.0 * x1 * x2 + 3.0 * x2 ** 2)
    t2 = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (18.0 - 32.0 * x1 + 12.0 * x1 ** 2 + 48.0 * x2
                                             - 36.0 * x1 * x2 + 27.0 * x2 ** 2)
    return -(t1 * t2)


def f18(X):
    return _goldstein_price(X[:, 0], X[:, 1])


def _hartman(X, A, C, P):
    s = np.sum(A[np.newaxis] * (X[:, np.newaxis, :] - P[np.newaxis]) ** 2, axis=2)
    return np.sum(C * np.exp(-s), axis=1)


def f19(X):
    return _hartman(X, _H3_A, _H3_C, _H3_P)


def f20(X):
    return _hartman(X, _H6_A, _H6_C, _H6_P)


def _shekel(X, m):
    s = np.sum((X[:, np.newaxis, :] - _SHEKEL_A[np.newaxis, :m]) ** 2, axis=2)
    return np.sum(1.0 / (s + _SHEKEL_C[:m]), axis=1)


def f21(X):
    return _shekel(X, 5)


def f22(X):
    return _shekel(X, 7)


def f23(X):
    return _shekel(X, 10)


def sgo(X, offsets=(0.0, 0.0)):
    x1 = X[:, 0] - offsets[0]
    x2 = X[:, 1] - offsets[1]
    t1 = x1 ** 4 - 16.0 * x1 ** 2 + 0.5 * x1
    t2 = x2 ** 4 - 16.0 * x2 ** 2 + 0.5 * x2
    return -(t1 + t2)


GP_OFFSETS = (20.0, -10.0)


def gp(X):
    return _goldstein_price(X[:, 0] - GP_OFFSETS[0], X[:, 1] - GP_OFFSETS[1])


def _step_offsets(nd):
    return np.array([75.0, 35.0]) if nd == 2 else np.zeros(nd)


def step(X):
    return -np.sum(np.floor((X - _step_offsets(X.shape[1])) + 0.5) ** 2, axis=1)


def schwefel_226(X):
    return np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)


def colville(X):
    x1, x2, x3, x4 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
    # terms are summed; a split "+ -" continuation reads as "+"
    z = (100.0 * (x2 - x1 ** 2) ** 2 + (1.0 - x1) ** 2
         + 90.0 * (x4 - x3 ** 2) ** 2 + (1.0 - x3) ** 2
         + 10.1 * (x2 - 1.0) ** 2 + (x4 - 1.0) ** 2
         + 19.8 * (x2 - 1.0) * (x4 - 1.0))
    return -z


GRIEWANK_OFFSET = 75.123


def griewank(X):
    y = X - GRIEWANK_OFFSET
    i = np.arange(1, X.shape[1] + 1)
    z = np.sum(y ** 2, axis=1) / 4000.0 - np.prod(np.cos(y / np.sqrt(i)), axis=1) + 1.0
    return -z


def himmelblau(X):
    x1, x2 = X[:, 0], X[:, 1]
    return 200.0 - (x1 ** 2 + x2 - 11.0) ** 2 - (x1 + x2 ** 2 - 7.0) ** 2


def rosenbrock(X):
    xi, xn = X[:, :-1], X[:, 1:]
    return -np.sum(100.0 * (xn - xi ** 2) ** 2 + (xi - 1.0) ** 2, axis=1)


def sphere(X):
    return -np.sum(X ** 2, axis=1)


def himmelblau_nlo(X):
    x1, x2, x3, x4, x5 = (X[:, k] for k in range(5))
    g1 = 85.334407 + 0.0056858 * x2 * x5 + 0.00026 * x1 * x4 - 0.0022053 * x3 * x5
    g2 = 80.51249 + 0.0071317 * x2 * x5 + 0.0029955 * x1 * x2 + 0.0021813 * x3 * x3
    g3 = 9.300961 + 0.0047026 * x3 * x5 + 0.0012547 * x1 * x3 + 0.0019085 * x3 * x4
    bad = (g1 < 0) | (g1 > 92.0) | (g2 < 90.0) | (g2 > 110.0) | (g3 < 20.0) | (g3 > 25.0)
    z = 5.3578547 * x3 * x3 + 0.8356891 * x1 * x5 + 37.29329 * x1 - 40792.141
    return np.where(bad, FITNESS_FLOOR, -z)


def tripod(X):
    x1, x2 = X[:, 0], X[:, 1]
    s1, s2 = _sign(x1), _sign(x2)
    t1 = (1.0 - s2) * (np.abs(x1) + np.abs(x2 + 50.0))
    t2 = 0.5 * (1.0 + s2) * (1.0 - s1) * (1.0 + np.abs(x1 + 50.0) + np.abs(x2 - 50.0))
    t3 = (1.0 + s1) * (2.0 + np.abs(x1 - 50.0) + np.abs(x2 - 50.0))
    return -(0.5 * (t1 + t2 + t3))


def rosenbrock_f6(X, offsets=None):
    off = np.zeros(X.shape[1]) if offsets is None else np.asarray(offsets, dtype=float)
    z = X - off + 1.0
    zi, z1 = z[:, 1:], z[:, :-1]
    s = np.sum(100.0 * (z1 ** 2 - zi) ** 2 + (z1 - 1.0) ** 2, axis=1)
    return -(390.0 + s)


def compression_spring(X):
    x1 = _round_half_even(X[:, 0])
    x2 = X[:, 1]
    x3 = _round_half_even(X[:, 2], 3)
    with np.errstate(divide="ignore", invalid="ignore"):
        cf = 1.0 + 0.75 * x3 / (x2 - x3) + 0.615 * x3 / x2
        fmax, s, lmax, sig_pm, fp, sig_w = 1000.0, 189000.0, 14.0, 6.0, 300.0, 1.25
        k = 11.5 * 1e6 * x3 ** 4 / (8.0 * x1 * x2 ** 3)
        lf = fmax / k + 1.05 * (x1 + 2.0) * x3
        sig_p = fp / k
        g1 = 8.0 * cf * fmax * x2 / (PI * x3 ** 3) - s
        g2 = lf - lmax
        g3 = sig_p - sig_pm
        g4 = sig_p - fp / k
        g5 = sig_w - (fmax - fp) / k
    bad = (g1 > 0) | (g2 > 0) | (g3 > 0) | (g4 > 0) | (g5 > 0)
    z = PI ** 2 * x2 * x3 ** 2 * (x1 + 1.0) / 4.0
    return np.where(bad, FITNESS_FLOOR, -z)


def gear_train(X):
    x1, x2, x3, x4 = (_round_half_even(X[:, k]) for k in range(4))
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (1.0 / 6.931 - x1 * x2 / (x3 * x4)) ** 2
    return -z


# ---------------------------------------------------------------- catalog

_E = BenchmarkEntry
CATALOG: dict[str, BenchmarkEntry] = {}
_FUNCS: dict[str, Callable] = {}


def _register(entry: BenchmarkEntry, func: Optional[Callable]):
    CATALOG[entry.id] = entry
    if func is not None:
        _FUNCS[entry.id] = func


_NDIM = [
    ("F1", f1, 1, "sphere"), ("F2", f2, 1, "abs sum plus abs product"),
    ("F3", f3, 1, "cumulative sum squares"), ("F4", f4, 1, "max abs coordinate"),
    ("F5", f5, 2, "Rosenbrock family"), ("F6", f6, 1, "step"),
    ("F7", None, 1, "quartic with noise"), ("F8", f8, 1, "Schwefel 2.26"),
    ("F9", f9, 1, "Rastrigin family"), ("F10", f10, 1, "Ackley"),
    ("F11", f11, 1, "Griewank shifted by 100"), ("F12", f12, 1, "penalized 1"),
    ("F13", f13, 1, "penalized 2"),
]
for _id, _f, _min, _t in _NDIM:
    _register(_E(_id, 30, False, min_nd=_min, noisy=_id == "F7", title=_t), _f)

_FIXED = [
    ("F14", f14, 2, "Shekel foxholes"), ("F15", f15, 4, "Kowalik"),
    ("F16", f16, 2, "six-hump camel back"), ("F17", f17, 2, "Branin"),
    ("F18", f18, 2, "Goldstein-Price"), ("F19", f19, 3, "Hartman 3"),
    ("F20", f20, 6, "Hartman 6"), ("F21", f21, 4, "Shekel m=5"),
    ("F22", f22, 4, "Shekel m=7"), ("F23", f23, 4, "Shekel m=10"),
]
for _id, _f, _nd, _t in _FIXED:
    _register(_E(_id, _nd, True, min_nd=_nd, title=_t), _f)

_register(_E("SGO", 2, True, min_nd=2, title="SGO", params={"offsets": (0.0, 0.0)}), None)
_register(_E("GP", 2, True, min_nd=2, title="Goldstein-Price with offsets"), gp)
_register(_E("STEP", 2, False, title="step with offsets in 2-D"), step)
_register(_E("SCHWEFEL_226", 30, False, title="Schwefel 2.26"), schwefel_226)
_register(_E("COLVILLE", 4, True, min_nd=4, title="Colville"), colville)
_register(_E("GRIEWANK", 2, False, title="Griewank with offset"), griewank)
_register(_E("HIMMELBLAU", 2, True, min_nd=2, title="Himmelblau"), himmelblau)
_register(_E("ROSENBROCK", 2, False, min_nd=2, title="Rosenbrock"), rosenbrock)
_register(_E("SPHERE", 2, False, title="sphere"), sphere)
_register(_E("HIMMELBLAUNLO", 5, True, min_nd=5, constrained=True,
             title="Himmelblau constrained"), himmelblau_nlo)
_register(_E("TRIPOD", 2, True, min_nd=2, title="tripod"), tripod)
_register(_E("ROSENBROCKF6", 10, False, min_nd=2, title="shifted Rosenbrock (flagged as erroneous)",
             params={"offsets": None}), None)
_register(_E("COMPRESSIONSPRING", 3, True, min_nd=3, constrained=True,
             title="compression spring"), compression_spring)
_register(_E("GEARTRAIN", 4, True, min_nd=4, title="gear train"), gear_train)
_register(_E("ParrottF4", 1, True, min_nd=1, implemented=False, title="Parrott F4 (body missing)"), None)

_ALIASES = {"SCHWEFEL226": "SCHWEFEL_226"}


def benchmark_ids() -> list[str]:
    return list(CATALOG)


def get_entry(bid: str) -> BenchmarkEntry:
    key = _ALIASES.get(bid.upper(), bid)
    if key not in CATALOG:
        up = key.upper()
        matches = [k for k in CATALOG if k.upper() == up]
        if not matches:
            raise UnknownBenchmark(bid)
        key = matches[0]
    return CATALOG[key]


def _resolve_nd(entry: BenchmarkEntry, nd: Optional[int]) -> int:
    if nd is None:
        return entry.nd_default
    if entry.fixed_nd and nd != entry.nd_default:
        raise ValueError(f"{entry.id} is {entry.nd_default}-D, got nd={nd}")
    if nd < entry.min_nd:
        raise ValueError(f"{entry.id} needs nd >= {entry.min_nd}, got nd={nd}")
    return nd


_BOUNDS_FIXED = {
    "F14": [(-65.536, 65.536)] * 2,
    "F15": [(-5.0, 5.0)] * 4,
    "F16": [(-5.0, 5.0)] * 2,
    "F17": [(-5.0, 10.0), (0.0, 15.0)],
    "F18": [(-2.0, 2.0)] * 2,
    "F19": [(0.0, 1.0)] * 3,
    "F20": [(0.0, 1.0)] * 6,
    "F21": [(0.0, 10.0)] * 4,
    "F22": [(0.0, 10.0)] * 4,
    "F23": [(0.0, 10.0)] * 4,
    "SGO": [(-50.0, 50.0)] * 2,
    "GP": [(-100.0, 100.0)] * 2,
    "COLVILLE": [(-10.0, 10.0)] * 4,
    "HIMMELBLAU": [(-6.0, 6.0)] * 2,
    "HIMMELBLAUNLO": [(78.0, 102.0), (33.0, 45.0), (27.0, 45.0), (27.0, 45.0), (27.0, 45.0)],
    "TRIPOD": [(-100.0, 100.0)] * 2,
    "COMPRESSIONSPRING": [(1.0, 70.0), (0.6, 3.0), (0.207, 0.5)],
    "GEARTRAIN": [(12.0, 60.0)] * 4,
    "ParrottF4": [(0.0, 1.0)],
}

_BOUNDS_NDIM = {
    "F1": (-100.0, 100.0), "F2": (-10.0, 10.0), "F3": (-100.0, 100.0),
    "F4": (-100.0, 100.0), "F5": (-30.0, 30.0), "F6": (-100.0, 100.0),
    "F7": (-1.28, 1.28), "F8": (-500.0, 500.0), "F9": (-5.12, 5.12),
    "F10": (-32.0, 32.0), "F11": (-600.0, 600.0),
    "F12": (-5.0, 5.0),   # narrower of the two candidate intervals
    "F13": (-50.0, 50.0),
    "SCHWEFEL_226": (-500.0, 500.0), "GRIEWANK": (-600.0, 600.0),
    "ROSENBROCK": (-2.0, 2.0), "SPHERE": (-100.0, 100.0),
    "ROSENBROCKF6": (-100.0, 100.0), "STEP": (-100.0, 100.0),
}


def default_bounds(bid: str, nd: Optional[int] = None) -> list[tuple[float, float]]:
    entry = get_entry(bid)
    nd = _resolve_nd(entry, nd)
    if entry.id in _BOUNDS_FIXED:
        return list(_BOUNDS_FIXED[entry.id])
    if entry.id == "STEP" and nd == 2:
        return [(72.0, 78.0), (27.0, 33.0)]
    return [_BOUNDS_NDIM[entry.id]] * nd


def known_optimum(bid: str, nd: Optional[int] = None) -> Optional[KnownOptimum]:
    """Stated maximum and its location, or None when none is stated."""
    entry = get_entry(bid)
    nd = _resolve_nd(entry, nd)
    zeros = (0.0,) * nd
    table = {
        "F1": KnownOptimum(0.0, zeros), "F2": KnownOptimum(0.0, zeros),
        "F3": KnownOptimum(0.0, zeros), "F4": KnownOptimum(0.0, zeros),
        "F5": KnownOptimum(0.0, (1.0,) * nd), "F6": KnownOptimum(0.0, zeros),
        "F7": KnownOptimum(0.0, zeros),
        "F8": KnownOptimum(12569.5, (420.8687,) * nd) if nd == 30 else None,
        "F9": KnownOptimum(0.0, zeros), "F10": KnownOptimum(0.0, zeros),
        "F11": KnownOptimum(0.0, (100.0,) * nd), "F12": KnownOptimum(0.0, (-1.0,) * nd),
        "F13": KnownOptimum(0.0, (1.0,) * nd),
        "F15": KnownOptimum(-0.0003075, (0.1928, 0.1908, 0.1231, 0.1358)),
        "F17": KnownOptimum(-0.398, (-3.142, 12.275), ((3.142, 2.275), (9.425, 2.425))),
        "F18": KnownOptimum(-3.0, (0.0, -1.0)),
        "F19": KnownOptimum(3.86, (0.114, 0.556, 0.852)),
        "F20": KnownOptimum(3.32, (0.201, 0.150, 0.477, 0.275, 0.311, 0.657)),
        "F21": KnownOptimum(10.0, None), "F22": KnownOptimum(10.0, None),
        "F23": KnownOptimum(10.0, None),
        # stated at zero offset; shifted by the active offsets
        "GP": KnownOptimum(-3.0, (0.0 + GP_OFFSETS[0], -1.0 + GP_OFFSETS[1])),
        "STEP": KnownOptimum(0.0, tuple(_step_offsets(nd).tolist())),
        "SCHWEFEL_226": KnownOptimum(12569.5, (420.8687,) * nd) if nd == 30 else None,
        "COLVILLE": KnownOptimum(0.0, (1.0, 1.0, 1.0, 1.0)),
        "GRIEWANK": KnownOptimum(0.0, (GRIEWANK_OFFSET,) * nd),
        "HIMMELBLAU": KnownOptimum(200.0, (3.0, 2.0)),
        "ROSENBROCK": KnownOptimum(0.0, (1.0,) * nd),
        "SPHERE": KnownOptimum(0.0, zeros),
        "HIMMELBLAUNLO": KnownOptimum(31025.5562644972, (78.0, 33.0, 27.0709971052, 45.0, 44.9692425501)),
        "TRIPOD": KnownOptimum(0.0, (0.0, -50.0)),
    }
    return table.get(entry.id)


def _batch_for(entry: BenchmarkEntry, nd: int, params: dict) -> Callable:
    if not entry.implemented:
        raise BenchmarkUnavailable(f"{entry.id} has no formula available")
    if entry.id == "SGO":
        offs = tuple(params.get("offsets", (0.0, 0.0)))
        return lambda X: sgo(X, offs)
    if entry.id == "ROSENBROCKF6":
        offs = params.get("offsets")
        if offs is not None and len(offs) != nd:
            raise ValueError("ROSENBROCKF6 offsets must have length nd")
        return lambda X: rosenbrock_f6(X, offs)
    return _FUNCS[entry.id]


def _as_rows(x, nd_expected=None) -> np.ndarray:
    X = np.asarray(x, dtype=float)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if not np.all(np.isfinite(X)):
        raise ValueError("coordinates must be finite")
    return X


def evaluate(bid: str, x, seed: Union[int, np.random.Generator, None] = 0, **params) -> float:
    """Fitness of one point. ``seed`` only matters for the noisy F7.

    An int seeds a fresh PCG64 stream; a Generator is drawn from directly.
    """
    entry = get_entry(bid)
    X = _as_rows(x)
    nd = _resolve_nd(entry, X.shape[1])
    if entry.id == "F7":
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(0 if seed is None else seed)
        return float(f7_quartic(X)[0] - rng.random())
    return float(_batch_for(entry, nd, params)(X)[0])


def make_objective(bid: str, nd: Optional[int] = None, seed: int = 0, **params) -> ObjectiveHandle:
    """ObjectiveHandle for a catalog entry.

    F7 draws its noise from one PCG64 stream per handle; build a fresh
    handle to replay a run.
    """
    entry = get_entry(bid)
    nd = _resolve_nd(entry, nd)
    if entry.id == "F7":
        rng = np.random.default_rng(seed)

        def batch(X):
            X = np.asarray(X, dtype=float)
            return f7_quartic(X) - rng.random(X.shape[0])

        return ObjectiveHandle(func=lambda x: float(batch(np.asarray(x, dtype=float)[np.newaxis])[0]),
                               nd=nd, name="F7", deterministic=False, seed=seed, batch=batch)
    fn = _batch_for(entry, nd, params)

    def batch(X):
        return fn(np.asarray(X, dtype=float))

    def single(x):
        return float(fn(np.asarray(x, dtype=float)[np.newaxis])[0])

    return ObjectiveHandle(func=single, nd=nd, name=entry.id, deterministic=True, batch=batch)
