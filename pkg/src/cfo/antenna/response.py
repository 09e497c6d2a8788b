"""Per-frequency monopole performance and the f1/f2/f3 fitness functions.

Efficiency is carried in percent and gain in dBi throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

VSWR_CAP = 1e9
FITNESS_CAP = 1e9


def vswr_flagged(rin: float, xin: float, z0: float) -> tuple[float, bool]:
    """Standing wave ratio and a flag set when the value was capped."""
    if not z0 > 0:
        raise ValueError("z0 must be positive")
    num = math.hypot(rin - z0, xin)
    den = math.hypot(rin + z0, xin)
    if den == 0.0:
        return VSWR_CAP, True
    g = num / den
    if g >= 1.0:
        return VSWR_CAP, True
    s = (1.0 + g) / (1.0 - g)
    if s > VSWR_CAP:
        return VSWR_CAP, True
    return s, False


def vswr(rin: float, xin: float, z0: float) -> float:
    return vswr_flagged(rin, xin, z0)[0]


@dataclass
class FrequencyResponse:
    freqs_mhz: np.ndarray
    efficiency_pct: np.ndarray
    gmax_dbi: np.ndarray
    rin_ohms: np.ndarray
    xin_ohms: np.ndarray
    z0: float = 50.0
    vswr: np.ndarray = field(default=None)

    def __post_init__(self):
        names = ("freqs_mhz", "efficiency_pct", "gmax_dbi", "rin_ohms", "xin_ohms")
        for n in names:
            setattr(self, n, np.asarray(getattr(self, n), dtype=float).ravel())
        sizes = {getattr(self, n).size for n in names}
        if len(sizes) != 1 or 0 in sizes:
            raise ValueError("response arrays must be nonempty and equal length")
        eff = self.efficiency_pct
        if np.any(~(eff > 0)) or np.any(eff > 100.0 + 1e-9):
            raise ValueError("efficiency must lie in (0, 100] percent")
        if self.vswr is None:
            self.vswr = np.array([vswr(r, x, self.z0) for r, x in zip(self.rin_ohms, self.xin_ohms)])
        else:
            # explicit curve, used for synthetic responses
            self.vswr = np.asarray(self.vswr, dtype=float).ravel()
            if self.vswr.size != self.freqs_mhz.size or np.any(~(self.vswr >= 1.0)):
                raise ValueError("vswr must match the frequency count and be >= 1")

    def __len__(self):
        return self.freqs_mhz.size

    def with_z0(self, z0: float) -> "FrequencyResponse":
        if z0 == self.z0:
            return self
        return FrequencyResponse(self.freqs_mhz, self.efficiency_pct, self.gmax_dbi,
                                 self.rin_ohms, self.xin_ohms, z0=z0)

    def to_dict(self) -> dict:
        return {
            "freqs_mhz": self.freqs_mhz.tolist(),
            "efficiency_pct": self.efficiency_pct.tolist(),
            "gmax_dbi": self.gmax_dbi.tolist(),
            "rin_ohms": self.rin_ohms.tolist(),
            "xin_ohms": self.xin_ohms.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict, z0: float = 50.0) -> "FrequencyResponse":
        return cls(d["freqs_mhz"], d["efficiency_pct"], d["gmax_dbi"],
                   d["rin_ohms"], d["xin_ohms"], z0=z0)


def _ratio(num: float, den: float) -> tuple[float, bool]:
    if den == 0.0 or not math.isfinite(den):
        return FITNESS_CAP, True
    v = num / den
    if v > FITNESS_CAP:
        return FITNESS_CAP, True
    return v, False


def f1_flagged(resp: FrequencyResponse, z0: float = None):
    r = resp if z0 is None else resp.with_z0(z0)
    dv = float(r.vswr.max() - r.vswr.min())
    return _ratio(float(r.efficiency_pct.min() + r.gmax_dbi.min()), dv)


def f2_flagged(resp: FrequencyResponse, z0: float = None):
    z0 = resp.z0 if z0 is None else z0
    den = abs(z0 - resp.rin_ohms.max()) * abs(resp.xin_ohms.max())
    return _ratio(float(resp.efficiency_pct.min()), float(den))


def f3_flagged(resp: FrequencyResponse, z0: float = None):
    r = resp if z0 is None else resp.with_z0(z0)
    dv = float(r.vswr.max() - r.vswr.min())
    span = float(r.xin_ohms.max() - r.xin_ohms.min())
    den = abs(r.z0 - r.rin_ohms.max()) * dv * span
    return _ratio(float(r.efficiency_pct.min()), float(den))


def f1(resp: FrequencyResponse, z0: float = None) -> float:
    """(min efficiency + min gain) / VSWR spread."""
    return f1_flagged(resp, z0)[0]


def f2(resp: FrequencyResponse, z0: float = None) -> float:
    """min efficiency / (|z0 - max Rin| * |max Xin|)."""
    return f2_flagged(resp, z0)[0]


def f3(resp: FrequencyResponse, z0: float = None) -> float:
    """min efficiency / (|z0 - max Rin| * VSWR spread * Xin span)."""
    return f3_flagged(resp, z0)[0]


FITNESS_FUNCTIONS = {"f1": f1_flagged, "f2": f2_flagged, "f3": f3_flagged}


def fitness(resp: FrequencyResponse, which: str, z0: float = None) -> tuple[float, bool]:
    try:
        fn = FITNESS_FUNCTIONS[which.lower()]
    except KeyError:
        raise ValueError(f"unknown fitness {which!r}; expected f1, f2 or f3") from None
    return fn(resp, z0)


def vswr_curves(resp: FrequencyResponse, z0_values: Sequence[float]) -> dict[float, np.ndarray]:
    return {float(z): resp.with_z0(z).vswr for z in z0_values}
