"""NEC-2 input decks for the loaded monopole."""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional, Sequence

R_BOUNDS = (0.0, 1000.0)
H_BOUNDS = (0.05, 10.65)


@dataclass(frozen=True)
class MonopoleSpec:
    height: float = 10.7
    radius: float = 0.005
    n_segments: int = 107

    def __post_init__(self):
        if self.n_segments < 1:
            raise ValueError("n_segments must be >= 1")
        if not (self.height > 0 and self.radius > 0):
            raise ValueError("height and radius must be positive")

    @property
    def segment_length(self) -> float:
        return self.height / self.n_segments


SINGLE_LOAD_SPEC = MonopoleSpec()
FOURTEEN_SEG_SPEC = MonopoleSpec(height=10.668, radius=0.0254, n_segments=14)


@dataclass(frozen=True)
class FrequencySweep:
    count: int = 26
    start_mhz: float = 5.0
    step_mhz: float = 1.0

    def freqs(self) -> list[float]:
        return [self.start_mhz + k * self.step_mhz for k in range(self.count)]


@dataclass(frozen=True)
class PatternRequest:
    n_theta: int = 10
    n_phi: int = 1
    xnda: int = 1001
    theta0: float = 0.0
    phi0: float = 0.0
    dtheta: float = 10.0
    dphi: float = 0.0
    rfld: float = 100000.0


DEFAULT_SWEEP = FrequencySweep()
DEFAULT_PATTERN = PatternRequest()


@dataclass(frozen=True)
class LoadedDesign:
    """One lumped resistor of r_load ohms placed at height h_load meters."""

    r_load: float
    h_load: float

    def __post_init__(self):
        if not math.isfinite(self.r_load) or not R_BOUNDS[0] <= self.r_load <= R_BOUNDS[1]:
            raise ValueError(f"r_load {self.r_load} outside {R_BOUNDS}")
        if not math.isfinite(self.h_load) or not H_BOUNDS[0] <= self.h_load <= H_BOUNDS[1]:
            raise ValueError(f"h_load {self.h_load} outside {H_BOUNDS}")


def card_number(x: float, digits: int = 6) -> str:
    """Number as it appears on the cards: at most ``digits`` decimals,
    no trailing zeros, whole values end in '.', no leading zero."""
    x = round(float(x), digits)
    if x == int(x):
        return f"{int(x)}."
    s = f"{x:.{digits}f}".rstrip("0")
    if s.startswith("0."):
        s = s[1:]
    elif s.startswith("-0."):
        s = "-" + s[2:]
    return s


def height_to_segment(h: float, delta: float, n_segments: Optional[int] = None,
                      bounds: Optional[tuple[float, float]] = H_BOUNDS) -> int:
    """Segment holding height h: floor(0.5 + h/delta), clamped to [1, n]."""
    if delta <= 0:
        raise ValueError("segment length must be positive")
    if bounds is not None and not bounds[0] <= h <= bounds[1]:
        raise ValueError(f"height {h} outside {bounds}")
    n = math.floor(0.5 + h / delta)
    if n_segments is not None:
        n = min(max(n, 1), n_segments)
    return max(n, 1)


def _tail_cards(spec: MonopoleSpec, sweep: FrequencySweep, pattern: PatternRequest) -> list[str]:
    p = pattern
    return [
        "GN1",
        f"FR 0,{sweep.count},0,0,{card_number(sweep.start_mhz)},{card_number(sweep.step_mhz)}",
        "EX 0,1,1,1,1.,0.",
        f"RP 0,{p.n_theta},{p.n_phi},{p.xnda},{card_number(p.theta0)},{card_number(p.phi0)},"
        f"{card_number(p.dtheta)},{card_number(p.dphi)},{card_number(p.rfld)}",
        "EN",
    ]


def _wire_cards(spec: MonopoleSpec) -> list[str]:
    return [
        f"GW1,{spec.n_segments},0.,0.,0.,0.,0.,{card_number(spec.height)},{card_number(spec.radius)}",
        "GE1",
    ]


def load_card(segment: int, r_ohms: float) -> str:
    return f"LD0,1,{segment},{segment},{card_number(r_ohms)},0.,0."


def generate_single_load_deck(design: LoadedDesign, spec: MonopoleSpec = SINGLE_LOAD_SPEC,
                              sweep: FrequencySweep = DEFAULT_SWEEP, z0: Optional[float] = 50.0,
                              name: str = "DES1.NEC", pattern: PatternRequest = DEFAULT_PATTERN) -> str:
    seg = height_to_segment(design.h_load, spec.segment_length, spec.n_segments)
    lines = [
        f"CM File: {name}",
        f"CM R={card_number(design.r_load)} ohms, Z={card_number(design.h_load)} m",
        f"CM seg # = INT(0.5+Z/SegLen) = {seg}",
    ]
    if z0 is not None:
        lines.append(f"CM Zo={card_number(z0).rstrip('.')} ohms")
    lines.append("CE")
    lines += _wire_cards(spec)
    lines.append(load_card(seg, design.r_load))
    lines += _tail_cards(spec, sweep, pattern)
    return "\n".join(lines) + "\n"


def generate_multi_load_deck(loads: Sequence[float], spec: MonopoleSpec = FOURTEEN_SEG_SPEC,
                             sweep: FrequencySweep = DEFAULT_SWEEP, z0: Optional[float] = 300.0,
                             name: str = "LD_MONO.NEC", pattern: PatternRequest = DEFAULT_PATTERN,
                             run_id: Optional[str] = None) -> str:
    loads = [float(r) for r in loads]
    if len(loads) != spec.n_segments:
        raise ValueError(f"expected {spec.n_segments} loads, got {len(loads)}")
    if any(not math.isfinite(r) or r < 0 for r in loads):
        raise ValueError("loads must be finite and nonnegative")
    lines = [f"CM File: {name}"]
    if run_id:
        lines.append(f"CM Run ID {run_id}")
    if z0 is not None:
        lines.append(f"CM Zo={card_number(z0).rstrip('.')} ohms")
    lines.append("CE")
    lines += _wire_cards(spec)
    lines += [load_card(k, r) for k, r in enumerate(loads, start=1)]
    lines += _tail_cards(spec, sweep, pattern)
    return "\n".join(lines) + "\n"


def card_lines(deck: str) -> list[str]:
    """Deck lines minus comments (CM)."""
    return [ln for ln in deck.splitlines() if ln.strip() and not ln.startswith("CM")]


def deck_digest(deck: str) -> str:
    """sha256 over the non-comment cards, so comments never change identity."""
    body = "\n".join(card_lines(deck)) + "\n"
    return hashlib.sha256(body.encode("ascii")).hexdigest()


def parse_cards(deck: str) -> list[tuple[str, list[str]]]:
    """Split card lines into (mnemonic, fields)."""
    out = []
    for ln in card_lines(deck):
        code = ln[:2].upper()
        rest = ln[2:].strip()
        fields = [f.strip() for f in rest.replace(" ", ",").split(",") if f.strip()] if rest else []
        out.append((code, fields))
    return out
