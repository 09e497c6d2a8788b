"""Reading and writing NEC-2 text reports.

Only the sections the monopole objectives need are handled: the
frequency header, antenna input parameters, power budget and the
radiation pattern table (plus the average power gain line).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .response import FrequencyResponse

# Fortran E/F fields may butt against each other ("1.2E-02-3.4E-03")
_NUM = re.compile(r"[-+]?(?:\d+\.\d*|\.\d+|\d+)(?:[EeDd][-+]?\d+)?")
_FREQ = re.compile(r"FREQUENCY\s*[=:]\s*(" + _NUM.pattern + r")\s*MHZ", re.IGNORECASE)
_EFF = re.compile(r"EFFICIENCY\s*=\s*(" + _NUM.pattern + r")\s*PERCENT", re.IGNORECASE)
_AVG = re.compile(r"AVERAGE\s+POWER\s+GAIN\s*=\s*(" + _NUM.pattern + r")", re.IGNORECASE)
_INPUT_HDR = re.compile(r"ANTENNA\s+INPUT\s+PARAMETERS", re.IGNORECASE)
_PATTERN_HDR = re.compile(r"RADIATION\s+PATTERNS", re.IGNORECASE)
_DEG_HDR = re.compile(r"DEGREES\s+DEGREES", re.IGNORECASE)

# total power gain lives in columns 37-44 of a pattern row
GAIN_COLS = slice(36, 44)

EFFICIENCY_SOURCES = ("power_budget", "average_gain")


class NecParseError(ValueError):
    def __init__(self, message: str, block: Optional[int] = None, line: Optional[int] = None):
        self.block = block
        self.line = line
        where = []
        if block is not None:
            where.append(f"frequency block {block}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(message + (f" ({', '.join(where)})" if where else ""))


def _num(s: str) -> float:
    return float(s.replace("D", "E").replace("d", "e"))


@dataclass
class NecBlock:
    freq_mhz: float
    z_in: complex
    efficiency_pct: Optional[float]
    average_gain: Optional[float]
    thetas: np.ndarray
    gains_db: np.ndarray


def parse_nec_blocks(text: str) -> list[NecBlock]:
    lines = text.splitlines()
    starts = [(k, m) for k, ln in enumerate(lines) for m in [_FREQ.search(ln)] if m]
    if not starts:
        raise NecParseError("no FREQUENCY= header found", line=None)
    blocks = []
    for b, (k0, m) in enumerate(starts):
        k1 = starts[b + 1][0] if b + 1 < len(starts) else len(lines)
        blocks.append(_parse_block(lines, k0, k1, b + 1, _num(m.group(1))))
    return blocks


def _parse_block(lines, k0, k1, b, freq) -> NecBlock:
    z_in = None
    eff = None
    avg = None
    thetas, gains = [], []
    k = k0
    while k < k1:
        ln = lines[k]
        if z_in is None and _INPUT_HDR.search(ln):
            k, z_in = _read_input_row(lines, k + 1, k1, b)
            continue
        if _PATTERN_HDR.search(ln):
            k, thetas, gains = _read_pattern(lines, k + 1, k1, b)
            continue
        m = _EFF.search(ln)
        if m:
            eff = _num(m.group(1))
        m = _AVG.search(ln)
        if m:
            avg = _num(m.group(1))
        k += 1
    if z_in is None:
        raise NecParseError("missing antenna input parameters", b, k0 + 1)
    if not gains:
        raise NecParseError("missing radiation pattern rows", b, k0 + 1)
    return NecBlock(freq, z_in, eff, avg, np.array(thetas), np.array(gains))


def _read_input_row(lines, k, k1, b):
    while k < k1:
        toks = _NUM.findall(lines[k])
        if len(toks) >= 8 and "." not in toks[0] and "." not in toks[1]:
            try:
                zr, zi = _num(toks[6]), _num(toks[7])
            except ValueError:
                raise NecParseError("bad impedance field", b, k + 1) from None
            return k + 1, complex(zr, zi)
        k += 1
    raise NecParseError("antenna input parameters table has no data row", b, k)


def _read_pattern(lines, k, k1, b):
    while k < k1 and not _DEG_HDR.search(lines[k]):
        k += 1
    if k >= k1:
        raise NecParseError("radiation pattern header not found", b, k)
    k += 1
    thetas, gains = [], []
    while k < k1:
        ln = lines[k]
        toks = _NUM.findall(ln[:GAIN_COLS.stop])
        if len(toks) < 5:
            break
        field_ = ln[GAIN_COLS].strip()
        try:
            gains.append(_num(field_))
            thetas.append(_num(toks[0]))
        except ValueError:
            raise NecParseError(f"bad gain field {field_!r}", b, k + 1) from None
        k += 1
    if not gains:
        raise NecParseError("radiation pattern table has no rows", b, k + 1)
    return k, thetas, gains


def parse_nec_output(text: str, z0: float = 50.0, efficiency: str = "power_budget",
                     expect_freqs: Optional[int] = None) -> FrequencyResponse:
    """Frequency response from a NEC-2 report.

    ``efficiency`` picks the source: the power budget line, or half the
    average power gain (hemisphere over a perfect ground). Either one falls
    back to the other when its line is missing.
    """
    if efficiency not in EFFICIENCY_SOURCES:
        raise ValueError(f"efficiency must be one of {EFFICIENCY_SOURCES}")
    if not text or not text.strip():
        raise NecParseError("empty NEC output")
    blocks = parse_nec_blocks(text)
    if expect_freqs is not None and len(blocks) != expect_freqs:
        raise NecParseError(f"expected {expect_freqs} frequency blocks, found {len(blocks)}",
                            len(blocks))
    effs = []
    for b, blk in enumerate(blocks, start=1):
        from_budget = blk.efficiency_pct
        from_avg = None if blk.average_gain is None else 100.0 * blk.average_gain / 2.0
        first, second = (from_budget, from_avg) if efficiency == "power_budget" else (from_avg, from_budget)
        e = first if first is not None else second
        if e is None:
            raise NecParseError("no efficiency or average power gain line", b)
        effs.append(e)
    return FrequencyResponse(
        freqs_mhz=[blk.freq_mhz for blk in blocks],
        efficiency_pct=effs,
        gmax_dbi=[float(blk.gains_db.max()) for blk in blocks],
        rin_ohms=[blk.z_in.real for blk in blocks],
        xin_ohms=[blk.z_in.imag for blk in blocks],
        z0=z0,
    )


# ------------------------------------------------------------------ writer

@dataclass
class NecFrequencyResult:
    freq_mhz: float
    v_in: complex
    i_in: complex
    power_in: float
    radiated_power: float
    structure_loss: float
    network_loss: float
    thetas: Sequence[float]
    phi: float
    gain_vert: Sequence[float]
    gain_hor: Sequence[float]
    gain_total: Sequence[float]
    average_gain: Optional[float] = None
    e_theta: Sequence[complex] = field(default_factory=list)
    e_phi: Sequence[complex] = field(default_factory=list)
    tag: int = 1
    seg: int = 1

    @property
    def z_in(self) -> complex:
        return self.v_in / self.i_in

    @property
    def efficiency_pct(self) -> float:
        return 100.0 * self.radiated_power / self.power_in


def _e12(x: float) -> str:
    return f"{x:12.5E}"


def _e11(x: float) -> str:
    return f"{x:11.4E}"


def _pattern_row(theta, phi, gv, gh, gt, e_t: complex, e_p: complex) -> str:
    mt, pt = abs(e_t), float(np.degrees(np.angle(e_t)))
    mp, pp = abs(e_p), float(np.degrees(np.angle(e_p)))
    sense = "LINEAR" if mt > 0 or mp > 0 else "      "
    return (f" {theta:7.2f}{phi:9.2f}   {gv:8.2f}{gh:8.2f}{gt:8.2f}"
            f"  {0.0:8.5f} {0.0:8.2f}  {sense:6s}{mt:15.5E}{pt:9.2f}{mp:15.5E}{pp:9.2f}")


def write_nec_report(results: Sequence[NecFrequencyResult], deck: Optional[str] = None,
                     banner: str = "NUMERICAL ELECTROMAGNETICS CODE") -> str:
    """NEC-2 style report for the sections the parser reads."""
    out = [
        "",
        " " * 30 + "*" * 35,
        " " * 31 + banner,
        " " * 30 + "*" * 35,
        "",
    ]
    if deck:
        out.append(" " * 29 + "- - - - COMMENTS - - - -")
        out.append("")
        for ln in deck.splitlines():
            if ln.startswith("CM"):
                out.append(" " * 20 + ln[2:].strip())
        out.append("")
    c = 299.792458
    for r in results:
        z = r.z_in
        y = 1.0 / z
        out += [
            "",
            " " * 30 + "- - - - - - FREQUENCY - - - - - -",
            "",
            " " * 36 + f"FREQUENCY={_e11(r.freq_mhz)} MHZ",
            " " * 36 + f"WAVELENGTH={_e11(c / r.freq_mhz)} METERS",
            "",
            "",
            " " * 24 + "- - - ANTENNA INPUT PARAMETERS - - -",
            "",
            "  TAG   SEG.    VOLTAGE (VOLTS)          CURRENT (AMPS)          IMPEDANCE (OHMS)"
            "         ADMITTANCE (MHOS)       POWER",
            "  NO.   NO.     REAL        IMAG.       REAL        IMAG.       REAL        IMAG."
            "       REAL        IMAG.      (WATTS)",
            f" {r.tag:5d}{r.seg:6d}" + "".join(_e12(v) for v in (
                r.v_in.real, r.v_in.imag, r.i_in.real, r.i_in.imag,
                z.real, z.imag, y.real, y.imag, r.power_in)),
            "",
            "",
            " " * 28 + "---------- POWER BUDGET ---------",
            "",
            " " * 28 + f"INPUT POWER   ={_e11(r.power_in)} WATTS",
            " " * 28 + f"RADIATED POWER={_e11(r.radiated_power)} WATTS",
            " " * 28 + f"STRUCTURE LOSS={_e11(r.structure_loss)} WATTS",
            " " * 28 + f"NETWORK LOSS  ={_e11(r.network_loss)} WATTS",
            " " * 28 + f"EFFICIENCY    ={r.efficiency_pct:8.2f} PERCENT",
            "",
            "",
            " " * 29 + "- - - RADIATION PATTERNS - - -",
            "",
            " - - ANGLES - -            - POWER GAINS -       - - - POLARIZATION - - -"
            "    - - - E(THETA) - - -      - - - E(PHI) - - -",
            "  THETA     PHI       VERT.   HOR.   TOTAL       AXIAL     TILT  SENSE"
            "     MAGNITUDE    PHASE      MAGNITUDE    PHASE",
            " DEGREES DEGREES       DB      DB      DB        RATIO     DEG."
            "                VOLTS/M   DEGREES       VOLTS/M   DEGREES",
        ]
        n = len(r.thetas)
        et = list(r.e_theta) or [0j] * n
        ep = list(r.e_phi) or [0j] * n
        for k in range(n):
            out.append(_pattern_row(r.thetas[k], r.phi, r.gain_vert[k], r.gain_hor[k],
                                    r.gain_total[k], et[k], ep[k]))
        if r.average_gain is not None:
            out += ["", f"   AVERAGE POWER GAIN={_e11(r.average_gain)}"]
        out.append("")
    out += ["", " " * 20 + "RUN TIME = 0.000", ""]
    return "\n".join(out)
