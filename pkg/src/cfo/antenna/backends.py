"""Simulator backends: deck text in, frequency response out.

ExternalNecBackend  runs a NEC-2 executable on disk
PyNecBackend        drives the nec2++ engine through the PyNEC bindings and
                    renders a NEC-2 style report
StubBackend         canned responses keyed by deck digest or (R, segment)
"""
from __future__ import annotations

import json
import math
import os
import subprocess
import tempfile
import threading
from contextlib import nullcontext
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .deck import deck_digest, parse_cards
from .necio import NecFrequencyResult, parse_nec_output, write_nec_report
from .response import FrequencyResponse


class BackendError(RuntimeError):
    def __init__(self, message: str, digest: Optional[str] = None):
        self.digest = digest
        super().__init__(message + (f" [deck sha256 {digest}]" if digest else ""))


class SimulatorBackend:
    name = "base"

    def __init__(self):
        self.calls = 0

    def simulate(self, deck: str) -> str:
        raise NotImplementedError

    def respond(self, deck: str, z0: float = 50.0, efficiency: str = "power_budget") -> FrequencyResponse:
        self.calls += 1
        text = self.simulate(deck)
        try:
            return parse_nec_output(text, z0=z0, efficiency=efficiency)
        except ValueError as exc:
            raise BackendError(f"{self.name}: unreadable output: {exc}", deck_digest(deck)) from exc


_DIR_LOCKS: dict[str, threading.Lock] = {}
_DIR_LOCKS_GUARD = threading.Lock()


def _dir_lock(path: str) -> threading.Lock:
    with _DIR_LOCKS_GUARD:
        return _DIR_LOCKS.setdefault(os.path.abspath(path), threading.Lock())


class ExternalNecBackend(SimulatorBackend):
    """Runs a NEC-2 executable.

    The deck goes to ``input_name`` in the working directory and an
    INFILE.DAT naming input and output files is written next to it. The same
    two names are also fed on stdin, which covers builds that prompt for
    them. ``args`` may use {input} and {output} placeholders for builds that
    take file names on the command line (e.g. ["-i", "{input}", "-o", "{output}"]).
    """

    name = "external"

    def __init__(self, executable: str, workdir: Optional[str] = None, timeout: float = 60.0,
                 input_name: str = "CFO.NEC", output_name: str = "CFO.OUT",
                 args: Sequence[str] = ()):
        super().__init__()
        self.executable = executable
        self.workdir = workdir
        self.timeout = timeout
        self.input_name = input_name
        self.output_name = output_name
        self.args = list(args)

    def simulate(self, deck: str) -> str:
        digest = deck_digest(deck)
        if self.workdir:
            os.makedirs(self.workdir, exist_ok=True)
            ctx, lock = nullcontext(self.workdir), _dir_lock(self.workdir)
        else:
            ctx, lock = tempfile.TemporaryDirectory(prefix="cfo_nec_"), nullcontext()
        with lock, ctx as wd:
            inp = Path(wd) / self.input_name
            outp = Path(wd) / self.output_name
            if outp.exists():
                outp.unlink()
            inp.write_text(deck)
            (Path(wd) / "INFILE.DAT").write_text(f"{self.input_name}\n{self.output_name}\n")
            cmd = [self.executable] + [a.format(input=self.input_name, output=self.output_name)
                                       for a in self.args]
            try:
                proc = subprocess.run(cmd, cwd=wd, input=f"{self.input_name}\n{self.output_name}\n",
                                      capture_output=True, text=True, timeout=self.timeout)
            except FileNotFoundError as exc:
                raise BackendError(f"NEC executable not found: {self.executable}", digest) from exc
            except subprocess.TimeoutExpired as exc:
                raise BackendError(f"NEC run exceeded {self.timeout} s", digest) from exc
            if proc.returncode != 0:
                tail = (proc.stderr or proc.stdout or "").strip()[-500:]
                raise BackendError(f"NEC exited with status {proc.returncode}: {tail}", digest)
            if not outp.exists():
                raise BackendError(f"NEC produced no {self.output_name}", digest)
            return outp.read_text(errors="replace")


def pynec_available() -> bool:
    try:
        import PyNEC  # noqa: F401
    except ImportError:
        return False
    return True


class PyNecBackend(SimulatorBackend):
    """nec2++ through PyNEC, for the card set the monopole decks use."""

    name = "pynec"

    def __init__(self):
        super().__init__()
        try:
            import PyNEC
        except ImportError as exc:
            raise BackendError("PyNEC is not installed (pip install PyNEC)") from exc
        self._nec = PyNEC

    def simulate(self, deck: str) -> str:
        digest = deck_digest(deck)
        try:
            return write_nec_report(self.run_cards(deck), deck=deck)
        except BackendError:
            raise
        except Exception as exc:
            raise BackendError(f"nec2++ failed: {exc}", digest) from exc

    def run_cards(self, deck: str) -> list[NecFrequencyResult]:
        digest = deck_digest(deck)
        ctx = self._nec.nec_context()
        geo = ctx.get_geometry()
        wires, loads = [], []
        freqs = None
        rp = None
        ex = None
        for code, f in parse_cards(deck):
            if code == "CE":
                continue
            if code == "GW":
                tag, nseg = int(f[0]), int(f[1])
                x1, y1, z1, x2, y2, z2, rad = (float(v) for v in f[2:9])
                geo.wire(tag, nseg, x1, y1, z1, x2, y2, z2, rad, 1.0, 1.0)
                wires.append((tag, nseg))
            elif code == "GE":
                ctx.geometry_complete(int(f[0]) if f else 0)
            elif code == "LD":
                ltype, tag, s1, s2 = (int(v) for v in f[:4])
                r, l, c = (float(v) for v in (f[4:7] + ["0", "0", "0"])[:3])
                if ltype != 0 or l != 0 or c != 0:
                    raise BackendError("only series resistive LD cards are supported", digest)
                ctx.ld_card(ltype, tag, s1, s2, r, l, c)
                loads.append((tag, s1, s2, r))
            elif code == "GN":
                ctx.gn_card(int(f[0]), 0, 0, 0, 0, 0, 0, 0)
            elif code == "FR":
                ifrq, nfrq = int(f[0]), int(f[1])
                f0, df = float(f[4]), float(f[5])
                if ifrq != 0:
                    raise BackendError("only linear FR stepping is supported", digest)
                ctx.fr_card(ifrq, nfrq, f0, df)
                freqs = [f0 + k * df for k in range(nfrq)]
            elif code == "EX":
                etype, tag, seg, i4 = (int(v) for v in f[:4])
                vre, vim = float(f[4]), float(f[5]) if len(f) > 5 else 0.0
                ctx.ex_card(etype, tag, seg, i4, vre, vim, 0, 0, 0, 0)
                ex = (tag, seg)
            elif code == "RP":
                mode, nth, nph, xnda = (int(v) for v in f[:4])
                th0, ph0, dth, dph, rfld = (float(v) for v in f[4:9])
                digits = [(xnda // 1000) % 10, (xnda // 100) % 10, (xnda // 10) % 10, xnda % 10]
                ctx.rp_card(mode, nth, nph, *digits, th0, ph0, dth, dph, rfld, 0.0)
                rp = (nth, nph, th0, ph0, dth, dph, digits[3])
            elif code == "EN":
                break
            else:
                raise BackendError(f"card {code} is not supported by the PyNEC backend", digest)
        if len(wires) != 1 or freqs is None or rp is None or ex is None:
            raise BackendError("deck must hold one GW wire plus FR, EX and RP cards", digest)
        return [self._collect(ctx, k, fmhz, loads, rp) for k, fmhz in enumerate(freqs)]

    @staticmethod
    def _collect(ctx, k, fmhz, loads, rp) -> NecFrequencyResult:
        ip = ctx.get_input_parameters(k)
        v_in = complex(ip.get_voltage()[0])
        i_in = complex(ip.get_current()[0])
        p_in = float(ip.get_power()[0])
        cur = np.asarray(ctx.get_structure_currents(k).get_current())
        # ohmic loss in the lumped loads (single wire: segment n is index n-1)
        loss = sum(0.5 * abs(cur[s - 1]) ** 2 * r
                   for (_, s1, s2, r) in loads for s in range(s1, s2 + 1))
        pat = ctx.get_radiation_pattern(k)
        thetas = np.ravel(pat.get_theta_angles())
        gv = np.ravel(pat.get_gain_vert())
        gh = np.ravel(pat.get_gain_horiz())
        gt = np.ravel(pat.get_gain_tot())
        avg = None
        if rp[6]:
            # nec2++ reports an unusable average, so integrate the requested
            # cut over the hemisphere instead: mean of G sin(theta)
            th = np.radians(thetas)
            g = np.where(gt < -990, 0.0, 10.0 ** (gt / 10.0))
            w = np.sin(th)
            den = np.trapezoid(w, th)
            avg = float(np.trapezoid(g * w, th) / den) if den > 0 else None
        return NecFrequencyResult(
            freq_mhz=fmhz, v_in=v_in, i_in=i_in, power_in=p_in,
            radiated_power=p_in - loss, structure_loss=loss, network_loss=0.0,
            thetas=thetas.tolist(), phi=float(np.ravel(pat.get_phi_angles())[0]),
            gain_vert=gv.tolist(), gain_hor=gh.tolist(), gain_total=gt.tolist(),
            average_gain=avg,
            e_theta=list(np.ravel(pat.get_e_theta())), e_phi=list(np.ravel(pat.get_e_phi())),
        )


def _single_load(deck: str) -> Optional[tuple[float, int]]:
    lds = [f for code, f in parse_cards(deck) if code == "LD"]
    if len(lds) != 1:
        return None
    f = lds[0]
    return round(float(f[4]), 6), int(f[2])


class StubBackend(SimulatorBackend):
    """Lookup-table backend. Misses raise BackendError."""

    name = "stub"

    def __init__(self, by_digest: Optional[dict] = None, by_design: Optional[dict] = None):
        super().__init__()
        self.by_digest = dict(by_digest or {})
        self.by_design = {(round(float(r), 6), int(s)): v for (r, s), v in (by_design or {}).items()}

    def _lookup(self, deck: str):
        digest = deck_digest(deck)
        if digest in self.by_digest:
            return self.by_digest[digest]
        key = _single_load(deck)
        if key is not None and key in self.by_design:
            return self.by_design[key]
        raise BackendError("stub has no response for this deck", digest)

    def simulate(self, deck: str) -> str:
        hit = self._lookup(deck)
        if not isinstance(hit, str):
            raise BackendError("stub entry holds a parsed response, not NEC text", deck_digest(deck))
        return hit

    def respond(self, deck: str, z0: float = 50.0, efficiency: str = "power_budget") -> FrequencyResponse:
        hit = self._lookup(deck)
        self.calls += 1
        if isinstance(hit, str):
            return parse_nec_output(hit, z0=z0, efficiency=efficiency)
        return hit.with_z0(z0)

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "StubBackend":
        """Load {"responses": [{"digest"| "r_ohms"+"segment", "response"| "nec_output"}]}.

        ``nec_output`` is a path relative to the json file.
        """
        path = Path(path)
        data = json.loads(path.read_text())
        by_digest, by_design = {}, {}
        for k, item in enumerate(data.get("responses", [])):
            if "response" in item:
                val = FrequencyResponse.from_dict(item["response"])
            elif "nec_output" in item:
                val = (path.parent / item["nec_output"]).read_text()
            else:
                raise ValueError(f"stub entry {k} has neither response nor nec_output")
            if "digest" in item:
                by_digest[item["digest"]] = val
            if "r_ohms" in item and "segment" in item:
                by_design[(item["r_ohms"], item["segment"])] = val
            if "digest" not in item and not ("r_ohms" in item and "segment" in item):
                raise ValueError(f"stub entry {k} needs a digest or r_ohms+segment key")
        return cls(by_digest, by_design)

    def to_json(self, path: Union[str, Path]):
        items = []
        for d, v in self.by_digest.items():
            if isinstance(v, FrequencyResponse):
                items.append({"digest": d, "response": v.to_dict()})
        for (r, s), v in self.by_design.items():
            if isinstance(v, FrequencyResponse):
                items.append({"r_ohms": r, "segment": s, "response": v.to_dict()})
        Path(path).write_text(json.dumps({"responses": items}, indent=1) + "\n")
