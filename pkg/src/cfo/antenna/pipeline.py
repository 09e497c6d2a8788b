"""Design -> deck -> backend -> response -> fitness."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..core import ObjectiveHandle
from .backends import BackendError, SimulatorBackend
from .deck import (DEFAULT_SWEEP, H_BOUNDS, R_BOUNDS, SINGLE_LOAD_SPEC, FrequencySweep,
                   LoadedDesign, MonopoleSpec, deck_digest, generate_single_load_deck)
from .response import FrequencyResponse, fitness, vswr_curves

LD_MONO_BOUNDS = [R_BOUNDS, H_BOUNDS]


def design_response(design: LoadedDesign, backend: SimulatorBackend, z0: float = 50.0,
                    spec: MonopoleSpec = SINGLE_LOAD_SPEC, sweep: FrequencySweep = DEFAULT_SWEEP,
                    efficiency: str = "power_budget") -> FrequencyResponse:
    deck = generate_single_load_deck(design, spec, sweep, z0=z0)
    try:
        return backend.respond(deck, z0=z0, efficiency=efficiency)
    except BackendError:
        raise
    except Exception as exc:
        raise BackendError(f"{backend.name} backend failed: {exc}", deck_digest(deck)) from exc


def evaluate_design(design: LoadedDesign, which: str, z0: float, backend: SimulatorBackend,
                    spec: MonopoleSpec = SINGLE_LOAD_SPEC, sweep: FrequencySweep = DEFAULT_SWEEP,
                    efficiency: str = "power_budget") -> float:
    resp = design_response(design, backend, z0, spec, sweep, efficiency)
    return fitness(resp, which, z0)[0]


def make_monopole_objective(which: str, z0: float, backend: SimulatorBackend,
                            spec: MonopoleSpec = SINGLE_LOAD_SPEC,
                            sweep: FrequencySweep = DEFAULT_SWEEP,
                            efficiency: str = "power_budget", cache: bool = True) -> ObjectiveHandle:
    """Objective over x = (R ohms, H meters).

    Responses are cached by deck digest; the deck carries R to six decimals
    and H only through its segment, so many probes share a simulation.
    """
    memo: dict[str, FrequencyResponse] = {}

    def func(x):
        design = LoadedDesign(float(x[0]), float(x[1]))
        deck = generate_single_load_deck(design, spec, sweep, z0=z0)
        key = deck_digest(deck)
        resp = memo.get(key) if cache else None
        if resp is None:
            resp = backend.respond(deck, z0=z0, efficiency=efficiency)
            if cache:
                memo[key] = resp
        return fitness(resp, which, z0)[0]

    handle = ObjectiveHandle(func=func, nd=2, name=f"LD_MONO:{which}", deterministic=True)
    handle.cache = memo
    return handle


def z0_sweep(design: LoadedDesign, z0_values: Sequence[float], backend: SimulatorBackend,
             spec: MonopoleSpec = SINGLE_LOAD_SPEC, sweep: FrequencySweep = DEFAULT_SWEEP,
             efficiency: str = "power_budget"):
    """VSWR per z0 from one simulation (impedance does not depend on z0)."""
    resp = design_response(design, backend, 50.0, spec, sweep, efficiency)
    return resp, vswr_curves(resp, z0_values)
