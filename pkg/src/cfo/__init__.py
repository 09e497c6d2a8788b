"""Deterministic central force optimization with benchmark and antenna objectives."""
from .core import (FITNESS_FLOOR, CfoSettings, DecisionSpace, ObjectiveError, ObjectiveHandle,
                   RunResult, RunTrace, compute_accelerations, davg, frep_next, get_best_fitness,
                   has_fitness_saturated, initial_probe_distribution, reset_space,
                   retrieve_errant_probes, retrieve_errant_probes_directional, run_cfo, run_inner,
                   shrink_space, update_positions)

__version__ = "0.1.0"
