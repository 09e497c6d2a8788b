from .backends import (BackendError, ExternalNecBackend, PyNecBackend, SimulatorBackend,
                       StubBackend, pynec_available)
from .deck import (DEFAULT_SWEEP, FOURTEEN_SEG_SPEC, H_BOUNDS, R_BOUNDS, SINGLE_LOAD_SPEC,
                   FrequencySweep, LoadedDesign, MonopoleSpec, card_lines, deck_digest,
                   generate_multi_load_deck, generate_single_load_deck, height_to_segment)
from .necio import NecParseError, parse_nec_output, write_nec_report
from .pipeline import (LD_MONO_BOUNDS, design_response, evaluate_design,
                       make_monopole_objective, z0_sweep)
from .response import FrequencyResponse, f1, f2, f3, fitness, vswr, vswr_flagged
from ..landscape import GridScan, grid_scan
