"""Regenerate tests/fixtures/monopole_stub.json and des1_nec_output.txt.

Needs PyNEC. The stub holds responses for the 3x3 lattice over the default
monopole box, plus the DES1 design (5.025126 ohm at 1.621357 m) as raw NEC
text, so tests can run the monopole pipeline without a solver.
"""
import argparse
from pathlib import Path

from cfo.antenna import (H_BOUNDS, R_BOUNDS, SINGLE_LOAD_SPEC, LoadedDesign, PyNecBackend,
                         StubBackend, generate_single_load_deck, height_to_segment)
from cfo.landscape import lattice


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "fixtures"))
    ap.add_argument("--n", type=int, default=3)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    nec = PyNecBackend()

    des1 = generate_single_load_deck(LoadedDesign(5.025126, 1.621357))
    (out / "des1_nec_output.txt").write_text(nec.simulate(des1))

    by_design = {}
    for r in lattice(*R_BOUNDS, args.n):
        for h in lattice(*H_BOUNDS, args.n):
            seg = height_to_segment(h, SINGLE_LOAD_SPEC.segment_length, SINGLE_LOAD_SPEC.n_segments)
            deck = generate_single_load_deck(LoadedDesign(r, h))
            by_design[(round(float(r), 6), seg)] = nec.respond(deck)
            print(f"R={r:g} H={h:g} seg={seg}")
    stub = StubBackend(by_design=by_design)
    stub.to_json(out / "monopole_stub.json")
    # add the raw-text entry for DES1 by hand so the json references the fixture file
    import json
    data = json.loads((out / "monopole_stub.json").read_text())
    data["responses"].append({"r_ohms": 5.025126, "segment": 16, "nec_output": "des1_nec_output.txt"})
    (out / "monopole_stub.json").write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
