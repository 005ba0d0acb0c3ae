"""Regenerate ``pairs.json``: 10 fixed-seed pairs per dimension at t = 0.3.

Run from the repository root:  python3 tests/golden/make_golden.py
"""
import json
import pathlib

from pslab.harness import trial_inputs, trial_seed
from pslab.majorization import check_epi, theorem1_sequences

SEED = 20160
DIMS = range(2, 9)
T = 0.3
HERE = pathlib.Path(__file__).parent


def sig12(x):
    return float(f"{x:.12g}")


def build():
    cases = []
    for d in DIMS:
        for trial in range(10):
            seed = trial_seed(SEED, d, trial)
            rho, sigma, _, _ = trial_inputs(seed, d)
            lam, kappa = theorem1_sequences(rho, sigma, T)
            cases.append({
                "dim": d,
                "trial": trial,
                "seed": seed,
                "t": T,
                "majorant": [sig12(x) for x in lam],
                "output_spectrum": [sig12(x) for x in kappa],
                "entropy_gap": sig12(check_epi(rho, sigma, T)[1]),
            })
    return {"master_seed": SEED, "cases": cases}


if __name__ == "__main__":
    (HERE / "pairs.json").write_text(json.dumps(build(), indent=1) + "\n")
