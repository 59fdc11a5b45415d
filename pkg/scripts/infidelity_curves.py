"""Misclassification infidelity against window length.

One CSV per gate failure probability, columns (n, t_ms, mi, eta_opt).
The minima over t trace out how much an extra qubit buys (or costs) at
each gate quality.
"""

import csv
import pathlib

import numpy as np

from readout_tradeoff import GateNoise, RateParams, SchemeConfig, compose, mi_optimal

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "results"

RATES = RateParams(3.5, 14.0, 0.0041)
T_GRID = np.geomspace(0.2, 60.0, 96)


def main():
    OUT_DIR.mkdir(exist_ok=True)
    for p in (0.001, 0.01):
        path = OUT_DIR / f"mi_p{p:g}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "t_ms", "mi", "eta_opt"])
            for n in range(1, 6):
                cfg = SchemeConfig.noisy(n, RATES, GateNoise(p))
                for t in T_GRID:
                    mi, eta = mi_optimal(compose(cfg, float(t)))
                    w.writerow([n, f"{t:.12g}", f"{mi:.12g}", f"{eta:.12g}"])
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
