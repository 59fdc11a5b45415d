"""Entangling outcome laws for both wirings over a grid of sizes."""

import csv
import pathlib

from readout_tradeoff import Compilation, GateNoise, compiled_dist

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "results"


def main():
    OUT_DIR.mkdir(exist_ok=True)
    path = OUT_DIR / "outcome_laws.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["compilation", "p", "n", "q", "prob"])
        for compilation in Compilation:
            for p in (0.005, 0.01, 0.05):
                for n in (2, 4, 6, 8, 10):
                    dist = compiled_dist(n, GateNoise(p, compilation))
                    for q, prob in enumerate(dist.probs):
                        w.writerow([compilation.value, p, n, q, f"{prob:.12g}"])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
