"""Time-to-target speed-up ratios across register sizes and gate qualities."""

import csv
import pathlib

from readout_tradeoff import GateNoise, RateParams, SchemeConfig, time_to_snr

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "results"

RATES = RateParams(3.5, 14.0, 0.0041)
TARGETS = (4.0, 8.0, 12.0)
P_VALUES = (0.0, 0.001, 0.01)


def main():
    OUT_DIR.mkdir(exist_ok=True)
    path = OUT_DIR / "speedup.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "target_snr", "n", "t_ms", "ratio"])
        for p in P_VALUES:
            noise = GateNoise(p)
            for target in TARGETS:
                t1 = time_to_snr(SchemeConfig.noisy(1, RATES, noise), target)
                for n in range(1, 11):
                    tn = time_to_snr(SchemeConfig.noisy(n, RATES, noise), target)
                    if t1 is None or tn is None:
                        continue
                    w.writerow([p, target, n, f"{tn:.12g}", f"{t1 / tn:.12g}"])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
