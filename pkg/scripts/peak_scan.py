"""Peak SNR and its window length as the register grows, noisy defaults."""

import csv
import pathlib

from readout_tradeoff import GateNoise, RateParams, SchemeConfig, peak_snr

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "results"


def main():
    OUT_DIR.mkdir(exist_ok=True)
    rates = RateParams(3.5, 14.0, 0.0041)
    noise = GateNoise(0.01)
    path = OUT_DIR / "peak_snr.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "s_max", "t_max_ms"])
        for n in range(1, 11):
            s_max, t_max = peak_snr(SchemeConfig.noisy(n, rates, noise))
            w.writerow([n, f"{s_max:.12g}", f"{t_max:.12g}"])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
