"""Print the default and display-adapted matrices next to the published tables."""

import argparse

import numpy as np

from aqm import golden
from aqm.display import PRESETS, adapt_fwm, adaptive_qm, parse_geometry
from aqm.fwm import FrequencyWeightMatrix, compute_fwm
from aqm.qm import default_inter_qm, fwm_to_qm


def show(title, matrix, fmt):
    print(title)
    for row in np.asarray(matrix):
        print("  " + " ".join(fmt.format(v) for v in row))


def max_abs(a, b):
    return float(np.max(np.abs(np.asarray(a, float) - np.asarray(b, float))))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--all-presets", action="store_true", help="also print every preset AQM")
    args = parser.parse_args()

    fwm = compute_fwm()
    show("weighting matrix, default viewing conditions", fwm.values, "{:.4f}")
    print(f"  max |diff| vs published: {max_abs(fwm.values, golden.FWM_DEFAULT):.2e}")

    qm = fwm_to_qm(fwm)
    show("default intra QM", qm.entries, "{:3d}")
    print(f"  exact match: {np.array_equal(qm.entries, golden.QM_INTRA)}")
    print(f"default inter QM exact match: {np.array_equal(default_inter_qm().entries, golden.QM_INTER)}")

    g = parse_geometry("4k")
    print(f"4K display parameter w = {g.w:.10f}")
    adapted = adapt_fwm(fwm, g)
    show("4K adapted weighting matrix", adapted.values, "{:.4f}")
    print(f"  max |diff| vs published, full precision input: {max_abs(adapted.values, golden.FWM_4K):.2e}")
    from_print = adapt_fwm(FrequencyWeightMatrix(golden.FWM_DEFAULT), g)
    print(f"  max |diff| vs published, 4-decimal input:      {max_abs(from_print.values, golden.FWM_4K):.2e}")
    aqm = adaptive_qm(g)
    show("4K intra AQM", aqm.entries, "{:3d}")
    print(f"  exact match: {np.array_equal(aqm.entries, golden.AQM_INTRA_4K)}")

    if args.all_presets:
        for name in PRESETS:
            show(f"AQM {name} {PRESETS[name][0]}x{PRESETS[name][1]}", adaptive_qm(parse_geometry(name)).entries, "{:3d}")


if __name__ == "__main__":
    main()
