"""QP sweep over the synthetic corpus with per-image BD-rate of each enhancement layer.

Each enhancement layer is compared in isolation: the anchor codes only that
layer with the default matrix, every other layer keeps its adaptive matrix.
Rates are cumulative over the layers needed to decode the target.
"""

import argparse
import time
from pathlib import Path

from aqm.corpus import DEFAULT_SEED, DEFAULT_SIZE, corpus
from aqm.experiment import SWEEP_QPS, layer_curve, rows_to_csv, standard_layers, sweep
from aqm.metrics import bd_rate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=DEFAULT_SIZE)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--csv-dir", type=Path, default=None, help="write one report per image")
    args = parser.parse_args()

    specs = standard_layers(args.size)
    labels = [s.label for s in specs]
    targets = labels[1:]
    configs = [("adaptive", ["adaptive"] * len(specs))]
    for target in targets:
        configs.append((f"default-{target}", ["default" if lbl == target else "adaptive" for lbl in labels]))

    t0 = time.perf_counter()
    print(f"{'image':<10}" + "".join(f"{t:>10}" for t in targets))
    for name, img in corpus(args.size, args.seed).items():
        rows = sweep(img, specs, SWEEP_QPS, configs, args.workers)
        cells = []
        for target in targets:
            anchor = layer_curve(rows, target, f"default-{target}")
            cells.append(bd_rate(anchor, layer_curve(rows, target, "adaptive")))
        print(f"{name:<10}" + "".join(f"{c:>9.2f}%" for c in cells))
        if args.csv_dir:
            args.csv_dir.mkdir(parents=True, exist_ok=True)
            (args.csv_dir / f"{name}.csv").write_text(rows_to_csv(rows))
    print(f"elapsed {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
