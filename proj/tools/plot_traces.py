#!/usr/bin/env python3
"""Plot objective gap against effective passes for trace CSVs.

usage: plot_traces.py RESULTS_DIR [--out plot.png] [--time]
"""
import argparse
import csv
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read_trace(path):
    xs_pass, xs_time, ys, gap = [], [], [], False
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            gap = bool(row["gap"])
            xs_pass.append(float(row["effective_passes"]))
            xs_time.append(float(row["wall_seconds"]))
            ys.append(float(row["gap"] or row["objective"]))
    return xs_pass, xs_time, ys, gap


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("results")
    ap.add_argument("--out", default=None)
    ap.add_argument("--time", action="store_true", help="wall-clock seconds on the x axis")
    args = ap.parse_args()

    root = pathlib.Path(args.results)
    traces = sorted(p for p in root.glob("*.csv") if p.name != "summary.csv")
    if not traces:
        raise SystemExit(f"no traces in {root}")

    fig, ax = plt.subplots(figsize=(6, 4))
    has_gap = False
    for path in traces:
        passes, secs, ys, gap = read_trace(path)
        has_gap = has_gap or gap
        xs = secs if args.time else passes
        if gap:
            ys = [max(y, 1e-16) for y in ys]
        ax.plot(xs, ys, label=path.stem)
    if has_gap:
        ax.set_yscale("log")
    ax.set_xlabel("seconds" if args.time else "effective passes")
    ax.set_ylabel("objective gap" if has_gap else "objective")
    ax.legend(fontsize="small")
    fig.tight_layout()
    out = args.out or str(root / "traces.png")
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
