#!/usr/bin/env python3
"""Plot bench CSV output: mean metric against n on log-log axes, one panel per metric."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--out", default="bench.png")
    ap.add_argument("--metrics", nargs="*", help="metrics to plot (default: all)")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    metrics = args.metrics or sorted(df["metric"].unique())
    fig, axes = plt.subplots(len(metrics), 1, figsize=(6, 3 * len(metrics)), squeeze=False)
    for ax, metric in zip(axes[:, 0], metrics):
        sub = df[df["metric"] == metric]
        mean = sub.groupby("n")["value"].mean()
        ax.plot(mean.index, mean.values, "o-")
        if (mean.values > 0).all() and len(mean) > 1:
            ax.set_xscale("log")
            ax.set_yscale("log")
            slope = np.polyfit(np.log(mean.index), np.log(mean.values), 1)[0]
            ax.set_title(f"{metric} (slope {slope:.2f})")
        else:
            ax.set_title(metric)
        ax.set_xlabel("n")
    fig.tight_layout()
    fig.savefig(args.out)


if __name__ == "__main__":
    main()
