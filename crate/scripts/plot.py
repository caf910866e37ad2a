"""Plot a trajectory CSV or a sweep CSV written by `safestab`.

usage: python3 scripts/plot.py trajectory.csv [more.csv ...]
       python3 scripts/plot.py --sweep sweep.csv
"""

import argparse
import csv

import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return rows


def plot_trajectories(paths):
    fig, (ax_xy, ax_h, ax_u) = plt.subplots(1, 3, figsize=(15, 4.5))
    for path in paths:
        rows = read(path)
        t = [float(r["t"]) for r in rows]
        ax_xy.plot([float(r["x1"]) for r in rows], [float(r["x2"]) for r in rows], label=path)
        ax_h.plot(t, [float(r["h"]) for r in rows], label=path)
        ax_u.plot(t, [float(r["u"]) for r in rows], label=path)
    ax_xy.set(xlabel="x1", ylabel="x2")
    ax_h.axhline(0.0, color="k", lw=0.8)
    ax_h.set(xlabel="t", ylabel="h")
    ax_u.set(xlabel="t", ylabel="u")
    ax_xy.legend(fontsize="small")
    fig.tight_layout()
    plt.show()


def plot_sweep(path):
    rows = read(path)
    xs = [float(r["x1"]) for r in rows]
    ys = [float(r["x2"]) for r in rows]
    colors = ["tab:red" if r["compatible"] == "0" else "tab:green" for r in rows]
    plt.scatter(xs, ys, c=colors, s=4)
    plt.xlabel("x1")
    plt.ylabel("x2")
    plt.title("compatible (green) / incompatible (red)")
    plt.show()


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--sweep", action="store_true")
    p.add_argument("csv", nargs="+")
    args = p.parse_args()
    if args.sweep:
        plot_sweep(args.csv[0])
    else:
        plot_trajectories(args.csv)


if __name__ == "__main__":
    main()
