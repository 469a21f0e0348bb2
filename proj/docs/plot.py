#!/usr/bin/env python3
"""Plot jmatrix CSV output: reference_N*.csv and scatter.csv."""

import argparse
import csv
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read(path):
    columns, rows = None, []
    with open(path, newline="") as fh:
        for line in fh:
            if line.startswith("# columns = "):
                columns = line[len("# columns = "):].strip().split(",")
            elif line.strip() and not line.startswith("#"):
                rows.append(next(csv.reader([line])))
    if columns is None:
        sys.exit(f"{path}: no column line")
    return {c: [r[i] for r in rows] for i, c in enumerate(columns)}


def floats(values):
    return [float(v) for v in values]


def plot_reference(path):
    d = read(path)
    fig, axes = plt.subplots(1, 2, figsize=(11, 4))
    for ax, window, scale in zip(axes, ("near", "far"), ("log", "linear")):
        keep = [i for i, w in enumerate(d["window"]) if w == window]
        x = [float(d["x"][i]) for i in keep]
        ax.plot(x, [float(d["re_exact"][i]) for i in keep], "k-", label="exact")
        ax.plot(x, [float(d["re_series"][i]) for i in keep], "r--", label="series")
        ax.set_xscale(scale)
        ax.set_xlabel("lambda r")
        ax.set_ylabel("Re chi+")
        ax.set_title(f"{window} window")
        ax.legend()
    fig.suptitle(path.stem)
    fig.tight_layout()
    out = path.with_suffix(".png")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def plot_scatter(path):
    d = read(path)
    ok = [i for i, f in enumerate(d["flag"]) if f in ("ok", "unconverged")]
    e = floats(d["E"])
    delta = floats(d["delta"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([e[i] for i in ok], [delta[i] for i in ok], "o-", ms=3)
    ax.set_xlabel("E")
    ax.set_ylabel("phase shift (rad)")
    fig.tight_layout()
    out = path.with_suffix(".png")
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir", type=pathlib.Path)
    args = parser.parse_args()
    made = [plot_reference(p) for p in sorted(args.outdir.glob("reference_N*.csv"))]
    scatter = args.outdir / "scatter.csv"
    if scatter.exists():
        made.append(plot_scatter(scatter))
    if not made:
        sys.exit(f"no jmatrix csv files in {args.outdir}")
    for p in made:
        print(f"wrote {p}")


if __name__ == "__main__":
    main()
