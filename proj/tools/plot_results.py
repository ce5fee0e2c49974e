#!/usr/bin/env python3
"""Render the qpf CSV outputs as figures.

Usage: python3 tools/plot_results.py OUT_DIR [--save DIR]

Expects the files produced by the CLI commands (t1_spectrum.csv,
coupling_sweep.csv, snr_map.csv, fidelity_map.csv, fidelity_contours.csv);
missing files are skipped.
"""

import argparse
import csv
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def plot_t1_spectrum(path, ax):
    header, rows = read_csv(path)
    freq = [float(r[0]) for r in rows]
    for col in range(1, len(header)):
        t1 = [float(r[col]) for r in rows]
        label = header[col].replace("T1_s_CF_", "C_F = ")
        ax.semilogy(freq, t1, label=label, linewidth=1.0)
    ax.axhline(1e-3, color="k", linestyle="--", linewidth=0.8)
    ax.set_xlabel("qubit frequency (GHz)")
    ax.set_ylabel("T1 bound (s)")
    ax.set_title("Purcell T1 spectrum")
    ax.legend(fontsize=7)


def plot_coupling_sweep(path, ax):
    header, rows = read_csv(path)
    freq = [float(r[0]) for r in rows]
    for col in range(1, len(header)):
        g = [float(r[col]) for r in rows]
        style = "-" if "_CF_" in header[col] else ":"
        ax.plot(freq, g, style, label=header[col].replace("g_MHz_", ""), linewidth=1.0)
    ax.set_xlabel("qubit frequency (GHz)")
    ax.set_ylabel("g (MHz)")
    ax.set_title("qubit-resonator coupling")
    ax.legend(fontsize=6, ncol=2)


def plot_snr_map(path, ax):
    _, rows = read_csv(path)
    curves = {}
    for r in rows:
        curves.setdefault(float(r[1]), []).append((float(r[0]), float(r[2])))
    for c_q, pts in sorted(curves.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"C_q = {c_q:g} fF")
    ax.axhline(1.0, color="k", linestyle="--", linewidth=0.8)
    ax.set_xlabel("C_F (fF)")
    ax.set_ylabel("kappa / 2 chi")
    ax.set_title("measurement-rate balance")
    ax.legend(fontsize=7)


def plot_fidelity_map(map_path, contour_path, ax):
    _, rows = read_csv(map_path)
    nbar = sorted({float(r[0]) for r in rows})
    tm = sorted({float(r[1]) for r in rows})
    grid = [[0.0] * len(tm) for _ in nbar]
    index = {(float(r[0]), float(r[1])): float(r[2]) for r in rows}
    for i, n in enumerate(nbar):
        for k, t in enumerate(tm):
            grid[i][k] = index[(n, t)]
    mesh = ax.pcolormesh(tm, nbar, grid, shading="nearest", vmin=0.5, vmax=1.0)
    plt.colorbar(mesh, ax=ax, label="assignment fidelity")
    if contour_path.exists():
        _, crows = read_csv(contour_path)
        curves = {}
        for r in crows:
            curves.setdefault(r[0], []).append((float(r[2]), float(r[1])))
        for name, pts in curves.items():
            pts.sort()
            style = "-." if name == "n_crit" else "--"
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            ax.plot(xs, ys, style, linewidth=1.0, label=name)
        ax.legend(fontsize=7)
    ax.set_xlim(min(tm), max(tm))
    ax.set_ylim(min(nbar), max(nbar))
    ax.set_xlabel("t_m (us)")
    ax.set_ylabel("mean photon number")
    ax.set_title("assignment fidelity")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--save", type=pathlib.Path, default=None)
    args = parser.parse_args()
    save_dir = args.save or args.out_dir
    save_dir.mkdir(parents=True, exist_ok=True)

    panels = [
        ("t1_spectrum.csv", plot_t1_spectrum),
        ("coupling_sweep.csv", plot_coupling_sweep),
        ("snr_map.csv", plot_snr_map),
    ]
    made_any = False
    for name, fn in panels:
        path = args.out_dir / name
        if not path.exists():
            continue
        fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
        fn(path, ax)
        fig.tight_layout()
        target = save_dir / (path.stem + ".png")
        fig.savefig(target)
        plt.close(fig)
        print(f"wrote {target}")
        made_any = True

    fmap = args.out_dir / "fidelity_map.csv"
    if fmap.exists():
        fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
        plot_fidelity_map(fmap, args.out_dir / "fidelity_contours.csv", ax)
        fig.tight_layout()
        target = save_dir / "fidelity_map.png"
        fig.savefig(target)
        plt.close(fig)
        print(f"wrote {target}")
        made_any = True

    if not made_any:
        print(f"no qpf CSV files found in {args.out_dir}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
