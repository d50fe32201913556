"""Render the two summary figures from the CSVs written by `cvqkd figures`.

Usage:
    cvqkd figures --out-dir figure_data
    python demos/plot_figures.py figure_data

Figure 1: key rate versus transmission with noiseless detectors: ideal
versus Cascade-fit error correction, postselected DR versus RR, and the
postselected RR combination. Figure 2: the postselected protocols with
detector excess noise 0.1 against their noiseless counterparts.
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FIG1 = [
    ("fig1_rr_ideal", "RR, ideal EC", "C0-"),
    ("fig1_dr_ps_ideal", "DR + PS, ideal EC", "C1-"),
    ("fig1_rr_cascade", "RR, Cascade fit", "C0--"),
    ("fig1_dr_ps_cascade", "DR + PS, Cascade fit", "C1--"),
    ("fig1_rr_ps_cascade", "RR + PS, Cascade fit", "C2:"),
]
FIG2 = [
    ("fig2_rr_ps_ideal_d0", "RR + PS, ideal EC, $\\delta=0$", "C0-"),
    ("fig2_dr_ps_ideal_d0", "DR + PS, ideal EC, $\\delta=0$", "C1-"),
    ("fig2_rr_ps_cascade_d0.1", "RR + PS, Cascade fit, $\\delta=0.1$", "C0--"),
    ("fig2_dr_ps_cascade_d0.1", "DR + PS, Cascade fit, $\\delta=0.1$", "C1--"),
]


def read_curve(directory: Path, stem: str):
    etas, rates = [], []
    with open(directory / f"{stem}.csv", newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["error"]:
                continue
            etas.append(float(row["eta"]))
            rates.append(float(row["G"]))
    return etas, rates


def render(directory: Path, curves, title: str, target: Path) -> None:
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for stem, label, style in curves:
        etas, rates = read_curve(directory, stem)
        kept = [(x, g) for x, g in zip(etas, rates) if g > 0.0]
        if kept:
            ax.semilogy(*zip(*kept), style, label=label)
    ax.set_xlabel(r"transmission $\eta$")
    ax.set_ylabel("secret bits per signal")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(target, dpi=150)
    print(f"wrote {target}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("data_dir", type=Path, help="directory written by 'cvqkd figures'")
    args = parser.parse_args()
    render(args.data_dir, FIG1, "noiseless detectors", args.data_dir / "figure1.png")
    render(args.data_dir, FIG2, "detector excess noise", args.data_dir / "figure2.png")


if __name__ == "__main__":
    main()
