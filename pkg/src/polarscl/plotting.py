"""Render FER/BER sweeps to image files next to the CSV they came from.

Import stays lazy in the CLI so plain decoding never pays the matplotlib
startup cost; the Agg backend keeps everything headless.
"""

import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)


def load_sweep_csv(path):
    """Rows of a simulation CSV as dicts with numeric values."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append(
                {
                    "ebn0_db": float(row["ebn0_db"]),
                    "frames": int(row["frames"]),
                    "fer": float(row["fer"]),
                    "ber": float(row["ber"]),
                    "ci_low": float(row["ci_low"]),
                    "ci_high": float(row["ci_high"]),
                }
            )
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return rows


def plot_sweeps(sweeps, out_path, show_ber: bool = False, title: str | None = None):
    """Plot one curve per (label, rows) pair on a semilog-y grid and save it.

    FER is drawn with solid lines and error bars from the 95% interval;
    ``show_ber`` adds dashed BER curves with the same colors.
    """
    if not sweeps:
        raise ValueError("nothing to plot")
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for label, rows in sweeps:
        x = [r["ebn0_db"] for r in rows]
        fer = [r["fer"] for r in rows]
        low = [max(r["fer"] - r["ci_low"], 0.0) for r in rows]
        high = [max(r["ci_high"] - r["fer"], 0.0) for r in rows]
        line = ax.errorbar(x, fer, yerr=[low, high], marker="o", capsize=3, label=f"{label} FER")
        if show_ber:
            ax.plot(
                x,
                [r["ber"] for r in rows],
                marker="x",
                linestyle="--",
                color=line.lines[0].get_color(),
                label=f"{label} BER",
            )
    ax.set_yscale("log")
    ax.set_xlabel(r"$E_b/N_0$ (dB)")
    ax.set_ylabel("error rate")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
