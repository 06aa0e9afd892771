"""Report rendering for crosscheck runs: a delimited summary plus
matplotlib figures, written side by side into a directory."""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def render_report(results, outdir: str) -> list[str]:
    """Write crosscheck.csv plus bar-chart figures; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []

    csv_path = os.path.join(outdir, "crosscheck.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["battery", "trials", "failures", "seconds", "passed", "notes"])
        for r in results:
            writer.writerow([r.name, r.trials, r.failures, f"{r.seconds:.3f}", r.passed, r.notes])
    written.append(csv_path)

    names = [r.name for r in results]
    short = [n.replace("-", "\n") for n in names]

    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(names)), 4))
    ax.bar(range(len(names)), [r.trials for r in results], color="#4878cf", label="trials")
    ax.bar(range(len(names)), [r.failures for r in results], color="#d65f5f", label="failures")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(short, fontsize=7)
    ax.set_ylabel("count")
    ax.set_title("crosscheck batteries: trials and failures")
    ax.legend()
    fig.tight_layout()
    trials_path = os.path.join(outdir, "crosscheck_trials.png")
    fig.savefig(trials_path, dpi=150)
    plt.close(fig)
    written.append(trials_path)

    fig, ax = plt.subplots(figsize=(max(6, 1.1 * len(names)), 4))
    ax.bar(range(len(names)), [r.seconds for r in results], color="#6acc65")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(short, fontsize=7)
    ax.set_ylabel("seconds")
    ax.set_title("crosscheck batteries: runtime")
    fig.tight_layout()
    runtime_path = os.path.join(outdir, "crosscheck_runtime.png")
    fig.savefig(runtime_path, dpi=150)
    plt.close(fig)
    written.append(runtime_path)

    return written
