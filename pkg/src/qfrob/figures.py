"""Optional PNG figures for CLI reports (matplotlib, imported lazily)."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def check_timings(report, path: str | Path) -> Path:
    """Bar chart of total seconds per check id, failures in red."""
    plt = _pyplot()
    seconds: dict[str, float] = defaultdict(float)
    failed: set[str] = set()
    for c in report.checks:
        seconds[c.id] += c.seconds
        if c.status == "fail":
            failed.add(c.id)
    ids = sorted(seconds)
    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.3 * len(ids))))
    colors = ["tab:red" if i in failed else "tab:blue" for i in ids]
    ax.barh(ids, [seconds[i] for i in ids], color=colors)
    ax.set_xlabel("seconds")
    ax.set_title(f"checks for {report.subject}")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def birank_sequence(name: str, br, path: str | Path) -> Path:
    """d_k = rank ρ(a_k) against k."""
    plt = _pyplot()
    ks = list(range(len(br.hp_coefficients)))
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.plot(ks, br.hp_coefficients, marker="o")
    ax.set_xlabel("k")
    ax.set_ylabel("rank of antisymmetrizer")
    ax.set_title(f"{name}: bi-rank {br}, series {br.series_text()}")
    ax.set_xticks(ks)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
