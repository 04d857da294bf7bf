"""Figures rendered from the results CSV. Every plotted number comes from the CSV."""

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .schema import SchemaMismatch, read_results  # noqa: E402

KINDS = ("mu-scatter", "line-scan", "n2-heatmap", "weight2-surface")

@dataclass
class FigureSpec:
    kind: str
    input: Path
    output: Path
    sigma: float = 3.0


def _finite(v):
    return not math.isnan(v)


def _classify(row, sigma):
    gap, se = row["gap"], row["gap_stderr"]
    if not (_finite(gap) and _finite(se)):
        return "unknown"
    if gap > sigma * se:
        return "bad"
    if gap < -sigma * se:
        return "violation"
    return "good"


_METADATA = {
    ".png": {"Software": None},
    ".svg": {"Date": None},
    ".pdf": {"Creator": None, "Producer": None, "CreationDate": None},
}


def _save(fig, path):
    # no software tags or dates, so reruns are byte-identical
    fig.savefig(path, dpi=100, metadata=_METADATA.get(Path(path).suffix.lower()))
    plt.close(fig)


def _mu_scatter(rows, spec):
    fig, ax = plt.subplots(figsize=(5, 5))
    colors = {"good": "tab:blue", "bad": "tab:red", "violation": "black", "unknown": "tab:gray"}
    groups = {}
    for row in rows:
        groups.setdefault(_classify(row, spec.sigma), []).append((row["mu1"], row["mu2"]))
    for label in sorted(groups):
        xs, ys = zip(*groups[label])
        ax.scatter(xs, ys, s=18, c=colors[label], label=label)
    ax.plot([0, 0.5], [1 / 3, 0.5], "k--", lw=0.8, label="3 mu2 - mu1 = 1")
    ax.set_xlim(0, 0.5)
    ax.set_ylim(0, 0.5)
    ax.set_xlabel("mu1")
    ax.set_ylabel("mu2")
    ax.legend(loc="lower right", fontsize=8)
    return fig


def _line_scan(rows, spec):
    pts = sorted((r["mu1"], r["lambda_1"] + r["lambda_2"], 2 * (r["mu1"] + r["mu2"])) for r in rows)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", label="lambda_1 + lambda_2")
    ax.plot([p[0] for p in pts], [p[2] for p in pts], "k--", label="2 (mu1 + mu2)")
    ax.set_xlabel("mu1")
    ax.legend()
    return fig


def _n2_heatmap(rows, spec):
    fig, ax = plt.subplots(figsize=(6, 5))
    sc = ax.scatter([r["r"] for r in rows], [r["x"] for r in rows], c=[r["lambda_1"] for r in rows],
                    cmap="viridis", vmin=0.0, vmax=1.0, s=40, marker="s")
    fig.colorbar(sc, ax=ax, label="lambda_1")
    labelled = [r for r in rows if _finite(r["zone"])]
    zones = [r["zone"] for r in labelled]
    # zone boundaries as level sets of the chamber labels in the CSV
    if len(set(zones)) > 1 and len(labelled) >= 3:
        ax.tricontour([r["r"] for r in labelled], [r["x"] for r in labelled], zones,
                      levels=[1.5, 2.5, 3.5, 4.5], colors="white", linewidths=0.8)
    ax.set_xlim(0, 0.5)
    ax.set_ylim(0, 1)
    ax.set_xlabel("r")
    ax.set_ylabel("x")
    return fig


def _weight2_surface(rows, spec):
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    sc = left.scatter([r["x"] for r in rows], [r["y"] for r in rows], c=[r["gap"] for r in rows], cmap="magma", s=60)
    fig.colorbar(sc, ax=left, label="Delta")
    left.set_xlabel("x")
    left.set_ylabel("y")
    right.errorbar([r["x"] + r["y"] for r in rows], [r["gap"] for r in rows],
                   yerr=[r["gap_stderr"] for r in rows], fmt="o", ms=3)
    right.set_xlabel("x + y")
    right.set_ylabel("Delta")
    return fig


_RENDERERS = {
    "mu-scatter": (_mu_scatter, ("mu1", "mu2", "gap", "gap_stderr")),
    "line-scan": (_line_scan, ("mu1", "mu2", "lambda_1", "lambda_2")),
    "n2-heatmap": (_n2_heatmap, ("r", "x", "lambda_1", "zone")),
    "weight2-surface": (_weight2_surface, ("x", "y", "gap", "gap_stderr")),
}


def make_figures(spec):
    if spec.kind not in _RENDERERS:
        raise ValueError(f"unknown figure kind {spec.kind!r}")
    render, needed = _RENDERERS[spec.kind]
    rows = read_results(spec.input)
    if not rows:
        raise SchemaMismatch(needed[0], "no rows")
    for column in needed:
        if all(math.isnan(r[column]) for r in rows):
            raise SchemaMismatch(column, f"empty for {spec.kind}")
    plt.rcParams["svg.hashsalt"] = "hyplyap"
    fig = render(rows, spec)
    _save(fig, spec.output)
    return spec.output


def main(argv=None):
    parser = argparse.ArgumentParser(prog="make-figures")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="input", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument("--sigma", type=float, default=3.0)
    args = parser.parse_args(argv)
    try:
        make_figures(FigureSpec(args.kind, args.input, args.out, args.sigma))
    except SchemaMismatch as exc:
        print(f"SchemaMismatch: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
