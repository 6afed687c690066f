"""Render sweep results to matplotlib figures alongside the delimited output.

The CSV remains the machine contract; the figures are a quick visual pass
over the same rows: how much slack each statement has, how the gap moves
with the interior point x, and how gaps distribute across the whole sweep.
"""

from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path

from .serialize import to_json
from .sweep import SweepResult, render_csv


def _agg_by_statement(result: SweepResult):
    gaps = defaultdict(list)
    for out in result.rows:
        if out.evaluated:
            gaps[out.report.statement_id].append(out.report.gap)
    return gaps


def _gap_vs_x_series(result: SweepResult):
    """Gap-vs-x curves for x-swept statements, one representative combo each.

    The representative combo for a statement is the lexicographically first
    (f, h, a, b, exponent) tuple, which makes the figure deterministic.
    """
    series = defaultdict(dict)
    for out in result.rows:
        if not out.evaluated:
            continue
        s = out.spec
        if s.x is None:
            continue
        key = (s.f_spec, s.h_spec or "", s.a, s.b, s.exponent if s.exponent is not None else 0.0)
        series[out.report.statement_id].setdefault(key, []).append((s.x, out.report.gap))
    picked = {}
    for sid, combos in series.items():
        key = sorted(combos)[0]
        pts = sorted(combos[key])
        picked[sid] = (key, pts)
    return picked


def write_figures(result: SweepResult, outdir: Path) -> list:
    """Write the three standard figures; returns the created paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    created = []

    gaps = _agg_by_statement(result)
    if gaps:
        fig, ax = plt.subplots(figsize=(8, 4.5))
        names = sorted(gaps)
        mins = [min(gaps[n]) for n in names]
        ax.bar(range(len(names)), mins, color="#4878b0")
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
        ax.set_ylabel("min gap (rhs - lhs)")
        ax.set_title("Worst-case slack per statement")
        ax.axhline(0.0, color="k", lw=0.8)
        fig.tight_layout()
        path = outdir / "min_gap_by_statement.png"
        fig.savefig(path, dpi=140)
        plt.close(fig)
        created.append(path)

    picked = _gap_vs_x_series(result)
    if picked:
        fig, ax = plt.subplots(figsize=(8, 4.5))
        for sid in sorted(picked):
            key, pts = picked[sid]
            xs = [p[0] for p in pts]
            ys = [p[1] for p in pts]
            ax.plot(xs, ys, marker="o", ms=3, label=f"{sid} ({key[0]}, h={key[1] or '-'})")
        ax.set_xlabel("interior point x")
        ax.set_ylabel("gap (rhs - lhs)")
        ax.set_title("Bound tightness across the interval")
        ax.legend(fontsize=7)
        fig.tight_layout()
        path = outdir / "gap_vs_x.png"
        fig.savefig(path, dpi=140)
        plt.close(fig)
        created.append(path)

    all_gaps = [g for gs in gaps.values() for g in gs if g > 0]
    if all_gaps:
        fig, ax = plt.subplots(figsize=(8, 4.5))
        ax.hist([math.log10(g) for g in all_gaps], bins=40, color="#6aa66a")
        ax.set_xlabel("log10 gap")
        ax.set_ylabel("rows")
        ax.set_title("Gap distribution over the sweep")
        fig.tight_layout()
        path = outdir / "gap_hist.png"
        fig.savefig(path, dpi=140)
        plt.close(fig)
        created.append(path)

    return created


def write_report(result: SweepResult, outdir: Path) -> list:
    """Write sweep.csv, summary.json and the figures into outdir."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    created = []

    csv_path = outdir / "sweep.csv"
    csv_path.write_text(render_csv(result), encoding="utf-8")
    created.append(csv_path)

    summary_path = outdir / "summary.json"
    summary_path.write_text(to_json(result.summary) + "\n", encoding="utf-8")
    created.append(summary_path)

    created.extend(write_figures(result, outdir))
    return created
