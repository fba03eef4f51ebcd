"""Export paths: decision tables and tournament results as CSV/JSON, trace
logs as line-delimited JSON, and matplotlib figures rendered to files next
to the delimited output.

Column order follows the table presentation: red, yellow, green.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .model import decimal_str
from .solver import DecisionRow

TABLE_HEADER = "r_cup,y_cup,g_cup,r_fp,y_fp,g_fp,decision_sg0,decision_sg1,decision_sg2"


def _cell(value: Fraction | float) -> str:
    return decimal_str(value, 6)


def table_csv_lines(rows: list[DecisionRow]) -> list[str]:
    lines = [TABLE_HEADER]
    for row in rows:
        cup, fp = row.cup, row.footprints
        lines.append(
            f"{cup.red},{cup.yellow},{cup.green},"
            f"{fp.red},{fp.yellow},{fp.green},"
            f"{_cell(row.decisions[0])},{_cell(row.decisions[1])},{_cell(row.decisions[2])}"
        )
    return lines


def write_table_csv(rows: list[DecisionRow], path: Path | str) -> None:
    Path(path).write_text("\n".join(table_csv_lines(rows)) + "\n")


def table_json_records(rows: list[DecisionRow]) -> list[dict]:
    out = []
    for row in rows:
        cup, fp = row.cup, row.footprints
        out.append(
            {
                "r_cup": cup.red, "y_cup": cup.yellow, "g_cup": cup.green,
                "r_fp": fp.red, "y_fp": fp.yellow, "g_fp": fp.green,
                "decision_sg0": float(_cell(row.decisions[0])),
                "decision_sg1": float(_cell(row.decisions[1])),
                "decision_sg2": float(_cell(row.decisions[2])),
            }
        )
    return out


def write_table_json(rows: list[DecisionRow], path: Path | str) -> None:
    Path(path).write_text(json.dumps(table_json_records(rows), indent=1) + "\n")


def write_tournament_json(summary, path: Path | str) -> None:
    Path(path).write_text(json.dumps(summary.to_dict(), indent=2) + "\n")


def write_tournament_csv(summary, path: Path | str) -> None:
    d = summary.to_dict()
    lines = [
        "policy,games,wins,win_rate,win_rate_se,turns,"
        "mean_brains_per_turn,mean_brains_se,bust_rate,capped_turns"
    ]
    for name, st in d["policies"].items():
        lines.append(
            f"{name},{st['games']},{st['wins']},{st['win_rate']:.6f},"
            f"{st['win_rate_se']:.6f},{st['turns']},"
            f"{st['mean_brains_per_turn']:.6f},{st['mean_brains_se']:.6f},"
            f"{st['bust_rate']:.6f},{st['capped_turns']}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_trace_jsonl(records: list[dict], path: Path | str) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


# --- figures ------------------------------------------------------------------

def _new_fig(width: float = 6.0, height: float = 3.6):
    fig, ax = plt.subplots(figsize=(width, height), dpi=120)
    ax.grid(True, alpha=0.3)
    return fig, ax


def save_distribution_figure(brain_probs, shotgun_probs, path: Path | str,
                             title: str = "Next-roll outcome distributions") -> Path:
    """Grouped bars of P(brains = x) and P(shotguns = x) for x in 0..3."""
    x = np.arange(4)
    fig, ax = _new_fig()
    width = 0.38
    ax.bar(x - width / 2, [float(p) for p in brain_probs], width, label="brains")
    ax.bar(x + width / 2, [float(p) for p in shotgun_probs], width, label="shotguns")
    ax.set_xticks(x)
    ax.set_xlabel("count on next roll")
    ax.set_ylabel("probability")
    ax.set_title(title)
    ax.legend()
    out = Path(path)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out


def save_table_figure(rows: list[DecisionRow], path: Path | str) -> Path:
    """Decision-value spread by shotgun count across the whole table."""
    fig, axes = plt.subplots(1, 3, figsize=(9.6, 3.2), dpi=120, sharey=False)
    for s, ax in enumerate(axes):
        values = np.array([float(r.decisions[s]) for r in rows])
        ax.hist(values, bins=40, color="C0")
        ax.set_title(f"{s} shotgun{'s' if s != 1 else ''}")
        ax.set_xlabel("decision value")
        if s == 0:
            ax.set_ylabel("table rows")
        ax.grid(True, alpha=0.3)
    fig.suptitle("Keep-rolling thresholds across all cup/footprint states")
    out = Path(path)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out


def save_tournament_figure(summary, path: Path | str) -> Path:
    """Win rates with standard-error bars plus mean banked brains per turn."""
    d = summary.to_dict()
    names = list(d["policies"])
    win = [d["policies"][n]["win_rate"] for n in names]
    win_se = [d["policies"][n]["win_rate_se"] for n in names]
    brains = [d["policies"][n]["mean_brains_per_turn"] for n in names]
    brains_se = [d["policies"][n]["mean_brains_se"] for n in names]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.4), dpi=120)
    x = np.arange(len(names))
    ax1.bar(x, win, yerr=win_se, capsize=4, color="C0")
    ax1.axhline(0.5, color="gray", linestyle="--", linewidth=1)
    ax1.set_xticks(x, names, rotation=20)
    ax1.set_ylabel("win rate")
    ax1.set_title(f"{d['games']} games, seed {d['seed']}")
    ax1.grid(True, alpha=0.3)
    ax2.bar(x, brains, yerr=brains_se, capsize=4, color="C1")
    ax2.set_xticks(x, names, rotation=20)
    ax2.set_ylabel("mean banked brains / turn")
    ax2.set_title("scoring rate")
    ax2.grid(True, alpha=0.3)
    out = Path(path)
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return out
