"""Experiment tables and figures: enumeration scaling and the width sandwich.

Each experiment returns plain rows; :func:`write_report` saves them as CSV
next to a matplotlib figure.
"""

from __future__ import annotations

import csv
import math
import os
from fractions import Fraction

from .decomp import exact_width
from .enumeration import run as enumerate_run
from .game import army_width
from .generators import generate_hn, generate_matching, generate_tight, generate_universal
from .hypergraph import Hypergraph
from .weights import fractional_edge_cover


def triangle() -> Hypergraph:
    return Hypergraph([["a", "b"], ["b", "c"], ["a", "c"]])


def path(k: int) -> Hypergraph:
    return Hypergraph([[f"p{j}", f"p{j + 1}"] for j in range(k)])


def named_corpus() -> dict[str, Hypergraph]:
    corpus = {"H_2": generate_hn(2), "triangle": triangle()}
    for k in range(1, 4):
        corpus[f"matching_{k}"] = generate_matching(k)
    for n in range(1, 5):
        corpus[f"universal_{n}"] = generate_universal(n)
    for k in range(1, 5):
        corpus[f"path_{k}"] = path(k)
    corpus["cycle_4"] = Hypergraph([["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]])
    corpus["clique_4"] = Hypergraph([[u, v] for u in "abcd" for v in "abcd" if u < v])
    return corpus


def scaling_rows(n0_values=(2, 3, 4)) -> list[dict]:
    """Extension checks of the prefix enumeration on tight triangle instances."""
    rows = []
    rho = fractional_edge_cover(triangle())[0]
    for n0 in n0_values:
        inst = generate_tight(triangle(), n0)
        res = enumerate_run(inst)
        big_n = max(len(c.relation) for c in inst.constraints)
        trend = big_n ** float(rho)
        rows.append({
            "n0": n0,
            "N": big_n,
            "solutions": len(res.solutions),
            "extension_checks": res.extension_checks,
            "N_pow_rho": trend,
            "ratio": res.extension_checks / trend,
        })
    return rows


def sandwich_rows(corpus: dict[str, Hypergraph] | None = None) -> list[dict]:
    rows = []
    for name, h in (corpus or named_corpus()).items():
        aw = army_width(h)
        fhw = exact_width(h, "fractional")[0]
        rows.append({
            "name": name,
            "vertices": len(h.vertices),
            "aw": aw,
            "fhw": fhw,
            "rho_star": fractional_edge_cover(h)[0],
            "holds": aw <= fhw <= 3 * aw + 2,
        })
    return rows


def _fmt(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return v


def write_csv(path_: str, rows: list[dict], delimiter: str = ",") -> None:
    with open(path_, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter=delimiter)
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})


def plot_scaling(rows: list[dict], out: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["N"] for r in rows]
    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    ax.loglog(ns, [r["extension_checks"] for r in rows], "o-", label="extension checks")
    ax.loglog(ns, [r["solutions"] for r in rows], "s--", label="solutions")
    c = rows[0]["extension_checks"] / rows[0]["N_pow_rho"]
    ax.loglog(ns, [c * r["N_pow_rho"] for r in rows], ":", color="gray", label=r"$\propto N^{3/2}$")
    ax.set_xticks(ns)
    ax.set_xticklabels([str(n) for n in ns])
    ax.minorticks_off()
    ax.set_xlabel("N (max relation size)")
    ax.set_ylabel("count")
    ax.set_title("tight triangle instances")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def plot_sandwich(rows: list[dict], out: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    aw = [float(r["aw"]) for r in rows]
    fhw = [float(r["fhw"]) for r in rows]
    hi = max(aw) + 0.5
    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    ax.fill_between([0, hi], [0, hi], [2, 3 * hi + 2], color="tab:blue", alpha=0.12, label="allowed band")
    ax.scatter(aw, fhw, color="tab:red", zorder=3, s=18)
    groups: dict[tuple, list[str]] = {}
    for r, x, y in zip(rows, aw, fhw):
        groups.setdefault((x, y), []).append(r["name"])
    for (x, y), names in groups.items():
        ax.annotate("\n".join(names), (x, y), fontsize=6, xytext=(4, 0), textcoords="offset points",
                    va="center")
    ax.set_xlim(0, hi)
    ax.set_ylim(0, max(fhw) + 1.5)
    ax.set_xlabel("army width")
    ax.set_ylabel("fractional hypertree width")
    ax.legend(frameon=False, fontsize=8, loc="upper left")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)


def write_report(out_dir: str, n0_values=(2, 3, 4)) -> dict[str, str]:
    os.makedirs(out_dir, exist_ok=True)
    files = {
        "scaling_csv": os.path.join(out_dir, "scaling.csv"),
        "scaling_png": os.path.join(out_dir, "scaling.png"),
        "sandwich_csv": os.path.join(out_dir, "sandwich.csv"),
        "sandwich_png": os.path.join(out_dir, "sandwich.png"),
    }
    scaling = scaling_rows(n0_values)
    write_csv(files["scaling_csv"], scaling)
    plot_scaling(scaling, files["scaling_png"])
    sandwich = sandwich_rows()
    write_csv(files["sandwich_csv"], sandwich)
    plot_sandwich(sandwich, files["sandwich_png"])
    return files


def scaling_spread(rows: list[dict]) -> float:
    """max/min of checks / N**rho* across the rows (1.0 means a perfect trend)."""
    ratios = [r["ratio"] for r in rows]
    return max(ratios) / min(ratios) if ratios and min(ratios) > 0 else math.inf
