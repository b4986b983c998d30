"""Empirical lower-bound experiment: delimited table plus a rendered figure.

For each (k, n) cell the experiment draws seeded random bipartite graphs,
realizes them as subtree families, recovers the cross pattern, and records
how often neither the graph nor its bipartite complement contains the
target K_{a,b}.  Frequencies are reported, never asserted: the existence
guarantee only starts at k = 17, far above desk scale.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .core import Graph
from .extremal import PRNG_NAME, gen_lower_bound, lower_bound_dimensions
from .oracle import check_no_kab


@dataclass(frozen=True)
class ExperimentRow:
    k: int
    n: int
    a: int
    b: int
    trials: int
    no_kab_count: int

    @property
    def frequency(self) -> float:
        return self.no_kab_count / self.trials if self.trials else 0.0


def cross_graph_of(fam, m: int) -> Graph:
    """Recover the bipartite cross pattern of a realized family.

    Left vertices are the part-2 singletons 0..m-1, right vertices the
    part-1 stars; only cross intersections become edges.
    """
    from .core import intersection_edges_by_id

    edges = [
        (u, v)
        for u, v in intersection_edges_by_id(fam)
        if (u < m) != (v < m)
    ]
    n = len(fam.members)
    return Graph.from_edges(n, edges)


def run_experiment(ks=(4, 6), n_max: int = 14, seeds: int = 100) -> list:
    rows = []
    for k in ks:
        for n in range(k, n_max + 1):
            a, b = lower_bound_dimensions(k, n)
            hits = 0
            for seed in range(seeds):
                fam, _, _ = gen_lower_bound(k, n, seed)
                g = cross_graph_of(fam, k)
                if check_no_kab(g, k, a, b):
                    hits += 1
            rows.append(ExperimentRow(k, n, a, b, seeds, hits))
    return rows


def format_table(rows) -> str:
    lines = ["k\tn\ta\tb\ttrials\tno_kab\tfrequency"]
    for r in rows:
        lines.append(
            f"{r.k}\t{r.n}\t{r.a}\t{r.b}\t{r.trials}\t{r.no_kab_count}\t{r.frequency:.3f}"
        )
    return "\n".join(lines) + "\n"


def render_figure(rows, path: str) -> None:
    """Frequency-versus-n lines, one per k, written to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for k in sorted({r.k for r in rows}):
        mine = [r for r in rows if r.k == k]
        mine.sort(key=lambda r: r.n)
        ax.plot(
            [r.n for r in mine],
            [r.frequency for r in mine],
            marker="o",
            label=f"k={k} (a={mine[0].a})",
        )
    ax.set_xlabel("n (right side of the random bipartite graph)")
    ax.set_ylabel("fraction of seeds without the target biclique")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"no-K(a,b) frequency, prng={PRNG_NAME}")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(rows, out_dir: str, stem: str = "lower_bound_frequencies"):
    """Write the TSV and the PNG next to each other; returns both paths."""
    os.makedirs(out_dir, exist_ok=True)
    table_path = os.path.join(out_dir, stem + ".tsv")
    figure_path = os.path.join(out_dir, stem + ".png")
    with open(table_path, "w", encoding="utf-8") as fh:
        fh.write(format_table(rows))
    render_figure(rows, figure_path)
    return table_path, figure_path
