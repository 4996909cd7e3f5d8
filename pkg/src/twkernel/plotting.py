"""Figures written next to CLI reports.

Uses an Agg canvas directly so no global matplotlib backend is touched.
"""

from __future__ import annotations

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .composer import GROUPS, ComposedInstance
from .kernel import KernelResult, size_bound

_RULE_COLORS = {"isolated": "tab:blue", "expansion": "tab:orange"}


def _save(fig: Figure, path: str) -> None:
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, bbox_inches="tight")


def plot_kernel_trace(result: KernelResult, cover_size: int, path: str) -> None:
    """Vertex count before each reduction step, against the ``|X| + 2 C(|X|,2)`` bound."""
    fig = Figure(figsize=(6, 3.5))
    ax = fig.add_subplot()
    steps = list(range(len(result.trace) + 1))
    counts = [s.vertices_before for s in result.trace] + [result.final_n or 0]
    ax.plot(steps, counts, color="0.3", lw=1)
    for i, s in enumerate(result.trace):
        ax.scatter(i, s.vertices_before, s=12, color=_RULE_COLORS.get(s.rule, "k"), zorder=3)
    ax.axhline(size_bound(cover_size), color="tab:red", ls="--", lw=1, label="size bound")
    for rule, color in _RULE_COLORS.items():
        ax.scatter([], [], s=12, color=color, label=rule)
    ax.set_xlabel("reduction step")
    ax.set_ylabel("vertices")
    ax.set_title(f"{result.outcome.value}, delta_max = {result.delta_max}")
    ax.legend(frameon=False, fontsize=8)
    _save(fig, path)


def plot_composed_adjacency(c: ComposedInstance, path: str) -> None:
    """Adjacency matrix of the composed graph with group boundaries marked."""
    G = c.graph
    matrix = [[1 if G.has_edge(u, v) else 0 for v in range(G.n)] for u in range(G.n)]
    fig = Figure(figsize=(5.5, 5.5))
    ax = fig.add_subplot()
    ax.imshow(matrix, cmap="Greys", interpolation="nearest")
    ticks, labels = [], []
    for name in GROUPS:
        for i, grp in enumerate(c.groups[name]):
            ax.axhline(grp[0] - 0.5, color="tab:red", lw=0.4)
            ax.axvline(grp[0] - 0.5, color="tab:red", lw=0.4)
            ticks.append((grp[0] + grp[-1]) / 2)
            labels.append(f"{name}{i + 1}")
    ax.set_xticks(ticks, labels, fontsize=6, rotation=90)
    ax.set_yticks(ticks, labels, fontsize=6)
    ax.set_title(f"r = {c.r}, n = {c.n}, k' = {c.k_prime}")
    _save(fig, path)
