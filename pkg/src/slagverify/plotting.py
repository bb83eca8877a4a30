"""Planar diagnostic plots of a configuration, one panel per coordinate.

Only planar data (vanishing first slot everywhere) can be drawn.  Each
panel shows the offset points of the axis-aligned hyperplanes and the
coordinate projections of every polytope.  Output is SVG with hashed
ids and stripped timestamps, so repeated renders are byte-identical.
"""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .config import GlueConfiguration
from .core import EPS_GEOM


def plot_config(cfg: GlueConfiguration, out_path, eps: float = EPS_GEOM):
    arr = cfg.arrangement
    n = arr.n
    flat = [abs(float(x)) for x in arr.lam[:, 0]]
    flat += [abs(float(p.q[i][0])) for p in cfg.polytopes for i in range(n)]
    if max(flat, default=0.0) > eps:
        raise ValueError("plotting needs planar data (zero first slot)")
    plt.rcParams["svg.hashsalt"] = "slag-verify"
    fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 4.2), squeeze=False)
    for alpha in range(n):
        ax = axes[0][alpha]
        for k in range(arr.d):
            col = arr.torus.column(k)
            unit = [0] * n
            unit[alpha] = 1
            if list(col) == unit or list(col) == [-x for x in unit]:
                z = -arr.lam[k] if list(col) == unit else arr.lam[k]
                ax.plot([z[1]], [z[2]], marker="o", ms=4, color="0.2")
        for p in sorted(cfg.polytopes, key=lambda q: q.name):
            verts = p.scaled_vertices()
            vals = verts[:, alpha]
            lo, hi = float(vals.min()), float(vals.max())
            s = p.sigma()
            seg = np.array([p.q[alpha] + lo * s, p.q[alpha] + hi * s])
            ax.plot(seg[:, 1], seg[:, 2], lw=1.4)
        ax.set_title(f"coordinate {alpha + 1}")
        ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
