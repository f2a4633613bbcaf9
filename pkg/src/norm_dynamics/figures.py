"""Matplotlib renderings written alongside the delimited outputs.

These are quick-look figures, not publication styling: each run's report
path drops a PNG next to the CSV/JSON/SVG so results can be eyeballed
without further tooling.  Byte-level reproducibility is promised for the
delimited outputs, not for PNGs.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dynamics import LABEL_C_NORM, LABEL_I_NORM, LABEL_NO_COLLABORATION, LABEL_OTHER

_OUTCOME_COLORS = ["#b2182b", "#4d4d4d", "#f4a582", "#f7f7f7"]
_OUTCOME_NAMES = [LABEL_C_NORM, LABEL_I_NORM, LABEL_NO_COLLABORATION, LABEL_OTHER]


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_phase(grid, equilibrium, path):
    """Arrow plot of the adoption field, with the interior rest point if any."""
    fig, ax = plt.subplots(figsize=(5.4, 5.0))
    mag = np.hypot(grid.dp_j, grid.dp_s)
    ax.quiver(grid.p_j, grid.p_s, grid.dp_j, grid.dp_s, mag, cmap="viridis", angles="xy")
    if equilibrium is not None:
        ax.plot([equilibrium.p_j], [equilibrium.p_s], "o", color="#b2182b", ms=8, mec="black")
    ax.set_xlabel("junior share insisting junior-first")
    ax.set_ylabel("senior share granting junior-first")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)
    ax.set_title("adoption field")
    _finish(fig, path)


def render_basin(axis, codes, path):
    """Discrete heatmap of basin outcomes on the midpoint lattice."""
    from matplotlib.colors import BoundaryNorm, ListedColormap
    from matplotlib.patches import Patch

    fig, ax = plt.subplots(figsize=(5.8, 5.0))
    cmap = ListedColormap(_OUTCOME_COLORS)
    norm = BoundaryNorm([-0.5, 0.5, 1.5, 2.5, 3.5], cmap.N)
    # codes[i, j] indexes (p_j, p_s); imshow wants rows = y, so transpose.
    ax.imshow(
        codes.T,
        origin="lower",
        cmap=cmap,
        norm=norm,
        extent=(0, 1, 0, 1),
        interpolation="nearest",
        aspect="auto",
    )
    handles = [Patch(color=c, label=n) for c, n in zip(_OUTCOME_COLORS, _OUTCOME_NAMES)]
    ax.legend(handles=handles, loc="center left", bbox_to_anchor=(1.01, 0.5), fontsize=8)
    ax.set_xlabel("initial junior share")
    ax.set_ylabel("initial senior share")
    ax.set_title("basins of attraction")
    _finish(fig, path)


def render_sweep(points, path):
    """Basin fractions against the credit asymmetry delta."""
    good = [p for p in points if p.error is None]
    fig, ax = plt.subplots(figsize=(6.2, 4.2))
    if good:
        deltas = [p.delta for p in good]
        ax.plot(deltas, [p.fraction_I for p in good], "o-", color="#4d4d4d", label="junior-first basin")
        ax.plot(deltas, [p.fraction_C for p in good], "s-", color="#b2182b", label="contribution basin")
    ax.set_xlabel("credit asymmetry delta = 1 - 2 mu_j")
    ax.set_ylabel("basin fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize=8)
    ax.set_title("norm basins across the prior family")
    _finish(fig, path)


def render_failure(prior, report, path):
    """Refusal bands over the contribution density."""
    fig, ax = plt.subplots(figsize=(6.2, 4.2))
    xs = np.linspace(0.001, 0.999, 400)
    ax.plot(xs, prior.pdf(xs), color="#333333", lw=1.5, label="contribution density")
    for lo, hi in report.junior_refuses.intervals:
        ax.axvspan(lo, hi, color="#2166ac", alpha=0.35, label="junior refuses")
    for lo, hi in report.senior_refuses.intervals:
        ax.axvspan(lo, hi, color="#b2182b", alpha=0.35, label="senior refuses")
    handles, labels = ax.get_legend_handles_labels()
    unique = dict(zip(labels, handles))
    ax.legend(unique.values(), unique.keys(), fontsize=8)
    ax.set_xlabel("junior contribution share")
    ax.set_ylabel("density")
    ax.set_title(f"collaboration failure bands (P = {report.failure_probability:.4f})")
    _finish(fig, path)


def _diverging_mesh(ax, mu, ch, values, title):
    finite = values[np.isfinite(values)]
    amax = float(np.max(np.abs(finite))) if finite.size else 1.0
    amax = amax if amax > 0 else 1.0
    pcm = ax.pcolormesh(mu, ch, values.T, cmap="RdGy", vmin=-amax, vmax=amax, shading="nearest")
    ax.set_title(title, fontsize=10)
    ax.set_xlabel("expected junior share mu_j")
    ax.set_ylabel("collaboration bonus c_hat")
    return pcm


def render_compare(mu_values, c_hat_values, fail_diff, loss_diff, path):
    """Side-by-side C-minus-I failure and loss differences (red = C better)."""
    fig, axes = plt.subplots(1, 2, figsize=(9.4, 4.0))
    pcm = _diverging_mesh(axes[0], mu_values, c_hat_values, fail_diff, "failure difference")
    fig.colorbar(pcm, ax=axes[0])
    pcm = _diverging_mesh(axes[1], mu_values, c_hat_values, loss_diff, "surplus loss difference")
    fig.colorbar(pcm, ax=axes[1])
    _finish(fig, path)


def render_preference(mu_values, c_hat_values, junior, senior, path):
    """Ex-ante preference for the contribution-ordered norm, per player."""
    fig, axes = plt.subplots(1, 2, figsize=(9.4, 4.0))
    pcm = _diverging_mesh(axes[0], mu_values, c_hat_values, junior, "junior preference")
    fig.colorbar(pcm, ax=axes[0])
    pcm = _diverging_mesh(axes[1], mu_values, c_hat_values, senior, "senior preference")
    fig.colorbar(pcm, ax=axes[1])
    _finish(fig, path)
