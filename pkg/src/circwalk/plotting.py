"""Figure rendering for report outputs (PNG files next to the CSV/JSON).

All functions take an explicit output path and save to file; the Agg
backend is forced so the CLI works headless.
"""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_TIME_LABELS = ["0"] + [f"{k}/8 π" for k in range(1, 8)] + ["π"]


def save_distribution_figure(path, probabilities, title: str = "vertex distribution") -> None:
    """Single bar chart of p(x) over vertices."""
    p = np.asarray(probabilities, dtype=float)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(p) + 2.0), 3.2))
    ax.bar(np.arange(len(p)), p, color="#4878a8")
    ax.set_xlabel("vertex")
    ax.set_ylabel("probability")
    ax.set_ylim(0, 1.05)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_spectrum_figure(path, eigenvalues, title: str = "circulant spectrum") -> None:
    """Stem plot of lambda_m against the Fourier index m."""
    lam = np.asarray(eigenvalues, dtype=float)
    fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * len(lam) + 2.0), 3.2))
    ax.stem(np.arange(len(lam)), lam)
    ax.set_xlabel("Fourier index m")
    ax.set_ylabel("eigenvalue")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_table_comparison_figure(path, state_id: int, ideal, observed) -> None:
    """3x3 grid of per-time bar charts: observed bars, ideal outlines.

    ``ideal`` and ``observed`` are (9, 4) arrays indexed [time][vertex].
    """
    ideal = np.asarray(ideal, dtype=float)
    observed = np.asarray(observed, dtype=float)
    fig, axes = plt.subplots(3, 3, figsize=(9, 7), sharey=True)
    x = np.arange(ideal.shape[1])
    for k, ax in enumerate(axes.flat):
        ax.bar(x, observed[k], color="#d8894a", label="measured")
        ax.bar(x, ideal[k], fill=False, edgecolor="black", linewidth=1.2, label="ideal")
        ax.set_title(f"t = {_TIME_LABELS[k]}", fontsize=9)
        ax.set_xticks(x)
        ax.set_ylim(0, 1.0)
    axes[0, 0].legend(fontsize=7)
    fig.suptitle(f"K4 walk distributions, initial state {state_id}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_density_figure(path, name: str, rho, ideal_state) -> None:
    """Heatmaps of Re/Im for the measured matrix and its ideal target."""
    rho = np.asarray(rho, dtype=complex)
    phi = np.asarray(ideal_state, dtype=complex)
    phi = phi / np.linalg.norm(phi)
    target = np.outer(phi, phi.conj())
    fig, axes = plt.subplots(2, 2, figsize=(7, 6))
    panels = [
        (np.real(rho), f"Re({name})"),
        (np.imag(rho), f"Im({name})"),
        (np.real(target), "Re(ideal)"),
        (np.imag(target), "Im(ideal)"),
    ]
    for ax, (mat, label) in zip(axes.flat, panels):
        im = ax.imshow(mat, vmin=-0.5, vmax=0.5, cmap="RdBu_r")
        ax.set_title(label, fontsize=10)
        ax.set_xticks(range(mat.shape[0]))
        ax.set_yticks(range(mat.shape[0]))
    fig.colorbar(im, ax=axes, shrink=0.75)
    fig.savefig(path, dpi=150)
    plt.close(fig)
