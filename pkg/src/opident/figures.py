"""Figure rendering for the Radon demo: phantom, sinograms, and moment
curves as PNG files next to the CSV/JSON output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .radon import MomentTable, Phantom, Sinogram  # noqa: E402


def save_phantom_figure(p: Phantom, path: str):
    fig, ax = plt.subplots(figsize=(5, 5))
    im = ax.imshow(
        p.grid, origin="lower", cmap="gray",
        extent=[-p.extent, p.extent, -p.extent, p.extent],
    )
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("phantom")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_sinogram_figure(g: Sinogram, path: str):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    im = ax.imshow(
        g.values, origin="lower", aspect="auto", cmap="magma",
        extent=[g.offsets[0], g.offsets[-1], 0.0, 360.0],
    )
    ax.set_xlabel("offset s")
    ax.set_ylabel("angle (degrees)")
    ax.set_title(f"sinogram, mu = {g.mu:g}")
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_moments_figure(classical: MomentTable, attenuated: MomentTable,
                        mu: float, path: str):
    """Moment curves side by side plus the leakage comparison."""
    ks = sorted(classical.moments)
    fig, axes = plt.subplots(1, 3, figsize=(14, 4))
    for k in ks:
        axes[0].plot(classical.moments[k], label=f"k={k}")
        axes[1].plot(attenuated.moments[k], label=f"k={k}")
    axes[0].set_title("moments $G_k(\\theta)$, mu = 0")
    axes[1].set_title(f"moments $G_k(\\theta)$, mu = {mu:g}")
    for ax in axes[:2]:
        ax.set_xlabel("angle index")
        ax.legend(fontsize=8)
    width = 0.38
    axes[2].bar([k - width / 2 for k in ks],
                [max(classical.leakage[k], 1e-18) for k in ks],
                width, label="mu = 0")
    axes[2].bar([k + width / 2 for k in ks],
                [max(attenuated.leakage[k], 1e-18) for k in ks],
                width, label=f"mu = {mu:g}")
    axes[2].set_yscale("log")
    axes[2].set_xlabel("moment order k")
    axes[2].set_ylabel("Fourier leakage")
    axes[2].set_title("range-condition leakage")
    axes[2].legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def render_demo_figures(phantom: Phantom, classical: Sinogram,
                        attenuated: Sinogram, moments0: MomentTable,
                        moments_mu: MomentTable, out_dir: str) -> list[str]:
    """Write the full figure set; returns the created paths."""
    paths = []
    jobs = [
        ("phantom.png", lambda p: save_phantom_figure(phantom, p)),
        ("sinogram_mu0.png", lambda p: save_sinogram_figure(classical, p)),
        (f"sinogram_mu{attenuated.mu:g}.png",
         lambda p: save_sinogram_figure(attenuated, p)),
        ("moments.png",
         lambda p: save_moments_figure(moments0, moments_mu, attenuated.mu, p)),
    ]
    for name, job in jobs:
        path = os.path.join(out_dir, name)
        job(path)
        paths.append(path)
    return paths
