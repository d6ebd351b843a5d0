"""Matplotlib figures for the experiment outputs, written as SVG."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

COLORS = {"L": "#c0392b", "Theta": "#1f4e9c", "Phi": "#5dade2"}
LABELS = {"L": r"$T_{\mathcal{L}}$", "Theta": r"$T_\Theta$", "Phi": r"$T_\Phi$"}


def _style():
    plt.rcParams.update({
        "figure.figsize": (5.0, 3.6),
        "font.size": 9,
        "axes.spines.top": False,
        "axes.spines.right": False,
        "svg.hashsalt": "mixedqsl",   # stable element ids
        "svg.fonttype": "none",
    })


def save(fig, path, description: str = ""):
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None, "Description": description})
    plt.close(fig)


def qubit_curves(records, path, description=""):
    _style()
    fig, ax = plt.subplots()
    theta_max = max(r.params["theta"] for r in records)
    rows = sorted((r for r in records if math.isclose(r.params["theta"], theta_max)),
                  key=lambda r: r.params["lambda"])
    lam = [r.params["lambda"] for r in rows]
    for key, attr in (("Theta", "t_theta"), ("Phi", "t_phi"), ("L", "t_l")):
        ax.plot(lam, [getattr(r, attr) for r in rows], color=COLORS[key], label=LABELS[key])
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel("bound")
    ax.set_title(rf"antipodal-most pair, $\theta$ = {theta_max:.3f}")
    ax.legend(frameon=False)
    save(fig, path, description)


def qutrit_simplex(records, path, description=""):
    _style()
    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    for key in ("Theta", "Phi", "L"):
        pts = [(r.params["lambda1"], r.params["lambda2"]) for r in records if r.region == key]
        if pts:
            x, y = zip(*pts)
            ax.scatter(x, y, s=9, color=COLORS[key], label=f"max = {LABELS[key]}")
    ax.plot([0, 0.5, 1 / 3, 0], [0, 0, 1 / 3, 0], color="0.3", lw=0.8)
    ax.set_xlabel(r"$\lambda_1$")
    ax.set_ylabel(r"$\lambda_2$")
    ax.set_aspect("equal")
    ax.legend(frameon=False, fontsize=7)
    save(fig, path, description)


def tightness_sweep(records, path, description=""):
    _style()
    fig, ax = plt.subplots()
    ns = sorted({r.n for r in records})
    data = [[r.tightness for r in records if r.n == n] for n in ns]
    ax.violinplot(data, positions=ns, showmedians=True)
    ax.axhline(0.0, color="0.5", lw=0.6)
    ax.set_xlabel("N")
    ax.set_ylabel(r"$1 - T_{\mathcal{L}} / \max[T_\Theta, T_\Phi]$")
    save(fig, path, description)


def purity_correlation(records, path, description=""):
    _style()
    fig, ax = plt.subplots()
    ax.hexbin([r.purity for r in records], [r.tightness for r in records], gridsize=40,
              cmap="Blues", mincnt=1, linewidths=0)
    ax.set_xlabel(r"purity tr$[\rho^2]$")
    ax.set_ylabel(r"$1 - T_{\mathcal{L}} / \max[T_\Theta, T_\Phi]$")
    save(fig, path, description)


def complexity_bench(results, path, description=""):
    _style()
    fig, ax = plt.subplots()
    n = np.array([r.n for r in results])
    eta = np.array([r.eta for r in results])
    ax.plot(n, eta, "o-", color=COLORS["Theta"], ms=3)
    ax.set_xlabel("N")
    ax.set_ylabel(r"$\eta = C(\mathcal{L}) / C(\Theta)$")
    save(fig, path, description)
