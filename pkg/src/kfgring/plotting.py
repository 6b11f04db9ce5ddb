"""Figure rendering for the command-line reports.

Figures are a side product of the delimited reports: when a report path is
given, the matching figure lands next to it.  Everything renders through the
Agg backend with fixed sizes so identical inputs produce identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .potential import ApproxErrorRow
from .radial import BoundState
from .spectrum import SpectrumResult
from .verify import VerificationReport

__all__ = [
    "spectrum_figure",
    "wavefunction_figure",
    "angular_figure",
    "potential_scan_figure",
    "verification_figure",
    "save_figure",
]


def spectrum_figure(result: SpectrumResult):
    """Level diagram: admissible energies solid, rejected roots dotted."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    cells = sorted({(s.quantum.m, s.quantum.N) for s in result.states + result.rejected})
    pos = {cell: i for i, cell in enumerate(cells)}
    for s in result.rejected:
        x = pos[(s.quantum.m, s.quantum.N)]
        ax.hlines(s.E, x - 0.35, x + 0.35, color="#bbbbbb", linestyle=":", linewidth=1.2)
    for s in result.states:
        x = pos[(s.quantum.m, s.quantum.N)]
        ax.hlines(s.E, x - 0.35, x + 0.35, color="#1f6fb2", linewidth=2.0)
        ax.annotate(
            f"$n_r$={s.quantum.n_r}", (x + 0.38, s.E),
            fontsize=7, va="center", color="#1f6fb2",
        )
    ax.set_xticks(range(len(cells)))
    ax.set_xticklabels([f"m={m}\nN={N}" for m, N in cells], fontsize=8)
    ax.set_ylabel("E")
    ax.set_title("Bound-state levels (dotted: rejected roots)")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    return fig


def wavefunction_figure(state: BoundState, r: np.ndarray, chi: np.ndarray):
    """Reduced radial eigenfunction and its probability density."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(r, chi, color="#1f6fb2", label=r"$\chi(r)$")
    ax.plot(r, chi * chi, color="#b23a1f", linestyle="--", label=r"$\chi^2(r)$")
    ax.axhline(0.0, color="black", linewidth=0.6)
    q = state.quantum
    ax.set_title(
        f"n_r={q.n_r}, N={q.N}, m={q.m}, E={state.E:.9f}"
    )
    ax.set_xlabel("r")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return fig


def angular_figure(theta: np.ndarray, curves: dict[int, np.ndarray]):
    """Polar eigenfunctions Theta_N over the colatitude grid."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    for N in sorted(curves):
        ax.plot(theta, curves[N], label=f"N={N}")
    ax.axhline(0.0, color="black", linewidth=0.6)
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(r"$\Theta_N(\theta)$")
    ax.set_title("Polar eigenfunctions")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    return fig


def potential_scan_figure(rows: list[ApproxErrorRow]):
    """Exact vs approximated centrifugal factor and the relative error."""
    r = np.array([row.r for row in rows])
    exact = np.array([row.exact for row in rows])
    approx = np.array([row.approx for row in rows])
    rel = np.array([abs(row.rel_error) for row in rows])
    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7.0, 5.5), sharex=True)
    ax1.loglog(r, exact, color="#1f6fb2", label=r"$1/r^2$")
    ax1.loglog(r, approx, color="#b23a1f", linestyle="--", label="exponential stand-in")
    ax1.set_ylabel("centrifugal factor")
    ax1.legend()
    ax1.grid(alpha=0.3, which="both")
    ax2.loglog(r, np.maximum(rel, 1e-300), color="#555555")
    ax2.set_xlabel("r")
    ax2.set_ylabel("|relative error|")
    ax2.grid(alpha=0.3, which="both")
    fig.tight_layout()
    return fig


def verification_figure(report: VerificationReport):
    """One bar per check, green for pass, red for fail.

    Bars carry no timing information so the rendered file depends only on
    the verification outcome, keeping report artifacts byte-stable.
    """
    names = [c.name for c in report.results]
    colors = ["#2e8b57" if c.passed else "#c0392b" for c in report.results]
    fig, ax = plt.subplots(figsize=(7.0, 0.5 * max(4, len(names))))
    y = np.arange(len(names))
    ax.barh(y, np.ones(len(names)), color=colors)
    for i, c in enumerate(report.results):
        ax.annotate("pass" if c.passed else "FAIL", (0.02, i), va="center",
                    fontsize=8, color="white")
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    verdict = "PASS" if report.passed else "FAIL"
    ax.set_title(f"suite '{report.suite}': {verdict}")
    fig.tight_layout()
    return fig


def save_figure(fig, path) -> None:
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
