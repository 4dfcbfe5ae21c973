"""Figure rendering for study reports.

Each report kind gets one PNG written next to the delimited output.
Figures are a visual aid only; the CSV/JSON payload remains the
deterministic record.
"""

from __future__ import annotations

import os

from .reports import Report

_REFINEMENT_COMMANDS = {"verify-index-law", "verify-conjugation"}
_NODE_COMMANDS = {"integrate", "stieltjes"}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_report(report: Report, fig_dir: str) -> list[str]:
    """Render the figure for a report; returns the written paths."""
    os.makedirs(fig_dir, exist_ok=True)
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.0))

    cmd = report.command
    if cmd in _REFINEMENT_COMMANDS:
        ns = [row.n for row in report.rows]
        residuals = [row.residual for row in report.rows]
        ax.loglog(ns, residuals, "o-", base=2, label="residual")
        if residuals and residuals[0] and residuals[0] > 0:
            for slope, style in ((1, ":"), (2, "--")):
                guide = [residuals[0] * (ns[0] / n) ** slope for n in ns]
                ax.loglog(ns, guide, style, color="gray", label=f"order {slope}")
        ax.set_xlabel("grid cells n")
        ax.set_ylabel("residual")
        ax.legend()
    elif cmd == "continuity-scan":
        steps = [float(row.extra["step"]) for row in report.rows]
        gaps = [row.residual for row in report.rows]
        ax.loglog(steps, gaps, "o-", base=2)
        ax.set_xlabel("order step")
        ax.set_ylabel("max operator gap")
        ax.invert_xaxis()
    elif cmd in _NODE_COMMANDS:
        ts = [float(row.extra["t"]) for row in report.rows]
        vals = [float(row.extra["value"]) for row in report.rows]
        ax.plot(ts, vals, "-")
        ax.set_xlabel("t")
        ax.set_ylabel("integral value")
    elif cmd == "verify-titchmarsh":
        slacks = [row.residual for row in report.rows]
        ax.plot(range(len(slacks)), slacks, ".")
        h = report.rows[0].h if report.rows else 0.0
        ax.axhline(-h, color="red", linestyle="--", label="support-addition floor")
        ax.set_xlabel("trial")
        ax.set_ylabel("conv onset minus (a + lambda + mu)")
        ax.legend()
    elif cmd == "roots":
        extra = report.rows[0].extra if report.rows else {}
        leads = [float(v) for k, v in extra.items() if k.startswith("root_lead_")]
        ax.bar(range(len(leads)), leads)
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_xlabel("root index")
        ax.set_ylabel("leading coefficient")
        if "match_error" in extra:
            ax.set_title(f"match error vs reference: {extra['match_error']}")
    elif cmd == "norm-bound":
        lhs = [float(row.extra["lhs"]) for row in report.rows]
        rhs = [float(row.extra["rhs"]) for row in report.rows]
        ax.plot(rhs, lhs, ".")
        top = max(rhs + lhs) if rhs else 1.0
        ax.plot([0, top], [0, top], "--", color="gray", label="lhs = rhs")
        ax.set_xlabel("(1/m) ||f||_1")
        ax.set_ylabel("||f o h||_1")
        ax.legend()
    else:
        ax.text(0.5, 0.5, f"no renderer for {cmd}", ha="center", va="center")

    if not ax.get_title():
        ax.set_title(cmd)
    path = os.path.join(fig_dir, f"{cmd}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]
