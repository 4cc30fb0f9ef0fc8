"""Plain-text rendering of score reports (JSON comes from their to_dict)."""

from __future__ import annotations

from .relations import ROLE_ROWS, RelationReport
from .smatch import ScoreReport, SmatchResult


def format_smatch(result: SmatchResult) -> str:
    return (f"Smatch  P {result.precision:.4f}  R {result.recall:.4f}  "
            f"F1 {result.f1:.4f}")


def format_decomposition(report: ScoreReport) -> str:
    width = max(len(name) for name in report.metrics)
    lines = [f"{'Metric':<{width}}  {'P':>7}  {'R':>7}  {'F1':>7}"]
    for name, m in report.metrics.items():
        lines.append(f"{name:<{width}}  {m.precision:7.4f}  {m.recall:7.4f}  {m.f1:7.4f}")
    return "\n".join(lines)


def format_relations(report: RelationReport) -> str:
    rows = [("Role", "# gold", "P", "R", "F1")]

    def add(label, s):
        rows.append((label, str(s.gold_count), f"{s.precision:.4f}",
                     f"{s.recall:.4f}", f"{s.f1:.4f}"))

    core_labels = ("ARG0", "ARG1", "ARG2")
    for role in core_labels:
        add(role, report.roles[role])
    add("Total (core)", report.core)
    for role in ROLE_ROWS:
        if role not in core_labels:
            add(role, report.roles[role])
    add("Total (non-core)", report.non_core)
    add("Temporal ordering", report.temporal)
    add("Intra-sentence (core)", report.intra)
    add("Inter-sentence (core)", report.inter)

    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = []
    for r in rows:
        lines.append("  ".join(
            r[i].ljust(widths[i]) if i == 0 else r[i].rjust(widths[i])
            for i in range(5)))
    return "\n".join(lines)
