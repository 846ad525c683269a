"""Text and SVG Gantt renderings of a :class:`~dagsched.schedule.GanttChart`."""
from __future__ import annotations

from .schedule import GanttChart

IDLE = "."


def gantt_text(chart: GanttChart) -> str:
    """One row per processor, one fixed-width cell per time unit."""
    width = max(len(str(len(chart.proc) - 1)), 1) + 1
    span = chart.makespan
    rows = [[IDLE.rjust(width)] * span for _ in range(chart.m)]
    for t, (p, s, f) in chart.assignment.items():
        for u in range(s, f):
            rows[p][u] = str(t).rjust(width)
    label = len(f"P{chart.m}")
    ruler = " " * (label + 2) + "".join(
        (str(u) if u % 5 == 0 else "").rjust(width) for u in range(span)
    )
    lines = [ruler.rstrip()]
    for p, cells in enumerate(rows):
        lines.append(f"P{p + 1}".ljust(label) + " |" + "".join(cells) + " |")
    lines.append(f"makespan = {span}")
    return "\n".join(lines) + "\n"


def gantt_svg(chart: GanttChart, unit: int = 12, row_height: int = 24) -> str:
    """Minimal standalone SVG: one bar per task placed at (start, finish)."""
    margin = 40
    width = margin + max(chart.makespan, 1) * unit + 10
    height = 20 + chart.m * row_height + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="10">'
    ]
    for p in range(chart.m):
        y = 20 + p * row_height
        parts.append(f'<text x="4" y="{y + row_height // 2 + 4}">P{p + 1}</text>')
        parts.append(
            f'<line x1="{margin}" y1="{y + row_height}" x2="{width - 10}" '
            f'y2="{y + row_height}" stroke="#ccc"/>'
        )
    for t, (p, s, f) in sorted(chart.assignment.items()):
        x = margin + s * unit
        y = 20 + p * row_height + 2
        w = (f - s) * unit
        parts.append(
            f'<rect x="{x}" y="{y}" width="{w}" height="{row_height - 4}" '
            f'fill="#4a90e2" stroke="#1f4f82"><title>T{t}: {s}-{f}</title></rect>'
        )
        parts.append(f'<text x="{x + 2}" y="{y + row_height // 2 + 2}" fill="white">{t}</text>')
    parts.append(f'<text x="{margin}" y="{height - 4}">makespan {chart.makespan}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
