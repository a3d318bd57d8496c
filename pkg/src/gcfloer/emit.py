"""CSV / JSON / SVG emitters for the command line frontend.

Exact rationals are serialized as "p/q" strings so that values survive a
round trip; output is deterministic (no timestamps, sorted JSON keys,
fixed line terminator) so identical configs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction


def rat(x) -> str:
    return str(Fraction(x))


def num(x) -> str:
    """Complex scalar to a compact deterministic string."""
    c = complex(x)
    if abs(c.imag) <= 1e-12:
        r = c.real
        if r == int(r):
            return str(int(r))
        return repr(r)
    return repr(c).strip("()")


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def table_text(header, rows, fmt: str) -> str:
    if fmt == "csv":
        return csv_text(header, rows)
    if fmt == "json":
        return json_text([dict(zip(header, row)) for row in rows])
    raise ValueError(f"unknown format {fmt!r}")


def write_out(text: str, out: str | None) -> None:
    if out is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


SVG_LIGHT = "#a6cee3"   # displaced
SVG_DARK = "#67000d"    # not displaced


def svg_slice(points, lo, hi, size: int = 600) -> str:
    """Scatter of (u1, u2, displaced) dots for a fixed-u3 slice.

    ``lo``/``hi`` are (u1, u2) bounds of the viewport in moment coordinates.
    """
    span1 = float(hi[0] - lo[0]) or 1.0
    span2 = float(hi[1] - lo[1]) or 1.0
    margin = 30
    inner = size - 2 * margin

    def sx(u1):
        return margin + inner * (float(u1) - float(lo[0])) / span1

    def sy(u2):
        return size - margin - inner * (float(u2) - float(lo[1])) / span2

    radius = max(2.0, inner / 150)
    rows = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for u1, u2, displaced in points:
        color = SVG_LIGHT if displaced else SVG_DARK
        rows.append(
            f'<circle cx="{sx(u1):.2f}" cy="{sy(u2):.2f}" r="{radius:.2f}" '
            f'fill="{color}"/>'
        )
    rows.append("</svg>")
    return "\n".join(rows) + "\n"
