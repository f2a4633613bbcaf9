"""Result tables and deterministic CSV / JSON / SVG emission.

Every artifact embeds the fully resolved run configuration as metadata so a
file on disk is self-describing.  Emission is deterministic: fixed content
produces byte-identical files (no timestamps, sorted keys, fixed number
formatting at 12 significant digits).
"""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import SchemaError

SVG_KINDS = ("heatmap", "vector-field", "interval-diagram")

_SVG_SCHEMAS = {
    "heatmap": ("x", "y", "value"),
    "vector-field": ("x", "y", "dx", "dy"),
    "interval-diagram": ("set", "lo", "hi"),
}

# Diverging endpoints, matching the comparison-figure convention:
# negative values shade toward red, positive toward grey, zero is white.
_NEG_RGB = (178, 24, 43)     # #b2182b
_POS_RGB = (77, 77, 77)      # #4d4d4d
_BAND_COLORS = {0: "#eeeeee", 1: "#2166ac", 2: "#b2182b"}


@dataclass(frozen=True)
class ResultTable:
    """Column-named numeric rows plus a metadata block."""

    columns: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...]
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns:
            raise SchemaError("a result table needs at least one column")
        for name in self.columns:
            if not name or "," in name or "\n" in name:
                raise SchemaError(f"bad column name {name!r}")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise SchemaError(
                    f"row width {len(row)} does not match {len(self.columns)} columns"
                )


def format_number(value) -> str:
    """Canonical 12-significant-digit rendering used across all emitters."""
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return "%.12g" % float(value)


def _format_meta_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return ",".join(_format_meta_value(v) for v in value)
    return format_number(value)


def emit_csv(table: ResultTable, path) -> None:
    """Write metadata comments, a header row, then the data rows.

    Comment lines are `# key = value`, sorted by key; numbers use 12
    significant digits; lines end with a bare newline and the file is
    newline-terminated.
    """
    lines = []
    for key in sorted(table.metadata):
        lines.append(f"# {key} = {_format_meta_value(table.metadata[key])}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(format_number(v) for v in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):  # numpy scalars
        return _jsonable(value.item())
    return value


def emit_json(table: ResultTable, path, summary: Optional[Dict[str, object]] = None) -> None:
    """Write the same content as the CSV, nested, plus an optional summary.

    Non-finite numbers become null so the output stays strict JSON.
    """
    payload = {
        "metadata": _jsonable(dict(table.metadata)),
        "columns": list(table.columns),
        "rows": [[_jsonable(float(v)) for v in row] for row in table.rows],
    }
    if summary is not None:
        payload["summary"] = _jsonable(summary)
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, allow_nan=False)
        fh.write("\n")


# ---------------------------------------------------------------------------
# SVG rendering

_W, _H = 720, 540
_ML, _MR, _MT, _MB = 70, 30, 46, 56
_PW, _PH = _W - _ML - _MR, _H - _MT - _MB


def _svg_number(x) -> str:
    return "%.6g" % float(x)


def _diverging_color(value: float, amax: float) -> str:
    if amax <= 0 or value == 0:
        return "#ffffff"
    t = max(-1.0, min(1.0, value / amax))
    target = _NEG_RGB if t < 0 else _POS_RGB
    frac = abs(t)
    rgb = tuple(round(255 + (c - 255) * frac) for c in target)
    return "#%02x%02x%02x" % rgb


def _header(title: str) -> list:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif">',
        f'<text x="{_W / 2:g}" y="24" text-anchor="middle" font-size="15">{title}</text>',
    ]


def _axis_labels(x_name: str, y_name: str) -> list:
    return [
        f'<text x="{_ML + _PW / 2:g}" y="{_H - 14}" text-anchor="middle" font-size="12">{x_name}</text>',
        f'<text x="18" y="{_MT + _PH / 2:g}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 18 {_MT + _PH / 2:g})">{y_name}</text>',
    ]


def _require_schema(kind: str, table: ResultTable):
    if kind not in _SVG_SCHEMAS:
        raise SchemaError(f"unknown svg kind {kind!r}; expected one of {SVG_KINDS}")
    want = _SVG_SCHEMAS[kind]
    if tuple(table.columns) != want:
        raise SchemaError(f"{kind} svg needs columns {want}, got {tuple(table.columns)}")


def _grid_positions(values: Sequence[float]):
    """Sorted unique coordinates and an index lookup."""
    unique = sorted(set(values))
    return unique, {v: i for i, v in enumerate(unique)}


def _heatmap_body(table: ResultTable) -> list:
    xs = [row[0] for row in table.rows]
    ys = [row[1] for row in table.rows]
    ux, xi = _grid_positions(xs)
    uy, yi = _grid_positions(ys)
    cw = _PW / max(1, len(ux))
    ch = _PH / max(1, len(uy))
    finite = [row[2] for row in table.rows if math.isfinite(row[2])]
    amax = max((abs(v) for v in finite), default=0.0)
    parts = []
    for x, y, value in table.rows:
        if not math.isfinite(value):
            continue  # missing cells stay blank
        px = _ML + xi[x] * cw
        py = _MT + (len(uy) - 1 - yi[y]) * ch
        parts.append(
            f'<rect x="{_svg_number(px)}" y="{_svg_number(py)}" '
            f'width="{_svg_number(cw)}" height="{_svg_number(ch)}" '
            f'fill="{_diverging_color(value, amax)}"/>'
        )
    lo = min(finite, default=0.0)
    hi = max(finite, default=0.0)
    parts.append(
        f'<text x="{_ML}" y="{_MT - 8}" font-size="11">range [{_svg_number(lo)}, {_svg_number(hi)}], '
        f"red &lt; 0 &lt; grey</text>"
    )
    return parts


def _vector_field_body(table: ResultTable) -> list:
    xs = [row[0] for row in table.rows]
    ys = [row[1] for row in table.rows]
    ux, xi = _grid_positions(xs)
    uy, yi = _grid_positions(ys)
    cw = _PW / max(1, len(ux))
    ch = _PH / max(1, len(uy))
    max_mag = max((math.hypot(r[2], r[3]) for r in table.rows), default=0.0)
    reach = 0.45 * min(cw, ch)
    parts = [
        '<defs><marker id="ah" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#333333"/></marker></defs>'
    ]
    for x, y, dx, dy in table.rows:
        cxp = _ML + (xi[x] + 0.5) * cw
        cyp = _MT + (len(uy) - 0.5 - yi[y]) * ch
        mag = math.hypot(dx, dy)
        if max_mag > 0 and mag > 0:
            scale = reach * (mag / max_mag) / mag
            x2, y2 = cxp + dx * scale, cyp - dy * scale
        else:
            x2, y2 = cxp, cyp
        parts.append(
            f'<line class="arrow" x1="{_svg_number(cxp)}" y1="{_svg_number(cyp)}" '
            f'x2="{_svg_number(x2)}" y2="{_svg_number(y2)}" stroke="#333333" '
            f'stroke-width="1.2" marker-end="url(#ah)"/>'
        )
    return parts


def _interval_body(table: ResultTable) -> list:
    bar_y = _MT + _PH / 2 - 24
    bar_h = 48
    parts = []
    for set_code, lo, hi in table.rows:
        color = _BAND_COLORS.get(int(set_code), "#999999")
        px = _ML + lo * _PW
        parts.append(
            f'<rect x="{_svg_number(px)}" y="{_svg_number(bar_y)}" '
            f'width="{_svg_number((hi - lo) * _PW)}" height="{bar_h}" fill="{color}"/>'
        )
    axis_y = bar_y + bar_h + 18
    for tick in (0.0, 0.5, 1.0):
        tx = _ML + tick * _PW
        parts.append(
            f'<text x="{_svg_number(tx)}" y="{axis_y}" text-anchor="middle" font-size="11">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{_ML}" y="{bar_y - 10}" font-size="11">grey success, blue junior refusal, '
        f"red senior refusal</text>"
    )
    return parts


def emit_svg(
    kind: str,
    table: ResultTable,
    path,
    title: str = "",
    x_label: Optional[str] = None,
    y_label: Optional[str] = None,
) -> None:
    """Render a table to a standalone SVG file.

    Kinds and their required columns: heatmap (x, y, value) with a diverging
    white-centered scale; vector-field (x, y, dx, dy) as lattice arrows;
    interval-diagram (set, lo, hi) as colored bands over [0,1].
    """
    _require_schema(kind, table)
    parts = _header(title or kind)
    if kind == "heatmap":
        parts += _heatmap_body(table)
        parts += _axis_labels(x_label or table.columns[0], y_label or table.columns[1])
    elif kind == "vector-field":
        parts += _vector_field_body(table)
        parts += _axis_labels(x_label or table.columns[0], y_label or table.columns[1])
    else:
        parts += _interval_body(table)
        parts += _axis_labels(x_label or "junior contribution share", y_label or "")
    parts.append("</svg>")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(parts) + "\n")
