"""
Text, SVG and JSON output.

All reals are printed with six significant digits and SVG coordinates
with two decimals, so the same barcode always renders to the same bytes.
"""

from dataclasses import dataclass
from pathlib import Path

from loguru import logger

from ..models.barcode import Barcode, PersistenceInterval
from ..models.report import AnalysisReport
from .error_handling import ArgumentError

MARGIN_LEFT = 60
MARGIN_RIGHT = 20
MARGIN_TOP = 10
AXIS_TICKS = 5
ARROW_LENGTH = 6

SVG_STYLE = (
    "<style>.bar{fill:#4c72b0}.arrow{fill:#4c72b0}"
    ".axis,.tick{stroke:#333333;stroke-width:1}"
    "text{font-family:monospace;font-size:11px}</style>"
)


@dataclass(frozen=True)
class RenderSpec:
    """Canvas geometry for the SVG barcode."""

    width_px: int = 640
    row_height_px: int = 14
    degree_panels: tuple[int, ...] | None = None
    infinite_marker: bool = True

    def validate(self) -> None:
        if self.width_px <= MARGIN_LEFT + MARGIN_RIGHT or self.row_height_px <= 4:
            raise ArgumentError(
                f"Canvas {self.width_px}x{self.row_height_px} px leaves no room to draw bars"
            )

    @classmethod
    def from_config(cls, render: dict) -> "RenderSpec":
        return cls(
            width_px=int(render.get("width_px", 640)),
            row_height_px=int(render.get("row_height_px", 14)),
            infinite_marker=bool(render.get("infinite_marker", True)),
        )


def format_real(value: float) -> str:
    if value == float("inf"):
        return "inf"
    return format(value, "#.6g")


def render_barcode_text(B: Barcode) -> str:
    """One ``dim l: [birth, death)`` line per visible interval."""
    lines = [
        f"dim {i.degree}: [{format_real(i.birth)}, {format_real(i.death)})" for i in B.visible()
    ]
    return "".join(line + "\n" for line in lines)


def _scale_max(B: Barcode) -> float:
    finite = [B.final_parameter]
    for i in B.intervals:
        finite.append(i.birth)
        if not i.is_infinite:
            finite.append(i.death)
    top = max(finite)
    return top * 1.05 if top > 0 else 1.0


def _bar(interval: PersistenceInterval, y: float, spec: RenderSpec, x_of, right: float) -> list[str]:
    height = spec.row_height_px - 4
    x0 = x_of(interval.birth)
    x1 = right if interval.is_infinite else x_of(interval.death)
    elements = [
        f'<rect class="bar" x="{x0:.2f}" y="{y:.2f}" width="{x1 - x0:.2f}" height="{height:.2f}" '
        f'data-birth="{format_real(interval.birth)}" data-death="{format_real(interval.death)}"/>'
    ]
    if interval.is_infinite and spec.infinite_marker:
        middle = y + height / 2
        elements.append(
            f'<path class="arrow" d="M {right:.2f} {middle - 4:.2f} '
            f'L {right + ARROW_LENGTH:.2f} {middle:.2f} L {right:.2f} {middle + 4:.2f} Z"/>'
        )
    return elements


def render_barcode_svg(B: Barcode, spec: RenderSpec | None = None) -> str:
    """Barcode as an SVG 1.1 document, one panel per degree above a shared axis."""
    spec = spec or RenderSpec()
    spec.validate()

    visible = B.visible()
    if spec.degree_panels is not None:
        degrees = list(spec.degree_panels)
    else:
        degrees = B.degrees() if visible else []

    scale = _scale_max(B)
    plot_width = spec.width_px - MARGIN_LEFT - MARGIN_RIGHT
    right = float(MARGIN_LEFT + plot_width)

    def x_of(r: float) -> float:
        return MARGIN_LEFT + r / scale * plot_width

    row = spec.row_height_px
    body: list[str] = []
    y = float(MARGIN_TOP)
    for degree in degrees:
        bars = [i for i in visible if i.degree == degree]
        body.append(f'<g class="panel" data-degree="{degree}">')
        body.append(f'<text class="label" x="4.00" y="{y + row - 3:.2f}">dim {degree}</text>')
        y += row
        for interval in bars:
            body.extend(_bar(interval, y + 2, spec, x_of, right))
            y += row
        if not bars:
            y += row
        body.append("</g>")
        y += row

    body.append(f'<line class="axis" x1="{MARGIN_LEFT:.2f}" y1="{y:.2f}" x2="{right:.2f}" y2="{y:.2f}"/>')
    for k in range(AXIS_TICKS + 1):
        x = MARGIN_LEFT + k * plot_width / AXIS_TICKS
        body.append(f'<line class="tick" x1="{x:.2f}" y1="{y:.2f}" x2="{x:.2f}" y2="{y + 4:.2f}"/>')
        body.append(
            f'<text class="tick-label" x="{x:.2f}" y="{y + 16:.2f}" text-anchor="middle">'
            f"{format_real(k * scale / AXIS_TICKS)}</text>"
        )

    height = int(y) + 30
    header = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width_px}" '
        f'height="{height}" viewBox="0 0 {spec.width_px} {height}">',
        SVG_STYLE,
    ]
    return "\n".join(header + body + ["</svg>"]) + "\n"


def emit_report_json(report: AnalysisReport, path: str | Path | None = None) -> str:
    """Serialize a report; also write it to ``path`` when one is given."""
    document = report.to_json()
    if path is not None:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(document, encoding="utf-8")
        logger.info(f"Report written to {target}")
    return document


def write_svg(B: Barcode, path: str | Path, spec: RenderSpec | None = None) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(render_barcode_svg(B, spec), encoding="utf-8")
    logger.info(f"Barcode written to {target}")
