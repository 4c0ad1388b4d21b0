"""The three output artifacts: sequence table, per-base coordinates, PDF report.

All writers are pure byte functions of the design: no clocks, no locale, no
randomness, so re-exporting an unchanged design is byte-identical. The PDF
carries a Code 128 rendering of the shape hash as a scannable fingerprint.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass

from .errors import EmptySelectionError, UnencodableCharacterError, UnplacedStrandError
from .lattice import BrickDimensions, brick_north_y, brick_west_x
from .seqdesign import DesignOutput, StrandRecord

# Code 128 bar/space module widths per symbol value 0..105 (11 modules each,
# bar-space alternating starting with a bar); the stop symbol 106 has a
# trailing 2-module bar for 13 total.
_CODE128_WIDTHS = (
    "212222 222122 222221 121223 121322 131222 122213 122312 132212 221213 "
    "221312 231212 112232 122132 122231 113222 123122 123221 223211 221132 "
    "221231 213212 223112 312131 311222 321122 321221 312212 322112 322211 "
    "212123 212321 232121 111323 131123 131321 112313 132113 132311 211313 "
    "231113 231311 112133 112331 132131 113123 113321 133121 313121 211331 "
    "231131 213113 213311 213131 311123 311321 331121 312113 312311 332111 "
    "314111 221411 431111 111224 111422 121124 121421 141122 141221 112214 "
    "112412 122114 122411 142112 142211 241211 221114 413111 241112 134111 "
    "111242 121142 121241 114212 124112 124211 411212 421112 421211 212141 "
    "214121 412121 111143 111341 131141 114113 114311 411113 411311 113141 "
    "114131 311141 411131 211412 211214 211232"
).split()
_STOP_WIDTHS = "2331112"
CODE128_START_B = 104
CODE128_STOP = 106


@dataclass(frozen=True)
class Barcode128:
    """Encoded Code 128 (subset B) symbol stream for one text payload."""

    text: str
    values: tuple[int, ...]  # start, data symbols, checksum, stop
    module_widths: tuple[int, ...]  # alternating bar/space widths, bar first

    @property
    def checksum(self) -> int:
        return self.values[-2]


def encode_code128(text: str) -> Barcode128:
    """Encode text in Code 128 subset B with the mod-103 checksum."""
    data_values = []
    for ch in text:
        v = ord(ch) - 32
        if not 0 <= v <= 94:
            raise UnencodableCharacterError(
                f"character {ch!r} is outside Code 128 subset B"
            )
        data_values.append(v)
    checksum = (
        CODE128_START_B + sum(i * v for i, v in enumerate(data_values, start=1))
    ) % 103
    values = (CODE128_START_B, *data_values, checksum, CODE128_STOP)
    widths: list[int] = []
    for v in values[:-1]:
        widths.extend(int(d) for d in _CODE128_WIDTHS[v])
    widths.extend(int(d) for d in _STOP_WIDTHS)
    return Barcode128(text=text, values=values, module_widths=tuple(widths))


@dataclass(frozen=True)
class BaseCoordinate:
    strand_id: str
    base_index: int
    base: str
    domain_index: int
    x_nm: float
    y_nm: float


def base_coordinates(
    strand: StrandRecord, dims: BrickDimensions
) -> list[BaseCoordinate]:
    """Physical position of every base of a strand on the lattice.

    Brick strands run west to east along the upper helix (d1, d2) and back
    east to west along the lower helix (d3, d4); X is measured from the
    brick's west edge, Y from its north edge. Digitized strands spread their
    bases uniformly along the segment.
    """
    pos = strand.position
    if pos is None:
        raise UnplacedStrandError(f"strand {strand.strand_id} has no position")
    out: list[BaseCoordinate] = []
    if isinstance(pos[0], tuple):  # unit segment
        (x1, y1), (x2, y2) = pos
        sx, sy = x1 * dims.width, y1 * (dims.height / 2)
        ex, ey = x2 * dims.width, y2 * (dims.height / 2)
        n = strand.length
        base_index = 0
        for idx in sorted(strand.domain_seqs):
            for base in strand.domain_seqs[idx]:
                t = (base_index + 0.5) / n
                out.append(
                    BaseCoordinate(
                        strand.strand_id,
                        base_index,
                        base,
                        idx,
                        sx + t * (ex - sx),
                        sy + t * (ey - sy),
                    )
                )
                base_index += 1
        return out

    west = brick_west_x(pos, dims)
    north = brick_north_y(pos, dims)
    per_helix = dims.total_nt // 2
    pitch = dims.width / per_helix
    base_index = 0
    helix_pos = {"top": 0, "bottom": 0}
    for idx in sorted(strand.domain_seqs):
        helix = "top" if idx in (1, 2) else "bottom"
        y = north + (dims.height / 4 if helix == "top" else 3 * dims.height / 4)
        for base in strand.domain_seqs[idx]:
            i = helix_pos[helix]
            slot = i if helix == "top" else per_helix - 1 - i  # lower helix runs east->west
            out.append(
                BaseCoordinate(
                    strand.strand_id,
                    base_index,
                    base,
                    idx,
                    west + (slot + 0.5) * pitch,
                    y,
                )
            )
            helix_pos[helix] += 1
            base_index += 1
    return out


def _position_columns(strand: StrandRecord) -> tuple[str, str]:
    pos = strand.position
    if isinstance(pos[0], tuple):
        (x1, y1), (x2, y2) = pos
        return f"{x1}:{y1}", f"{x2}:{y2}"
    return str(pos[0]), str(pos[1])


def write_dnadata(design: DesignOutput) -> bytes:
    """Sequence table CSV: one row per strand plus the design tallies."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["strand_id", "tile_type", "row", "col", "d1", "d2", "d3", "d4", "full_sequence"]
    )
    for strand in sorted(design.strands, key=lambda s: s.strand_id):
        row, col = _position_columns(strand)
        domains = [strand.domain_seqs.get(i, "") for i in (1, 2, 3, 4)]
        writer.writerow([strand.strand_id, strand.tile_class, row, col, *domains, strand.full_seq])
    writer.writerow([])
    writer.writerow(["full_tiles", design.counts.full_tiles])
    writer.writerow(["half_tiles", design.counts.half_tiles])
    writer.writerow(["sticky_ends", design.counts.sticky_ends])
    writer.writerow(["bond_sequences", len(design.bond_sequences)])
    return buf.getvalue().encode("ascii")


def write_detailed(design: DesignOutput) -> bytes:
    """Per-base coordinate CSV, protectors included, 4-decimal coordinates."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["strand_id", "base_index", "base", "domain_index", "x_nm", "y_nm"])
    for strand in sorted(design.strands, key=lambda s: s.strand_id):
        for bc in base_coordinates(strand, design.dims):
            writer.writerow(
                [
                    bc.strand_id,
                    bc.base_index,
                    bc.base,
                    bc.domain_index,
                    f"{bc.x_nm:.4f}",
                    f"{bc.y_nm:.4f}",
                ]
            )
    return buf.getvalue().encode("ascii")


def _canvas_extent(
    selection, dims: BrickDimensions, rows: int | None, cols: int | None
) -> tuple[float, float]:
    items = sorted(selection)
    if isinstance(items[0][0], tuple):  # segments: node extent
        max_x = cols - 1 if cols else max(max(s[0][0], s[1][0]) for s in items)
        max_y = rows - 1 if rows else max(max(s[0][1], s[1][1]) for s in items)
        return max_x * dims.width, max_y * (dims.height / 2)
    max_row = rows - 1 if rows else max(c[0] for c in items)
    max_col = cols - 1 if cols else max(c[1] for c in items)
    return (max_col + 1) * dims.width + dims.width / 2, (max_row * 0.5 + 1) * dims.height


def render_shape_svg(
    selection,
    dims: BrickDimensions,
    rows: int | None = None,
    cols: int | None = None,
) -> bytes:
    """Deterministic SVG of the selection at lattice coordinates (nm units)."""
    items = sorted(selection)
    if not items:
        raise EmptySelectionError("nothing to render")
    width, height = _canvas_extent(items, dims, rows, cols)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width:.2f} {height:.2f}">',
    ]
    if isinstance(items[0][0], tuple):
        half = dims.height / 2
        for (x1, y1), (x2, y2) in items:
            parts.append(
                f'<line x1="{x1 * dims.width:.2f}" y1="{y1 * half:.2f}" '
                f'x2="{x2 * dims.width:.2f}" y2="{y2 * half:.2f}" '
                'stroke="#1f6f43" stroke-width="1.2" stroke-linecap="round"/>'
            )
    else:
        for cell in items:
            x = brick_west_x(cell, dims)
            y = brick_north_y(cell, dims)
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{dims.width:.2f}" '
                f'height="{dims.height:.2f}" fill="#2f7d4f" fill-opacity="0.55" '
                'stroke="#14331f" stroke-width="0.15"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts).encode("ascii")


def _nm(value: float) -> str:
    s = f"{value:.2f}"
    return s[:-1] if s.endswith("0") else s


def dnadata_filename(name: str) -> str:
    return f"DNAData_{name}.csv"


def detailed_filename(name: str) -> str:
    return f"DetailedDNAData_{name}.csv"


def pdf_filename(name: str, canvas_type: str) -> str:
    kind = getattr(canvas_type, "value", canvas_type)
    prefix = "FreeGridData" if kind == "free" else "DigitizedDNAData"
    return f"{prefix}_{name}.pdf"


def _draw_barcode(c, barcode: Barcode128, x: float, y: float, height: float) -> float:
    """Draw barcode modules at (x, y); returns the drawn width in points."""
    module = 0.9
    cx = x
    is_bar = True
    for w in barcode.module_widths:
        if is_bar:
            c.rect(cx, y, w * module, height, fill=1, stroke=0)
        cx += w * module
        is_bar = not is_bar
    return cx - x


def write_pdf(
    design: DesignOutput, selection, name: str = "untitled"
) -> bytes:
    """Single-page report: title, hash + barcode, dimensions, shape image and
    the sequence table laid out in the brick pattern. Byte-deterministic."""
    from reportlab.pdfgen import canvas as pdfcanvas

    items = sorted(selection)
    if not items:
        raise EmptySelectionError("nothing to report")
    page_w, page_h = 595.0, 842.0
    buf = io.BytesIO()
    c = pdfcanvas.Canvas(buf, pagesize=(page_w, page_h), invariant=1, pageCompression=0)
    c.setTitle(name)

    c.setFont("Helvetica-Bold", 16)
    c.drawString(50, page_h - 60, name)
    c.setFont("Helvetica", 10)
    c.drawString(50, page_h - 80, f"Shape {design.shape_hash}")
    c.drawString(
        50,
        page_h - 94,
        f"Brick {_nm(design.dims.height)} x {_nm(design.dims.width)} nm, "
        f"{design.dims.total_nt} nt per full strand",
    )
    c.drawString(
        50,
        page_h - 108,
        f"{design.counts.full_tiles} full tiles, {design.counts.half_tiles} half tiles, "
        f"{design.counts.sticky_ends} sticky ends, {len(design.bond_sequences)} bonds",
    )

    barcode = encode_code128(design.shape_hash)
    bw = _draw_barcode(c, barcode, page_w - 220, page_h - 100, 34)
    c.setFont("Helvetica", 7)
    c.drawString(page_w - 220 + bw / 2 - 20, page_h - 112, design.shape_hash)

    digitized = isinstance(items[0][0], tuple)
    extent_w, extent_h = _canvas_extent(items, design.dims, None, None)
    extent_w, extent_h = max(extent_w, 1e-6), max(extent_h, 1e-6)

    # Shape image, top region.
    img_box = (50.0, page_h - 370, 240.0, 240.0)
    scale = min(img_box[2] / extent_w, img_box[3] / extent_h)

    def to_page(x_nm: float, y_nm: float, box) -> tuple[float, float]:
        return box[0] + x_nm * scale, box[1] + box[3] - y_nm * scale

    c.setFillColorRGB(0.18, 0.49, 0.31)
    if digitized:
        c.setLineWidth(1.0)
        c.setStrokeColorRGB(0.18, 0.49, 0.31)
        half = design.dims.height / 2
        for (x1, y1), (x2, y2) in items:
            ax, ay = to_page(x1 * design.dims.width, y1 * half, img_box)
            bx, by = to_page(x2 * design.dims.width, y2 * half, img_box)
            c.line(ax, ay, bx, by)
    else:
        for cell in items:
            x, y = to_page(
                brick_west_x(cell, design.dims),
                brick_north_y(cell, design.dims) + design.dims.height,
                img_box,
            )
            c.rect(x, y, design.dims.width * scale, design.dims.height * scale, fill=1, stroke=0)
    c.setFillColorRGB(0, 0, 0)

    # Sequence table arranged in the brick pattern, lower region.
    seq_box = (50.0, 40.0, page_w - 100.0, 400.0)
    seq_scale = min(seq_box[2] / extent_w, seq_box[3] / extent_h)
    font_size = max(1.0, min(6.0, seq_scale * design.dims.height * 0.28))
    c.setFont("Helvetica", font_size)
    for strand in sorted(design.strands, key=lambda s: s.strand_id):
        pos = strand.position
        if isinstance(pos[0], tuple):
            (x1, y1), (x2, y2) = pos
            x_nm = (x1 + x2) / 2 * design.dims.width
            y_nm = (y1 + y2) / 2 * (design.dims.height / 2)
        else:
            x_nm = brick_west_x(pos, design.dims)
            y_nm = brick_north_y(pos, design.dims) + design.dims.height / 2
        x, y = (
            seq_box[0] + x_nm * seq_scale,
            seq_box[1] + seq_box[3] - y_nm * seq_scale,
        )
        c.drawString(x, y, strand.full_seq)

    c.showPage()
    c.save()
    return buf.getvalue()


def extract_pdf_text(pdf: bytes) -> str:
    """Concatenate the literal strings of an uncompressed PDF content stream.

    Only handles the output of write_pdf (no compression, Tj operators);
    enough for smoke tests without a PDF parsing dependency.
    """
    chunks = re.findall(rb"\(((?:[^()\\]|\\.)*)\)\s*Tj", pdf)
    out = []
    for chunk in chunks:
        text = chunk.replace(rb"\(", b"(").replace(rb"\)", b")").replace(rb"\\", b"\\")
        out.append(text.decode("latin-1"))
    return "\n".join(out)
