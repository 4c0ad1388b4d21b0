"""Editable selection state for the two molecular canvases.

Free-hand canvases hold a set of brick cells and rasterize strokes with
Bresenham's algorithm; digitized canvases hold unit grid segments and snap
every stroke onto an L-shaped horizontal-then-vertical path. Both track a
dirty flag for the save prompts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import OutOfBoundsError, WrongCanvasTypeError
from .lattice import BrickCoord, Node, Segment, canonical_segment

DEFAULT_ROWS = 64
DEFAULT_COLS = 64

SELECT = "select"
DESELECT = "deselect"


class CanvasType(str, Enum):
    FREE = "free"
    DIGITIZED = "digitized"


def bresenham_line(p0: tuple[int, int], p1: tuple[int, int]) -> list[tuple[int, int]]:
    """All integer grid cells on the Bresenham line from p0 to p1 inclusive."""
    r0, c0 = p0
    r1, c1 = p1
    dr = abs(r1 - r0)
    dc = -abs(c1 - c0)
    sr = 1 if r0 < r1 else -1
    sc = 1 if c0 < c1 else -1
    err = dr + dc
    cells = []
    while True:
        cells.append((r0, c0))
        if r0 == r1 and c0 == c1:
            return cells
        e2 = 2 * err
        if e2 >= dc:
            err += dc
            r0 += sr
        if e2 <= dr:
            err += dr
            c0 += sc


def l_path_segments(p0: Node, p1: Node) -> list[Segment]:
    """Unit segments on the horizontal-first L-path from p0 to p1.

    The horizontal leg runs to (p1.x, p0.y) first, then the vertical leg to
    p1; a diagonal stroke is thereby snapped onto grid lines.
    """
    x0, y0 = p0
    x1, y1 = p1
    segs: list[Segment] = []
    step = 1 if x1 > x0 else -1
    for x in range(x0, x1, step):
        segs.append(canonical_segment((x, y0), (x + step, y0)))
    step = 1 if y1 > y0 else -1
    for y in range(y0, y1, step):
        segs.append(canonical_segment((x1, y), (x1, y + step)))
    return segs


@dataclass
class CanvasState:
    """Mutable selection for one canvas; single writer at a time."""

    canvas_type: CanvasType = CanvasType.FREE
    rows: int = DEFAULT_ROWS
    cols: int = DEFAULT_COLS
    selection: set = field(default_factory=set)
    dirty: bool = False

    def _require(self, canvas_type: CanvasType) -> None:
        if self.canvas_type is not canvas_type:
            raise WrongCanvasTypeError(
                f"operation needs a {canvas_type.value} canvas, "
                f"this one is {self.canvas_type.value}"
            )

    def _check_cell(self, c: tuple[int, int]) -> BrickCoord:
        cell = BrickCoord(*c)
        if not (0 <= cell.row < self.rows and 0 <= cell.col < self.cols):
            raise OutOfBoundsError(f"cell {tuple(cell)} outside {self.rows}x{self.cols} canvas")
        return cell

    def _check_node(self, n: Node) -> Node:
        x, y = n
        if not (0 <= x < self.cols and 0 <= y < self.rows):
            raise OutOfBoundsError(f"node {(x, y)} outside {self.cols}x{self.rows} grid")
        return (x, y)

    def _apply(self, items, mode: str) -> None:
        changed = False
        for item in items:
            if mode == SELECT:
                if item not in self.selection:
                    self.selection.add(item)
                    changed = True
            else:
                if item in self.selection:
                    self.selection.discard(item)
                    changed = True
        if changed:
            self.dirty = True

    def apply_stroke_free(
        self, p0: tuple[int, int], p1: tuple[int, int], mode: str = SELECT
    ) -> "CanvasState":
        self._require(CanvasType.FREE)
        a = self._check_cell(p0)
        b = self._check_cell(p1)
        self._apply([BrickCoord(*c) for c in bresenham_line(a, b)], mode)
        return self

    def toggle_brick(self, c: tuple[int, int]) -> "CanvasState":
        self._require(CanvasType.FREE)
        cell = self._check_cell(c)
        if cell in self.selection:
            self.selection.discard(cell)
        else:
            self.selection.add(cell)
        self.dirty = True
        return self

    def apply_stroke_digitized(
        self, p0: Node, p1: Node, mode: str = SELECT
    ) -> "CanvasState":
        self._require(CanvasType.DIGITIZED)
        a = self._check_node(p0)
        b = self._check_node(p1)
        self._apply(l_path_segments(a, b), mode)
        return self

    def toggle_segment(self, seg: Segment) -> "CanvasState":
        self._require(CanvasType.DIGITIZED)
        a = self._check_node(seg[0])
        b = self._check_node(seg[1])
        s = canonical_segment(a, b)
        if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
            raise OutOfBoundsError(f"segment {s} is not a unit grid segment")
        if s in self.selection:
            self.selection.discard(s)
        else:
            self.selection.add(s)
        self.dirty = True
        return self

    def clear(self) -> "CanvasState":
        if self.selection:
            self.selection.clear()
            self.dirty = True
        return self

    def mark_saved(self) -> None:
        self.dirty = False
