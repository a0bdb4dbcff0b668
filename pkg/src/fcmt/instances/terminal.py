"""The terminal fc-multicategory: one of everything, one cell in every frame."""

from __future__ import annotations

from ..core import FcOracle, Frame, Hor, Path, TwoCell, Vert
from ..errors import UnknownCell

POINT = "*"
VERT = Vert("1", POINT, POINT)
HOR = Hor("m", POINT, POINT)
CELL = "!"


class TerminalFc(FcOracle):
    def objects(self):
        return [POINT]

    def verticals(self, x, y):
        return [VERT] if (x, y) == (POINT, POINT) else []

    def horizontals(self, x, y):
        return [HOR] if (x, y) == (POINT, POINT) else []

    def id_vert(self, x):
        if x != POINT:
            raise UnknownCell(f"unknown object {x!r}")
        return VERT

    def compose_vert(self, g, f):
        if f != VERT or g != VERT:
            raise UnknownCell("only one vertical exists")
        return VERT

    def _ok(self, frame: Frame) -> bool:
        return (frame.left == VERT and frame.right == VERT and frame.target == HOR
                and all(m == HOR for m in frame.source.cells) and frame.source.anchor == POINT)

    def cells(self, frame):
        if not self._ok(frame):
            raise UnknownCell(f"frame {frame} is not a frame of the terminal fc-multicategory")
        return [TwoCell(CELL, frame)]

    def count_cells(self, frame):
        return 1

    def contains(self, cell):
        return cell.id == CELL and self._ok(cell.frame)

    def _compose(self, theta, children, boundary, frame):
        return TwoCell(CELL, frame)

    def _identity(self, m):
        return TwoCell(CELL, Frame(Path.of(m), VERT, VERT, m))
