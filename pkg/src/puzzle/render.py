"""ASCII rendering of instances and solutions."""

from typing import List, Optional

from .model import PuzzleInstance, Solution

_GLYPHS = "0123456789abcdefghijklmnopqrstuvwxyz"


def _glyph(fid: int) -> str:
    return _GLYPHS[fid] if fid < len(_GLYPHS) else "@"


def render_ascii(inst: PuzzleInstance, sol: Optional[Solution] = None) -> str:
    """
    Draw the board with y growing upward.

    Fireflies show their base-36 id, the edge holding a firefly's dot shows
    'o', beams are drawn with '-' and '|'. A legend lists bend numbers.
    """
    cols, rows = 2 * inst.width - 1, 2 * inst.height - 1
    canvas: List[List[str]] = [[" "] * cols for _ in range(rows)]

    def put(x2: int, y2: int, ch: str) -> None:
        canvas[rows - 1 - y2][x2] = ch

    for p in inst.points():
        put(2 * p.x, 2 * p.y, ".")

    if sol is not None:
        for beam in sol.beams.values():
            if len(beam.vertices) < 2 or not all(inst.in_bounds(v) for v in beam.vertices):
                continue
            try:
                points = beam.points()
            except ValueError:
                continue
            for a, b in zip(points, points[1:]):
                if not (inst.in_bounds(a) and inst.in_bounds(b)):
                    break
                put(a.x + b.x, a.y + b.y, "-" if a.y == b.y else "|")
                if inst.firefly_at(b) is None:
                    put(2 * b.x, 2 * b.y, "+")

    for f in inst.fireflies:
        put(2 * f.pos.x, 2 * f.pos.y, _glyph(f.id))
        dot = f.dot_point
        put(f.pos.x + dot.x, f.pos.y + dot.y, "o")

    board = "\n".join("".join(row).rstrip() for row in canvas)
    legend = [
        f"{_glyph(f.id)}: ({f.pos.x},{f.pos.y}) dot {f.dot.value} bends {'-' if f.bends is None else f.bends}"
        for f in inst.fireflies
    ]
    return board + "\n\n" + "\n".join(legend) + "\n"
