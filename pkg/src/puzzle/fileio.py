"""Line-based HOTARU v1 instance files and SOLUTION v1 solution files."""

import re
from typing import Iterator, List, Optional, Tuple

from .model import BeamPath, Direction, Firefly, GridPoint, PuzzleInstance, Solution

INSTANCE_HEADER = "HOTARU v1"
SOLUTION_HEADER = "SOLUTION v1"

_POINT = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


class HotaruFormatError(ValueError):
    """Syntax or semantic error in an instance or solution file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str) -> Iterator[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise HotaruFormatError(f"{what} must be an integer, got {token!r}", line) from None


def _expect_header(lines: List[Tuple[int, str]], header: str) -> None:
    if not lines or lines[0][1] != header:
        found = lines[0][1] if lines else "end of file"
        raise HotaruFormatError(
            f"expected header {header!r}, found {found!r}", lines[0][0] if lines else None
        )


def parse_instance(text: str) -> PuzzleInstance:
    """
    Parse a HOTARU v1 instance.

    Raises:
        HotaruFormatError: On syntax errors (with line number) or semantic
            errors such as duplicate positions, id gaps or off-board dots.
    """
    lines = list(_content_lines(text))
    _expect_header(lines, INSTANCE_HEADER)

    size: Optional[Tuple[int, int]] = None
    fireflies: List[Firefly] = []
    seen_ids = set()
    for number, line in lines[1:]:
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "grid":
            if size is not None:
                raise HotaruFormatError("duplicate grid line", number)
            if len(tokens) != 3:
                raise HotaruFormatError("expected 'grid <w> <h>'", number)
            size = (_int(tokens[1], "width", number), _int(tokens[2], "height", number))
        elif keyword == "firefly":
            if len(tokens) != 6:
                raise HotaruFormatError(
                    "expected 'firefly <id> <x> <y> <N|E|S|W> <bends|->'", number
                )
            fid = _int(tokens[1], "firefly id", number)
            if fid in seen_ids:
                raise HotaruFormatError(f"duplicate firefly id {fid}", number)
            seen_ids.add(fid)
            pos = GridPoint(_int(tokens[2], "x", number), _int(tokens[3], "y", number))
            try:
                dot = Direction(tokens[4])
            except ValueError:
                raise HotaruFormatError(f"unknown dot direction {tokens[4]!r}", number) from None
            bends = None if tokens[5] == "-" else _int(tokens[5], "bends", number)
            fireflies.append(Firefly(fid, pos, dot, bends))
        else:
            raise HotaruFormatError(f"unknown keyword {keyword!r}", number)

    if size is None:
        raise HotaruFormatError("missing grid line")
    fireflies.sort(key=lambda f: f.id)
    inst = PuzzleInstance(size[0], size[1], tuple(fireflies))
    issues = inst.problems()
    if issues:
        raise HotaruFormatError("; ".join(issues))
    return inst


def serialize_instance(inst: PuzzleInstance) -> str:
    out = [INSTANCE_HEADER, f"grid {inst.width} {inst.height}"]
    for f in sorted(inst.fireflies, key=lambda f: f.id):
        bends = "-" if f.bends is None else str(f.bends)
        out.append(f"firefly {f.id} {f.pos.x} {f.pos.y} {f.dot.value} {bends}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Solution:
    """Parse a SOLUTION v1 file; geometry is checked later by the validator."""
    lines = list(_content_lines(text))
    _expect_header(lines, SOLUTION_HEADER)

    beams = {}
    for number, line in lines[1:]:
        head, sep, rest = line.partition(":")
        tokens = head.split()
        if not sep or len(tokens) != 2 or tokens[0] != "beam":
            raise HotaruFormatError("expected 'beam <id> : (x,y) (x,y) ...'", number)
        owner = _int(tokens[1], "beam id", number)
        if owner in beams:
            raise HotaruFormatError(f"duplicate beam for firefly {owner}", number)
        vertices = tuple(GridPoint(int(x), int(y)) for x, y in _POINT.findall(rest))
        leftover = _POINT.sub("", rest).strip()
        if leftover or not vertices:
            raise HotaruFormatError(f"malformed vertex list {rest.strip()!r}", number)
        beams[owner] = BeamPath(owner, vertices)
    return Solution(beams)


def serialize_solution(sol: Solution) -> str:
    out = [SOLUTION_HEADER]
    for owner in sorted(sol.beams):
        points = " ".join(f"({p.x},{p.y})" for p in sol.beams[owner].vertices)
        out.append(f"beam {owner} : {points}")
    return "\n".join(out) + "\n"


def load_instance(path: str) -> PuzzleInstance:
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance(f.read())


def load_solution(path: str) -> Solution:
    with open(path, "r", encoding="utf-8") as f:
        return parse_solution(f.read())
