"""Embedded planar monotone 3-SAT formulas and the PM3SAT v1 file format."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

FORMULA_HEADER = "PM3SAT v1"

Assignment = Dict[str, bool]


class FormulaFormatError(ValueError):
    """Syntax error in a formula file."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Side(Enum):
    POSITIVE = "+"
    NEGATIVE = "-"


@dataclass(frozen=True)
class Variable:
    """Variable segment on the axis y=0, from x_lo to x_hi."""

    name: str
    x_lo: int
    x_hi: int


@dataclass(frozen=True)
class Leg:
    """Vertical segment joining a clause to a variable at column x."""

    name: str
    x: int
    negated: bool = False

    def __str__(self) -> str:
        return f"{self.x}:{'~' if self.negated else ''}{self.name}"


@dataclass(frozen=True)
class Clause:
    side: Side
    x_lo: int
    x_hi: int
    level: int
    legs: Tuple[Leg, ...]

    def sorted_legs(self) -> Tuple[Leg, ...]:
        return tuple(sorted(self.legs, key=lambda leg: leg.x))

    def satisfied_by(self, assignment: Assignment) -> bool:
        return any(assignment[leg.name] != leg.negated for leg in self.legs)

    def __str__(self) -> str:
        return "(" + " | ".join(("~" if leg.negated else "") + leg.name for leg in self.legs) + ")"


@dataclass(frozen=True)
class PlanarFormula:
    variables: Tuple[Variable, ...]
    clauses: Tuple[Clause, ...] = ()

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise ValueError(f"unknown variable {name!r}")

    def evaluate(self, assignment: Assignment) -> bool:
        missing = set(self.names) - set(assignment)
        if missing:
            raise ValueError(f"assignment is missing {sorted(missing)}")
        return all(c.satisfied_by(assignment) for c in self.clauses)

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.clauses) or "(empty)"


def _int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormulaFormatError(f"{what} must be an integer, got {token!r}", line) from None


def _parse_leg(token: str, line: int) -> Leg:
    x, sep, name = token.partition(":")
    if not sep or not name:
        raise FormulaFormatError(f"expected '<legx>:<name>' or '<legx>:~<name>', got {token!r}", line)
    negated = name.startswith("~")
    name = name[1:] if negated else name
    if not name:
        raise FormulaFormatError(f"missing variable name in {token!r}", line)
    return Leg(name, _int(x, "leg x", line), negated)


def parse_formula(text: str) -> PlanarFormula:
    """
    Parse a PM3SAT v1 formula.

    Only syntax is checked here; validate_embedding reports semantic problems.

    Raises:
        FormulaFormatError: On syntax errors, with the line number.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped))
    if not lines or lines[0][1] != FORMULA_HEADER:
        raise FormulaFormatError(f"expected header {FORMULA_HEADER!r}", lines[0][0] if lines else None)

    variables: List[Variable] = []
    clauses: List[Clause] = []
    for number, line in lines[1:]:
        tokens = line.split()
        if tokens[0] == "var":
            if len(tokens) != 4:
                raise FormulaFormatError("expected 'var <name> <x_lo> <x_hi>'", number)
            variables.append(
                Variable(tokens[1], _int(tokens[2], "x_lo", number), _int(tokens[3], "x_hi", number))
            )
        elif tokens[0] == "clause":
            if not 6 <= len(tokens) <= 8:
                raise FormulaFormatError("expected 'clause <+|-> <x_lo> <x_hi> <y> <leg> [<leg> [<leg>]]'", number)
            try:
                side = Side(tokens[1])
            except ValueError:
                raise FormulaFormatError(f"clause side must be + or -, got {tokens[1]!r}", number) from None
            clauses.append(
                Clause(
                    side,
                    _int(tokens[2], "x_lo", number),
                    _int(tokens[3], "x_hi", number),
                    _int(tokens[4], "y", number),
                    tuple(_parse_leg(t, number) for t in tokens[5:]),
                )
            )
        else:
            raise FormulaFormatError(f"unknown keyword {tokens[0]!r}", number)
    return PlanarFormula(tuple(variables), tuple(clauses))


def serialize_formula(phi: PlanarFormula) -> str:
    out = [FORMULA_HEADER]
    for v in phi.variables:
        out.append(f"var {v.name} {v.x_lo} {v.x_hi}")
    for c in phi.clauses:
        legs = " ".join(str(leg) for leg in c.legs)
        out.append(f"clause {c.side.value} {c.x_lo} {c.x_hi} {c.level} {legs}")
    return "\n".join(out) + "\n"


def load_formula(path: str) -> PlanarFormula:
    with open(path, "r", encoding="utf-8") as f:
        return parse_formula(f.read())
