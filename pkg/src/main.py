"""Main CLI entrypoint for the hotaru-beam-lab."""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, NoReturn, Optional, Sequence

import typer

try:
    # Newer typer releases vendor click; catch the exceptions typer actually raises
    from typer import _click as click
except ImportError:
    import click
from pydantic import BaseModel, Field, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

# Handle both module import and direct script execution
if __name__ == "__main__" and __package__ is None:
    sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cards import get_tape
from src.config import config
from src.puzzle import (
    HotaruFormatError,
    load_instance,
    load_solution,
    render_ascii,
    serialize_instance,
    serialize_solution,
    validate_solution,
)
from src.reduction import (
    MIN_SCALE,
    FormulaFormatError,
    ReductionError,
    TooManyVariables,
    WitnessError,
    assignment_to_solution,
    brute_force_sat,
    load_formula,
    load_map,
    reduce_to_hotaru,
    solution_to_assignment,
)
from src.solver import BudgetExhausted, SearchConfig, count_solutions, solve
from src.zkp import (
    CheatStrategy,
    InapplicableStrategy,
    TranscriptFormatError,
    parse_transcript,
    run_protocol,
    run_with_adversary,
    simulate,
    verify_transcript,
)

app = typer.Typer(
    name="hotaru",
    help="Solve, reduce to and prove Hotaru Beam puzzles in zero knowledge",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger("src.main")

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

VERBOSE = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level")


class CommandConfig(BaseModel):
    """Settings of one command: flags first, then HOTARU_* variables, then defaults."""

    seed: int = Field(default_factory=config.get_seed, ge=0, lt=2**64)
    scale: int = Field(default_factory=config.get_scale, ge=MIN_SCALE)
    budget: int = Field(default_factory=config.get_node_budget, ge=1)
    cap: int = Field(default_factory=config.get_solution_cap, ge=1)
    propagate: bool = Field(default_factory=config.get_propagate)
    entropy: bool = False
    out: Optional[Path] = None

    def search(self) -> SearchConfig:
        return SearchConfig(node_budget=self.budget, solution_cap=self.cap, propagate=self.propagate)


def _settings(verbose: bool, **flags) -> CommandConfig:
    """Install logging and merge the flags that were given into a CommandConfig."""
    level = logging.DEBUG if verbose else getattr(logging, config.get_log_level(), logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )
    try:
        settings = CommandConfig(**{k: v for k, v in flags.items() if v is not None})
    except ValidationError as e:
        for error in e.errors():
            field = ".".join(str(part) for part in error["loc"])
            err_console.print(f"[red]✗[/red] --{field}: {escape(error['msg'])}")
        raise typer.Exit(EXIT_USAGE)
    logger.debug("settings: %s", settings)
    return settings


def _fail(message: str, code: int = EXIT_NEGATIVE) -> NoReturn:
    err_console.print(f"[red]✗[/red] {escape(message)}", highlight=False)
    raise typer.Exit(code)


@contextmanager
def _handled() -> Iterator[None]:
    """Map library errors to exit codes."""
    try:
        yield
    except BudgetExhausted as e:
        _fail(f"{e}; raise --budget or HOTARU_NODE_BUDGET", EXIT_BUDGET)
    except (HotaruFormatError, FormulaFormatError, TranscriptFormatError, TooManyVariables) as e:
        _fail(str(e), EXIT_USAGE)
    except OSError as e:
        _fail(f"{e.filename or 'file'}: {e.strerror or e}", EXIT_USAGE)


def _emit(text: str, out: Optional[Path], what: str) -> None:
    """Write file-format text to `out`, or to stdout when no path is given."""
    if out is None:
        typer.echo(text, nl=False)
        return
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    except OSError as e:
        _fail(f"{out}: {e.strerror or e}", EXIT_USAGE)
    err_console.print(f"[green]✓[/green] {what} written to {out}")


@app.command("solve")
def solve_cmd(
    instance: Path = typer.Argument(..., help="Instance file (HOTARU v1)"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Solution file to write"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search node budget"),
    no_propagate: bool = typer.Option(False, "--no-propagate", help="Branch without forced-beam propagation"),
    verbose: bool = VERBOSE,
):
    """Find one solution of an instance."""
    settings = _settings(verbose, budget=budget, propagate=False if no_propagate else None, out=out)
    with _handled():
        inst = load_instance(str(instance))
        sol = solve(inst, settings.search())
    if sol is None:
        _fail(f"{instance} has no solution")
    _emit(serialize_solution(sol), settings.out, "Solution")


@app.command("validate")
def validate_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    solution: Path = typer.Argument(..., help="Solution file (SOLUTION v1)"),
    verbose: bool = VERBOSE,
):
    """Check a solution against every rule of the puzzle."""
    _settings(verbose)
    with _handled():
        inst = load_instance(str(instance))
        sol = load_solution(str(solution))
    violations = validate_solution(inst, sol)
    if violations:
        for v in violations:
            err_console.print(f"[red]✗[/red] {escape(str(v))}", highlight=False)
        raise typer.Exit(EXIT_NEGATIVE)
    console.print(f"[green]✓[/green] valid solution for {inst.n} fireflies")


@app.command("count")
def count_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Stop counting at this many solutions"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Search node budget"),
    verbose: bool = VERBOSE,
):
    """Count solutions, saturating at the cap."""
    settings = _settings(verbose, cap=cap, budget=budget)
    with _handled():
        total = count_solutions(load_instance(str(instance)), settings.search())
    suffix = " (cap reached)" if total >= settings.cap else ""
    typer.echo(f"{total}{suffix}")
    if total == 0:
        raise typer.Exit(EXIT_NEGATIVE)


@app.command("reduce")
def reduce_cmd(
    formula: Path = typer.Argument(..., help="Embedded formula file (PM3SAT v1)"),
    scale: Optional[int] = typer.Option(None, "--scale", "-s", help=f"Stretch factor, at least {MIN_SCALE}"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output prefix; defaults to the formula path"),
    witness: bool = typer.Option(False, "--witness", help="Also write the solution of a satisfying assignment"),
    verbose: bool = VERBOSE,
):
    """Generate the Hotaru Beam instance of a planar monotone formula."""
    settings = _settings(verbose, scale=scale, out=out)
    with _handled():
        phi = load_formula(str(formula))
        try:
            inst, rmap = reduce_to_hotaru(phi, settings.scale)
        except ReductionError as e:
            _fail(str(e))
        prefix = settings.out or formula.with_suffix("")
        _emit(serialize_instance(inst), Path(f"{prefix}.hotaru"), "Instance")
        _emit(rmap.to_json(), Path(f"{prefix}.map.json"), "Placement map")
        if witness:
            assignment = brute_force_sat(phi)
            if assignment is None:
                err_console.print("[yellow]Formula is unsatisfiable; no witness written[/yellow]")
            else:
                _emit(serialize_solution(assignment_to_solution(rmap, assignment)), Path(f"{prefix}.solution"), "Witness")
    console.print(f"[green]✓[/green] {inst.width}x{inst.height} board with {inst.n} fireflies")


def _format_assignment(assignment) -> str:
    return " ".join(f"{name}={'1' if value else '0'}" for name, value in assignment.items())


@app.command("sat")
def sat_cmd(
    formula: Path = typer.Argument(..., help="Embedded formula file"),
    map_path: Optional[Path] = typer.Option(None, "--map", help="Placement map written by reduce"),
    solution: Optional[Path] = typer.Option(None, "--solution", help="Solution of the reduced instance to read back"),
    verbose: bool = VERBOSE,
):
    """Decide a formula by brute force, or read an assignment back from a reduced solution."""
    _settings(verbose)
    if solution is not None and map_path is None:
        _fail("--solution needs the --map written by reduce", EXIT_USAGE)
    with _handled():
        phi = load_formula(str(formula))
        if solution is None:
            assignment = brute_force_sat(phi)
            if assignment is None:
                _fail("unsatisfiable")
        else:
            try:
                assignment = solution_to_assignment(load_map(str(map_path)), load_solution(str(solution)))
            except (WitnessError, ValueError) as e:
                _fail(str(e))
    typer.echo(_format_assignment(assignment))
    if not phi.evaluate(assignment):
        _fail("assignment does not satisfy the formula")


@app.command("prove")
def prove_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    solution: Path = typer.Argument(..., help="The prover's solution"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Tape seed"),
    entropy: bool = typer.Option(False, "--entropy", help="Draw the seed from the OS"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Transcript file to write"),
    verbose: bool = VERBOSE,
):
    """Run the protocol with a prover holding the solution and record the transcript."""
    settings = _settings(verbose, seed=seed, entropy=entropy, out=out)
    with _handled():
        inst = load_instance(str(instance))
        sol = load_solution(str(solution))
        result = run_protocol(inst, sol, get_tape(settings.seed, settings.entropy))
    _emit(result.transcript.render(), settings.out, "Transcript")
    if not result.accepted:
        _fail(f"Vera rejects: {result.failure.render()}")
    err_console.print(f"[green]✓[/green] Vera accepts after {len(result.transcript.events)} events")


@app.command("simulate")
def simulate_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Tape seed"),
    entropy: bool = typer.Option(False, "--entropy", help="Draw the seed from the OS"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Transcript file to write"),
    verbose: bool = VERBOSE,
):
    """Produce an accepting transcript without a solution."""
    settings = _settings(verbose, seed=seed, entropy=entropy, out=out)
    with _handled():
        result = simulate(load_instance(str(instance)), get_tape(settings.seed, settings.entropy))
    _emit(result.transcript.render(), settings.out, "Simulated transcript")
    if not result.accepted:
        _fail(f"simulation rejected: {result.failure}")


@app.command("verify")
def verify_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    transcript: Path = typer.Argument(..., help="Transcript file (TRANSCRIPT v1)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Tape seed; defaults to the transcript header"),
    verbose: bool = VERBOSE,
):
    """Replay Vera's side of a transcript and check it event by event."""
    _settings(verbose)
    with _handled():
        inst = load_instance(str(instance))
        text = transcript.read_text(encoding="utf-8")
        parse_transcript(text)
    result = verify_transcript(inst, text, seed)
    if not result.valid:
        _fail(result.reason)
    console.print("[green]✓[/green] transcript verified: Accept")


@app.command("render")
def render_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    solution: Optional[Path] = typer.Argument(None, help="Solution to draw"),
    verbose: bool = VERBOSE,
):
    """Draw an instance, and optionally a solution, as ASCII."""
    _settings(verbose)
    with _handled():
        inst = load_instance(str(instance))
        sol = load_solution(str(solution)) if solution is not None else None
    typer.echo(render_ascii(inst, sol))


@app.command("attack")
def attack_cmd(
    instance: Path = typer.Argument(..., help="Instance file"),
    cheat: CheatStrategy = typer.Option(..., "--cheat", "-c", help="How the prover deviates"),
    solution: Optional[Path] = typer.Option(None, "--solution", help="Solution to deviate from; solved for when omitted"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Tape seed"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Transcript file to write"),
    verbose: bool = VERBOSE,
):
    """Run a cheating prover; succeeds when Vera catches it."""
    settings = _settings(verbose, seed=seed, out=out)
    with _handled():
        inst = load_instance(str(instance))
        sol = load_solution(str(solution)) if solution is not None else None
        try:
            result = run_with_adversary(inst, cheat, get_tape(settings.seed), sol)
        except InapplicableStrategy as e:
            _fail(str(e))
    if settings.out is not None:
        _emit(result.transcript.render(), settings.out, "Transcript")
    if result.accepted:
        _fail(f"{cheat.value} was accepted")
    console.print(f"[green]✓[/green] {cheat.value} caught by {result.failure.get('check')}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point for the CLI.

    Returns:
        int: 0 success, 1 clean negative, 2 usage or format error, 3 budget exhausted.
    """
    args: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        code = app(args=args, prog_name="hotaru", standalone_mode=False)
    except click.ClickException as e:
        e.show(file=sys.stderr)
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_NEGATIVE
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
