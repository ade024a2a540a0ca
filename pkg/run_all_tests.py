"""
Script to run the corpus test sets (solver, reduction, completeness, soundness)
and write a schema-checked JSON report.
"""

import argparse
import datetime
import random
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from src.cards import SeededTape
from src.puzzle import (
    Direction,
    Firefly,
    GridPoint,
    PuzzleInstance,
    Solution,
    load_instance,
    load_solution,
    validate_solution,
)
from src.reduction import (
    MIN_SCALE,
    assignment_to_solution,
    brute_force_sat,
    load_formula,
    reduce_to_hotaru,
    solution_to_assignment,
)
from src.solver import SearchConfig, brute_force_count, count_solutions, solve
from src.utils.result_exporter import export_report
from src.zkp import CheatStrategy, InapplicableStrategy, run_protocol, run_with_adversary, verify_transcript

TEST_SETS = ["solver", "reduction", "completeness", "soundness"]
DATA_DIR = Path(__file__).resolve().parent / "src" / "data"

Case = Tuple[str, Callable[[], Tuple[bool, str]]]


def random_instance(rng: random.Random) -> PuzzleInstance:
    """A small well-formed instance the exhaustive oracle can still enumerate."""
    while True:
        width = rng.randint(1, 4)
        height = rng.randint(1, 12 // width)
        points = [GridPoint(x, y) for y in range(height) for x in range(width)]
        chosen = rng.sample(points, rng.randint(1, min(3, len(points))))
        fireflies = tuple(
            Firefly(fid, pos, rng.choice(list(Direction)), rng.choice([None, 0, 1, 2, 3]))
            for fid, pos in enumerate(chosen, start=1)
        )
        inst = PuzzleInstance(width, height, fireflies)
        if not inst.problems():
            return inst


def solver_cases(seed: int, count: int) -> List[Case]:
    rng = random.Random(seed)

    def check(inst: PuzzleInstance) -> Tuple[bool, str]:
        expected = brute_force_count(inst, cap=50)
        sol = solve(inst)
        counted = count_solutions(inst, SearchConfig(solution_cap=50))
        if (sol is not None) != (expected > 0):
            return False, f"solver decided {sol is not None}, oracle counted {expected}"
        if sol is not None and validate_solution(inst, sol):
            return False, "solver returned an invalid solution"
        return counted == expected, f"{counted} solutions, oracle {expected}"

    cases = []
    for index in range(count):
        inst = random_instance(rng)
        cases.append((f"random-{index}-{inst.width}x{inst.height}", lambda inst=inst: check(inst)))
    return cases


def reduction_cases() -> List[Case]:
    def check(path: Path) -> Tuple[bool, str]:
        phi = load_formula(str(path))
        inst, rmap = reduce_to_hotaru(phi, MIN_SCALE)
        sol = solve(inst)
        satisfiable = brute_force_sat(phi) is not None
        if (sol is not None) != satisfiable:
            return False, f"instance solvable={sol is not None}, formula satisfiable={satisfiable}"
        if sol is not None and not phi.evaluate(solution_to_assignment(rmap, sol)):
            return False, "read-back assignment does not satisfy the formula"
        return True, f"{inst.width}x{inst.height}, {inst.n} fireflies, satisfiable={satisfiable}"

    paths = sorted((DATA_DIR / "formulas").glob("*.pm3sat")) + [DATA_DIR / "four_vars.pm3sat"]
    return [(path.stem, lambda path=path: check(path)) for path in paths]


def completeness_cases(seed: int, count: int) -> List[Case]:
    def check(name: str, run_seed: int) -> Tuple[bool, str]:
        inst = load_instance(str(DATA_DIR / f"{name}.hotaru"))
        result = run_protocol(inst, load_solution(str(DATA_DIR / f"{name}.solution")), SeededTape(run_seed))
        if not result.accepted:
            return False, f"rejected: {result.failure.render()}"
        replay = verify_transcript(inst, result.transcript.render())
        return replay.valid, replay.reason or f"{len(result.transcript.events)} events"

    return [
        (f"{name}-seed-{s}", lambda name=name, s=s: check(name, s))
        for name in ("six_by_six", "two_by_two")
        for s in range(seed, seed + count)
    ]


def soundness_instances() -> Dict[str, Tuple[PuzzleInstance, Solution]]:
    """Every instance the catalogue runs on, each with the solution its cheaters start from."""
    pairs = {
        name: (load_instance(str(DATA_DIR / f"{name}.hotaru")), load_solution(str(DATA_DIR / f"{name}.solution")))
        for name in ("six_by_six", "two_by_two")
    }
    phi = load_formula(str(DATA_DIR / "formulas" / "exclusive_or.pm3sat"))
    inst, rmap = reduce_to_hotaru(phi, MIN_SCALE)
    pairs["exclusive_or"] = (inst, assignment_to_solution(rmap, brute_force_sat(phi)))
    return pairs


def soundness_cases(seed: int, runs: int) -> List[Case]:
    pairs = soundness_instances()

    def check(name: str, cheat: CheatStrategy) -> Tuple[bool, str]:
        inst, sol = pairs[name]
        caught = Counter()
        for run_seed in range(seed, seed + runs):
            try:
                result = run_with_adversary(inst, cheat, SeededTape(run_seed), sol)
            except InapplicableStrategy as e:
                # Only the worked example must offer an opening for every deviation.
                return name != "six_by_six", f"not applicable: {e}"
            if result.accepted:
                return False, f"accepted with seed {run_seed}"
            caught[result.failure.get("check")] += 1
        if name == "six_by_six" and set(caught) != {cheat.expected_check.value}:
            return False, f"caught by {dict(caught)}"
        return True, f"rejected {runs} runs, caught by {dict(caught)}"

    return [
        (f"{name}-{cheat.value}", lambda name=name, cheat=cheat: check(name, cheat))
        for name in pairs
        for cheat in CheatStrategy
    ]


def run_set(name: str, cases: List[Case]) -> List[Dict]:
    results = []
    for case, check in cases:
        start = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        duration = time.perf_counter() - start
        results.append({"set": name, "case": case, "passed": passed, "detail": detail, "duration_s": duration})
        print(f"  {'ok  ' if passed else 'FAIL'} {case}: {detail}")
    return results


def main():
    parser = argparse.ArgumentParser(description="Run the Hotaru Beam corpus test sets.")
    parser.add_argument("--seed", "-s", type=int, default=0, help="Base seed for instances and tapes")
    parser.add_argument("--instances", "-n", type=int, default=200, help="Random instances for the solver set")
    parser.add_argument("--runs", "-r", type=int, default=10, help="Seeds per instance for the completeness and soundness sets")
    parser.add_argument(
        "--sets",
        nargs="+",
        default=TEST_SETS,
        choices=TEST_SETS,
        help="Test sets to run",
    )
    parser.add_argument("--output", "-o", help="Report path; defaults to results/report_<date>.json")

    args = parser.parse_args()

    date_str = datetime.datetime.now().strftime("%d_%m")
    output_path = Path(args.output) if args.output else Path("results") / f"report_{date_str}.json"

    builders = {
        "solver": lambda: solver_cases(args.seed, args.instances),
        "reduction": reduction_cases,
        "completeness": lambda: completeness_cases(args.seed, args.runs),
        "soundness": lambda: soundness_cases(args.seed, args.runs),
    }

    print(f"Seed: {args.seed}")
    print("-" * 50)

    results: List[Dict] = []
    for test_set in args.sets:
        print(f"\n>>> Running test set: {test_set}")
        results.extend(run_set(test_set, builders[test_set]()))

    report = export_report(results, str(output_path), args.seed)

    print("\n" + "=" * 50)
    for test_set, counts in report["summary"].items():
        print(f"{test_set}: {counts['passed']}/{counts['total']} passed")
    print(f"Report saved to {output_path}")
    return 0 if all(r["passed"] for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
