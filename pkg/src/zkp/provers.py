"""Prover selection."""

from typing import Optional

from ..puzzle.model import PuzzleInstance, Solution
from .base import Prover
from .honest_prover import HonestProver
from .simulator_prover import ReplayProver, SimulatorProver


def get_prover(kind: str, inst: PuzzleInstance, sol: Optional[Solution] = None) -> Prover:
    """
    Build the prover for a kind of run.

    Args:
        kind: "honest", "simulator" or "replay".
        inst: The instance being proved.
        sol: Solution of an honest prover; an empty one stands in when omitted.

    Returns:
        A concrete Prover.

    Raises:
        ValueError: If the kind is unknown.
    """
    if kind == "honest":
        return HonestProver(inst, sol if sol is not None else Solution())
    if kind == "simulator":
        return SimulatorProver(inst)
    if kind == "replay":
        return ReplayProver(inst)
    raise ValueError(f"Unknown prover kind {kind!r}; expected honest, simulator or replay")


__all__ = ["get_prover"]
