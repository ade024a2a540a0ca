"""Running, simulating and replaying the whole zero-knowledge protocol."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ..cards import (
    CardSession,
    CheckFailedError,
    RandomTape,
    ReplayMismatch,
    SeededTape,
    SessionMode,
    VisibleEvent,
)
from ..puzzle.model import PuzzleInstance, Solution
from .base import Prover
from .beams import embed_beam
from .merge import check_final_table, run_merges
from .provers import get_prover
from .state import ProtocolState, setup
from .transcript import Transcript, TranscriptFormatError, Verdict, instance_digest, parse_transcript

logger = logging.getLogger(__name__)

# Called with the state and a phase name after setup, every beam and every merge.
Audit = Callable[[ProtocolState, str], None]


@dataclass
class ProtocolResult:
    transcript: Transcript
    verdict: Verdict
    failure: Optional[VisibleEvent]
    state: ProtocolState

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT


@dataclass
class VerifyResult:
    valid: bool
    reason: str
    verdict: Optional[Verdict] = None


def _execute(
    inst: PuzzleInstance,
    prover: Prover,
    tape: RandomTape,
    mode: SessionMode = SessionMode.LIVE,
    recorded: Sequence[VisibleEvent] = (),
    audit: Optional[Audit] = None,
) -> ProtocolResult:
    session = CardSession(tape, mode, recorded)
    state = setup(inst, session)
    if audit:
        audit(state, "setup")
    failure = None
    try:
        for fid in range(1, inst.n + 1):
            embed_beam(state, prover, fid)
            if audit:
                audit(state, "beam")
        run_merges(state, prover, audit)
        check_final_table(state)
        verdict = Verdict.ACCEPT
    except CheckFailedError as e:
        verdict, failure = Verdict.REJECT, e.event
        logger.info("run rejected: %s", e.event.render())

    transcript = Transcript(tape.seed, instance_digest(inst), list(session.log.events), verdict)
    logger.info("%s run: %s after %d events", mode.value, verdict.value, len(session.log))
    return ProtocolResult(transcript, verdict, failure, state)


def run_protocol(
    inst: PuzzleInstance,
    sol: Optional[Solution],
    tape: RandomTape,
    audit: Optional[Audit] = None,
    prover: Optional[Prover] = None,
) -> ProtocolResult:
    """
    Run the protocol between a prover holding `sol` and Vera.

    The solution may be invalid; Vera then rejects. The audit callback sees the
    hidden state and must not influence the run.
    """
    if prover is None:
        prover = get_prover("honest", inst, sol)
    return _execute(inst, prover, tape, audit=audit)


def simulate(inst: PuzzleInstance, tape: RandomTape) -> ProtocolResult:
    """Produce an accepting transcript without any solution."""
    return _execute(inst, get_prover("simulator", inst), tape, SessionMode.SIMULATED)


def verify_transcript(inst: PuzzleInstance, text: str, seed: Optional[int] = None) -> VerifyResult:
    """
    Re-execute Vera's side of a recorded run and compare it event by event.

    Args:
        inst: The instance the transcript claims to be about.
        text: Rendered transcript.
        seed: Tape seed; defaults to the one in the transcript header.
    """
    try:
        recorded = parse_transcript(text)
    except TranscriptFormatError as e:
        return VerifyResult(False, f"malformed transcript: {e}")
    if recorded.instance != instance_digest(inst):
        return VerifyResult(False, "transcript was produced for a different instance")
    seed = seed if seed is not None else recorded.seed
    if seed is None:
        return VerifyResult(False, "no seed to replay the verifier's shuffles")

    try:
        replayed = _execute(inst, get_prover("replay", inst), SeededTape(seed), SessionMode.REPLAY, recorded.events)
    except ReplayMismatch as e:
        return VerifyResult(False, f"replay diverged at {e}")
    except ValueError as e:
        return VerifyResult(False, f"replay failed: {e}")

    replayed.transcript.seed = recorded.seed
    if replayed.transcript.render() != recorded.render():
        return VerifyResult(False, "replayed transcript differs from the recorded one", replayed.verdict)
    if replayed.verdict is not Verdict.ACCEPT:
        return VerifyResult(False, f"verifier rejects: {replayed.failure}", replayed.verdict)
    return VerifyResult(True, "ok", replayed.verdict)


__all__ = ["Audit", "ProtocolResult", "VerifyResult", "run_protocol", "simulate", "verify_transcript"]
