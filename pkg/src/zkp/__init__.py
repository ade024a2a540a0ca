"""Physical zero-knowledge proof for Hotaru Beam solutions."""

from .adversary import CheatStrategy, CheatingProver, InapplicableStrategy, get_cheating_prover, run_with_adversary
from .base import BeamPlan, PairPurpose, Prover, SegmentIntent
from .beams import embed_beam, embed_forced_beam, embed_hidden_beam, slot_count, slot_layout
from .honest_prover import HonestProver, greedy_merge, plan_beam
from .masks import SegmentVariant, build_mask, mirror, zero_mask
from .merge import absorb_column, check_final_table, merge_columns, run_merges
from .protocol import ProtocolResult, VerifyResult, run_protocol, simulate, verify_transcript
from .provers import get_prover
from .segments import embed_segment
from .simulator_prover import ReplayProver, SimulatorProver
from .state import ProtocolState, setup
from .transcript import Transcript, TranscriptFormatError, Verdict, instance_digest, load_transcript, parse_transcript

__all__ = [
    "BeamPlan",
    "CheatStrategy",
    "CheatingProver",
    "HonestProver",
    "InapplicableStrategy",
    "PairPurpose",
    "ProtocolResult",
    "ProtocolState",
    "Prover",
    "ReplayProver",
    "SegmentIntent",
    "SegmentVariant",
    "SimulatorProver",
    "Transcript",
    "TranscriptFormatError",
    "Verdict",
    "VerifyResult",
    "absorb_column",
    "build_mask",
    "check_final_table",
    "embed_beam",
    "embed_forced_beam",
    "embed_hidden_beam",
    "embed_segment",
    "get_cheating_prover",
    "get_prover",
    "greedy_merge",
    "instance_digest",
    "load_transcript",
    "merge_columns",
    "mirror",
    "parse_transcript",
    "plan_beam",
    "run_merges",
    "run_protocol",
    "run_with_adversary",
    "setup",
    "simulate",
    "slot_count",
    "slot_layout",
    "verify_transcript",
    "zero_mask",
]
