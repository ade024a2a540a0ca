"""Hotaru Beam Lab - solver, SAT reduction and physical zero-knowledge proof for Hotaru Beam puzzles."""

__version__ = "0.1.0"
