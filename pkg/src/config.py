"""Configuration management for the hotaru-beam-lab."""

import os


def _env_flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Central configuration for the application."""

    # Default tape seed, fixed so transcripts are reproducible
    SEED: int = int(os.getenv("HOTARU_SEED", "20240607"))

    # Stretch factor applied to formula coordinates by the reduction
    SCALE: int = int(os.getenv("HOTARU_SCALE", "16"))

    # Solver limits
    NODE_BUDGET: int = int(os.getenv("HOTARU_NODE_BUDGET", "2000000"))
    SOLUTION_CAP: int = int(os.getenv("HOTARU_SOLUTION_CAP", "1000"))
    PROPAGATE: bool = _env_flag("HOTARU_PROPAGATE", "1")

    # brute_force_sat refuses formulas with more variables than this
    MAX_SAT_VARS: int = int(os.getenv("HOTARU_MAX_SAT_VARS", "20"))

    # Number of seeded runs for the statistical zero-knowledge check
    ZK_RUNS: int = int(os.getenv("HOTARU_ZK_RUNS", "10000"))

    LOG_LEVEL: str = os.getenv("HOTARU_LOG_LEVEL", "WARNING")

    @classmethod
    def get_seed(cls) -> int:
        """Get the default tape seed."""
        return cls.SEED

    @classmethod
    def get_scale(cls) -> int:
        """Get the default reduction scale."""
        return cls.SCALE

    @classmethod
    def get_node_budget(cls) -> int:
        """Get the solver node budget."""
        return cls.NODE_BUDGET

    @classmethod
    def get_solution_cap(cls) -> int:
        """Get the saturation cap for solution counting."""
        return cls.SOLUTION_CAP

    @classmethod
    def get_propagate(cls) -> bool:
        """Whether the solver propagates forced beams before branching."""
        return cls.PROPAGATE

    @classmethod
    def get_max_sat_vars(cls) -> int:
        """Get the variable limit of the brute-force satisfiability oracle."""
        return cls.MAX_SAT_VARS

    @classmethod
    def get_zk_runs(cls) -> int:
        """Get the number of runs for the statistical zero-knowledge check."""
        return cls.ZK_RUNS

    @classmethod
    def get_log_level(cls) -> str:
        """Get the logging level name used by the CLI."""
        return cls.LOG_LEVEL.upper()


# Global config instance
config = Config()
