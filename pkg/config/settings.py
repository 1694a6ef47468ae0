"""Configuration settings for the SPQ toolkit."""

import logging
import os
from pathlib import Path
from pydantic import BaseModel
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

PROJECT_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseModel):
    """Application settings."""

    # Satisfiability Configuration
    max_states: int = int(os.getenv("SPQ_MAX_STATES", "3"))

    # Soundness Fuzzing Configuration
    fuzz_trials: int = int(os.getenv("SPQ_FUZZ_TRIALS", "200"))
    fuzz_seed: int = int(os.getenv("SPQ_FUZZ_SEED", str(0x535051)), 0)

    # Planner Configuration
    plan_max_depth: int = int(os.getenv("SPQ_PLAN_DEPTH", "3"))

    # Similarity classes are computed from truth tables
    max_canonical_vars: int = int(os.getenv("SPQ_MAX_CANON_VARS", "16"))

    # Bundled data
    telescope_path: str = str(PROJECT_ROOT / "data" / "telescope.json")

    # Logging Configuration
    log_level: str = os.getenv("SPQ_LOG_LEVEL", "WARNING").upper()
    log_format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    def validate_settings(self) -> None:
        """Validate numeric bounds and the log level."""
        if self.max_states < 1:
            raise ValueError("SPQ_MAX_STATES must be at least 1")
        if self.fuzz_trials < 1:
            raise ValueError("SPQ_FUZZ_TRIALS must be at least 1")
        if self.plan_max_depth < 0:
            raise ValueError("SPQ_PLAN_DEPTH must not be negative")
        if not 1 <= self.max_canonical_vars <= 16:
            raise ValueError("SPQ_MAX_CANON_VARS must lie between 1 and 16")
        if not isinstance(getattr(logging, self.log_level, None), int):
            raise ValueError(f"Unknown log level: {self.log_level}")


# Global settings instance
settings = Settings()
