# pipeline/run_config.py

import os
import re
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from config import DEFAULT_GRID_STEP, DEFAULT_SEED, ECE_BINS, MAX_GRID_STEP, OUTPUT_DIR
from ingestion.records import Scale

COMMANDS = ("calibrate", "curve", "threshold", "compare", "survey", "sample")


class RunConfig(BaseModel):
    """Validated options for one CLI run"""
    model_config = ConfigDict(frozen=True)

    command: str
    predictions: List[Path] = []
    values: Optional[Path] = None
    survey: Optional[Path] = None
    corpus: Optional[Path] = None
    plan: Optional[Path] = None
    calibration: Optional[Path] = None
    grid_step: float = DEFAULT_GRID_STEP
    per_class: bool = False
    scale: Optional[Scale] = None
    validity: bool = False
    zero_correct: bool = False
    bins: int = ECE_BINS
    rank: Optional[int] = None
    exclude_pattern: Optional[str] = None
    out: Path = Path(OUTPUT_DIR)
    seed: int = DEFAULT_SEED

    @field_validator("command")
    @classmethod
    def _known_command(cls, v: str) -> str:
        if v not in COMMANDS:
            raise ValueError(f"unknown command {v!r}")
        return v

    @field_validator("grid_step")
    @classmethod
    def _grid_step_range(cls, v: float) -> float:
        if not 0 < v <= MAX_GRID_STEP:
            raise ValueError(f"grid_step must lie in (0, {MAX_GRID_STEP}]")
        return v

    @field_validator("bins")
    @classmethod
    def _positive_bins(cls, v: int) -> int:
        if v < 1:
            raise ValueError("bins must be >= 1")
        return v

    @field_validator("rank")
    @classmethod
    def _positive_rank(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("rank must be >= 1")
        return v

    @field_validator("exclude_pattern")
    @classmethod
    def _compiles(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            try:
                re.compile(v)
            except re.error as e:
                raise ValueError(f"exclude_pattern is not a valid regex: {e}")
        return v

    @field_validator("scale", mode="before")
    @classmethod
    def _scale_name(cls, v):
        if isinstance(v, str):
            return {"me": Scale.ME, "s100": Scale.S100}.get(v.lower(), v)
        return v

    def ensure_output_dir(self) -> Path:
        """Create the output directory; raise PermissionError when it is not writable"""
        self.out.mkdir(parents=True, exist_ok=True)
        if not os.access(self.out, os.W_OK):
            raise PermissionError(f"output directory {self.out} is not writable")
        return self.out
