"""
Report writers

JSON: schema_version first, indent 2, full float precision, no NaN.
CSV: 6 significant digits, '\n' line endings, no index.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pandas as pd

from config import REPORT_SCHEMA_VERSION


def _jsonable(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    document = {"schema_version": REPORT_SCHEMA_VERSION}
    document.update(payload)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(document, f, indent=2, allow_nan=False, ensure_ascii=False, default=_jsonable)
        f.write("\n")
    return path


def write_csv(path: Path, frame: pd.DataFrame) -> Path:
    frame.to_csv(path, index=False, float_format="%.6g", na_rep="", lineterminator="\n")
    return path
