# ingestion/tables.py

import math
from pathlib import Path
from typing import Dict, Iterator, Optional, Sequence, Tuple

import pandas as pd

from utils.errors import MalformedRow


def read_csv_rows(path: Path,
                  required: Sequence[str],
                  optional: Sequence[str] = ()) -> Iterator[Tuple[int, Dict[str, str]]]:
    """
    Yield (line number, row) for a headed UTF-8 CSV file.

    Every field comes back as a stripped string; the header is line 1.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False,
                            skip_blank_lines=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        return
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise MalformedRow(None, f"unreadable CSV: {e}", source=path.name)

    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise MalformedRow(1, f"missing columns: {', '.join(missing)}", source=path.name)

    keep = list(required) + [c for c in optional if c in frame.columns]
    extra = [c for c in frame.columns if c not in keep]
    for offset, values in enumerate(frame.itertuples(index=False, name=None)):
        # short rows are padded with NaN
        row = {col: "" if pd.isna(val) else str(val).strip() for col, val in zip(frame.columns, values)}
        if not any(row.values()):
            continue
        if extra:
            row["__extra__"] = {c: row.pop(c) for c in extra}
        yield offset + 2, row


def parse_float(text: str, line: int, what: str, source: str = "") -> float:
    try:
        value = float(text)
    except ValueError:
        raise MalformedRow(line, f"{what} is not a number: {text!r}", source=source)
    if not math.isfinite(value):
        raise MalformedRow(line, f"{what} must be finite, got {text!r}", source=source)
    return value


def parse_bool(text: str, line: int, what: str, source: str = "") -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes", "y"):
        return True
    if lowered in ("false", "0", "no", "n", ""):
        return False
    raise MalformedRow(line, f"{what} is not a boolean: {text!r}", source=source)


def parse_enum(enum_cls, text: str, line: int, what: str, source: str = ""):
    for member in enum_cls:
        if text == member.value or text.lower() == member.value.lower():
            return member
    allowed = ", ".join(m.value for m in enum_cls)
    raise MalformedRow(line, f"{what} must be one of {allowed}, got {text!r}", source=source)


def format_float(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))
