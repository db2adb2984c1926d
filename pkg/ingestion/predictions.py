"""
Prediction file ingestion (CSV or JSON).

predictions.csv columns: model_id, item_id, score_kind, score_a, score_b, true_label
  - raw_logits:  score_a = logit for neg, score_b = logit for pos
  - probability: score_a = p_pos, score_b empty
"""

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Set, Tuple

import pandas as pd

from ingestion.records import Label, PredictionRecord, ScoreKind
from ingestion.tables import format_float, parse_enum, parse_float, read_csv_rows
from utils.errors import DuplicateKey, MalformedRow, OutOfRangeProbability

logger = logging.getLogger(__name__)

PREDICTION_COLUMNS = ("model_id", "item_id", "score_kind", "score_a", "score_b", "true_label")


def _build_record(row: Dict[str, str], line: int, source: str) -> PredictionRecord:
    model_id = row["model_id"]
    item_id = row["item_id"]
    if not model_id or not item_id:
        raise MalformedRow(line, "model_id and item_id are required", source=source)

    kind = parse_enum(ScoreKind, row["score_kind"], line, "score_kind", source)
    label = parse_enum(Label, row["true_label"], line, "true_label", source)
    score_a = parse_float(row["score_a"], line, "score_a", source)

    if kind == ScoreKind.PROBABILITY:
        if row["score_b"] != "":
            raise MalformedRow(line, "score_b must be empty for probability records", source=source)
        if not 0.0 <= score_a <= 1.0:
            raise OutOfRangeProbability(score_a, line)
        scores: Tuple[float, ...] = (score_a,)
    else:
        score_b = parse_float(row["score_b"], line, "score_b", source)
        scores = (score_a, score_b)

    return PredictionRecord(model_id, item_id, kind, scores, label)


def _check_unique(records: Iterable[Tuple[int, PredictionRecord]]) -> None:
    seen: Set[Tuple[str, str]] = set()
    for line, record in records:
        key = (record.model_id, record.item_id)
        if key in seen:
            raise DuplicateKey(key, line)
        seen.add(key)


def _rows_from_json(path: Path) -> List[Tuple[int, Dict[str, str]]]:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedRow(e.lineno, f"invalid JSON: {e.msg}", source=path.name)

    if isinstance(data, dict):
        data = data.get("records", [])
    if not isinstance(data, list):
        raise MalformedRow(1, "expected a list of prediction objects", source=path.name)

    rows = []
    for index, item in enumerate(data, start=1):
        if not isinstance(item, dict):
            raise MalformedRow(index, "record is not an object", source=path.name)
        missing = [c for c in PREDICTION_COLUMNS if c not in item and c != "score_b"]
        if missing:
            raise MalformedRow(index, f"missing keys: {', '.join(missing)}", source=path.name)
        rows.append((index, {
            c: "" if item.get(c) is None else str(item.get(c)).strip()
            for c in PREDICTION_COLUMNS
        }))
    return rows


def parse_predictions(path, format: str = "csv") -> List[PredictionRecord]:
    """
    Parse a prediction file into validated records, preserving row order.

    Line numbers in errors are CSV lines (header = 1) or 1-based JSON record indices.
    """
    path = Path(path)
    if format == "json":
        rows = _rows_from_json(path)
    elif format == "csv":
        rows = list(read_csv_rows(path, PREDICTION_COLUMNS))
    else:
        raise ValueError(f"unknown prediction format: {format}")

    numbered = [(line, _build_record(row, line, path.name)) for line, row in rows]
    _check_unique(numbered)

    logger.info(f"📥 Parsed {len(numbered)} prediction records from {path.name}")
    return [record for _, record in numbered]


def guess_format(path) -> str:
    return "json" if Path(path).suffix.lower() == ".json" else "csv"


def _as_row(record: PredictionRecord) -> Dict[str, str]:
    score_b = record.scores[1] if record.score_kind == ScoreKind.RAW_LOGITS else None
    return {
        "model_id": record.model_id,
        "item_id": record.item_id,
        "score_kind": record.score_kind.value,
        "score_a": format_float(record.scores[0]),
        "score_b": format_float(score_b),
        "true_label": record.true_label.value,
    }


def write_predictions(records: Iterable[PredictionRecord], path, format: str = "csv") -> None:
    """Inverse of parse_predictions; floats are written with full precision"""
    path = Path(path)
    rows = [_as_row(r) for r in records]

    if format == "json":
        payload = [
            {**row,
             "score_a": float(row["score_a"]),
             "score_b": float(row["score_b"]) if row["score_b"] else None}
            for row in rows
        ]
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2)
        return

    pd.DataFrame(rows, columns=list(PREDICTION_COLUMNS)).to_csv(path, index=False, lineterminator="\n")
