# ingestion/value_model.py

import json
from pathlib import Path

from ingestion.records import ValueModel
from utils.errors import MalformedRow

VALUE_KEYS = ("v_tp", "v_tn", "v_fp", "v_fn", "v_r")


def parse_value_model(path) -> ValueModel:
    """
    Read {v_tp, v_tn, v_fp, v_fn, v_r} from a JSON object.

    Sign rules and the all-zero check live in ValueModel itself.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedRow(e.lineno, f"invalid JSON: {e.msg}", source=path.name)

    if not isinstance(data, dict):
        raise MalformedRow(1, "value model must be a JSON object", source=path.name)

    missing = [k for k in VALUE_KEYS if k not in data]
    if missing:
        raise MalformedRow(1, f"missing keys: {', '.join(missing)}", source=path.name)

    values = []
    for key in VALUE_KEYS:
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MalformedRow(1, f"{key} must be a number", source=path.name)
        values.append(float(value))

    return ValueModel(*values)


def write_value_model(model: ValueModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model.to_dict(), f, indent=2)
