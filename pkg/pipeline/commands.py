"""
CLI subcommands

Each command reads its inputs, runs one stage and writes its reports into
config.out. Commands return the paths they wrote, in writing order.
"""

import logging
from collections import defaultdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Tuple

import pandas as pd

from analysis.aggregation import build_scenario_table
from analysis.normalization import normalize_responses
from analysis.validity import convergent_validity, group_differences
from calibration.metrics import expected_calibration_error
from calibration.temperature_scaling import calibrate_records, fit_temperature
from ingestion.corpus import parse_corpus, parse_strata_plan
from ingestion.predictions import guess_format, parse_predictions
from ingestion.records import Label, PredictionRecord, Scale, ValueModel
from ingestion.survey import parse_survey
from ingestion.value_model import parse_value_model
from pipeline.plots import plot_comparison, plot_value_curve
from pipeline.reports import write_csv, write_json
from pipeline.run_config import RunConfig
from rejection.model_selection import compare_models
from rejection.reject_option import empirical_threshold, theoretical_threshold
from rejection.value_curve import sweep, sweep_per_class
from sampling.representatives import select_representatives
from utils.errors import (
    DuplicateKey,
    EmptyInput,
    InsufficientData,
    TooFewGroups,
    UndefinedGamma,
    ValueRejectError,
)

logger = logging.getLogger(__name__)


# ============================================================================
# Shared loaders
# ============================================================================

def load_records(config: RunConfig) -> List[PredictionRecord]:
    if not config.predictions:
        raise EmptyInput("--predictions")
    records: List[PredictionRecord] = []
    seen: Set[Tuple[str, str]] = set()
    for path in config.predictions:
        for record in parse_predictions(path, guess_format(path)):
            key = (record.model_id, record.item_id)
            if key in seen:
                raise DuplicateKey(key)
            seen.add(key)
            records.append(record)
    return records


def load_value_model(config: RunConfig) -> ValueModel:
    if config.values is None:
        raise EmptyInput("--values")
    model = parse_value_model(config.values)
    return model.with_zero_correct() if config.zero_correct else model


def _thresholds(value_model: ValueModel) -> Dict[str, Optional[float]]:
    report: Dict[str, Optional[float]] = {}
    for label in (Label.POS, Label.NEG):
        try:
            tau: Optional[float] = theoretical_threshold(value_model, label)
        except UndefinedGamma as e:
            logger.warning(f"⚠️  {e}")
            tau = None
        report[f"theoretical_{label.value}"] = tau
        # the grid starts at 0.5, so lower thresholds act as 0.5
        report[f"clamped_{label.value}"] = None if tau is None else max(0.5, tau)
        report[f"break_even_{label.value}"] = empirical_threshold(value_model, label)
    return report


# ============================================================================
# calibrate / curve / threshold / compare
# ============================================================================

def cmd_calibrate(config: RunConfig) -> List[Path]:
    records = load_records(config)
    model = fit_temperature(records)
    calibrated = calibrate_records(records, model)

    report = {
        "temperature": model.temperature,
        "fit_nll": model.fit_nll,
        "nll_at_unit_temperature": model.nll_at_unit_temperature,
        "hit_bound": model.hit_bound,
        "n_records": model.n_records,
        "bins": config.bins,
        "ece_before": expected_calibration_error(records, config.bins),
        "ece_after": expected_calibration_error(calibrated, config.bins),
    }
    return [write_json(config.out / "calibration.json", report)]


def cmd_curve(config: RunConfig) -> List[Path]:
    records = load_records(config)
    value_model = load_value_model(config)

    calibration: Optional[Dict[str, Any]] = None
    if config.calibration is not None:
        held_out = parse_predictions(config.calibration, guess_format(config.calibration))
        model = fit_temperature(held_out)
        records = calibrate_records(records, model)
        calibration = {"temperature": model.temperature, "fit_nll": model.fit_nll,
                       "hit_bound": model.hit_bound}

    curve = sweep(records, value_model, config.grid_step)
    summary: Dict[str, Any] = {
        "n_records": len(records),
        "grid_step": config.grid_step,
        "value_model": value_model.to_dict(),
        "best": curve.argmax.to_dict(),
        "reject_all": curve.sentinel.to_dict(),
        "thresholds": _thresholds(value_model),
        "calibration": calibration,
    }
    if config.per_class:
        summary["per_class"] = sweep_per_class(records, value_model, config.grid_step).to_dict()

    return [
        write_csv(config.out / "curve.csv", curve.to_frame()),
        plot_value_curve(curve, config.out / "curve.svg"),
        write_json(config.out / "summary.json", summary),
    ]


def cmd_threshold(config: RunConfig) -> List[Path]:
    value_model = load_value_model(config)
    report: Dict[str, Any] = {
        "value_model": value_model.to_dict(),
        "thresholds": _thresholds(value_model),
    }
    if config.predictions:
        records = load_records(config)
        report["empirical"] = sweep_per_class(records, value_model, config.grid_step).to_dict()
    return [write_json(config.out / "thresholds.json", report)]


def cmd_compare(config: RunConfig) -> List[Path]:
    by_model: Dict[str, List[PredictionRecord]] = defaultdict(list)
    for record in load_records(config):
        by_model[record.model_id].append(record)
    value_model = load_value_model(config)

    comparison = compare_models(by_model, value_model, config.grid_step)
    payload = {"grid_step": config.grid_step, "value_model": value_model.to_dict(), **comparison.to_dict()}
    return [
        write_json(config.out / "comparison.json", payload),
        plot_comparison(comparison.curves, config.out / "comparison.svg"),
    ]


# ============================================================================
# survey
# ============================================================================

def cmd_survey(config: RunConfig) -> List[Path]:
    if config.survey is None:
        raise EmptyInput("--survey")
    normalized = normalize_responses(parse_survey(config.survey))
    if config.scale is not None:
        normalized = [r for r in normalized if r.scale == config.scale]
    if not normalized:
        raise EmptyInput("survey responses")

    scales = [s for s in (Scale.ME, Scale.S100) if any(r.scale == s for r in normalized)]
    if config.validity and len(scales) < 2:
        raise InsufficientData("validity needs responses on both the ME and S100 scales")

    tables = {s: build_scenario_table(normalized, s) for s in scales}
    written = [
        write_json(config.out / "scenario_values.json",
                   {"scales": {s.value: t.to_dict() for s, t in tables.items()}}),
        write_json(config.out / "reliability.json", {"scales": {
            s.value: {
                "metric": t.metric.value,
                "overall_alpha": t.overall_alpha,
                "scenarios": {sc.value: t.alphas.get(sc) for sc in t.values},
                "warnings": t.warnings,
            } for s, t in tables.items()
        }}),
    ]

    written.append(write_csv(config.out / "scenario_values.csv",
                             pd.concat([t.to_frame() for t in tables.values()], ignore_index=True)))

    if len(scales) == 2:
        try:
            validity = convergent_validity(tables[Scale.ME].medians, tables[Scale.S100].medians)
            written.append(write_json(config.out / "validity.json", validity.to_dict()))
        except ValueRejectError as e:
            if config.validity:
                raise
            logger.warning(f"⚠️  Validity skipped: {type(e).__name__}: {e}")

    if any(r.group is not None for r in normalized):
        differences: Dict[str, Any] = {}
        for scale in scales:
            try:
                differences[scale.value] = [d.to_dict() for d in
                                            group_differences([r for r in normalized if r.scale == scale])]
            except TooFewGroups as e:
                logger.warning(f"⚠️  Group differences skipped for {scale.value}: {e}")
        if differences:
            written.append(write_json(config.out / "group_differences.json", {"scales": differences}))
    return written


# ============================================================================
# sample
# ============================================================================

def cmd_sample(config: RunConfig) -> List[Path]:
    if config.corpus is None or config.plan is None:
        raise EmptyInput("--corpus and --plan")
    documents = parse_corpus(config.corpus)
    plan = parse_strata_plan(config.plan)

    result = select_representatives(documents, plan, seed=config.seed, rank=config.rank,
                                    exclude_pattern=config.exclude_pattern)
    return [
        write_csv(config.out / "selections.csv", result.to_frame()),
        write_json(config.out / "sampling_metadata.json", result.metadata()),
    ]


COMMANDS = {
    "calibrate": cmd_calibrate,
    "curve": cmd_curve,
    "threshold": cmd_threshold,
    "compare": cmd_compare,
    "survey": cmd_survey,
    "sample": cmd_sample,
}


def run(config: RunConfig) -> List[Path]:
    config.ensure_output_dir()
    return COMMANDS[config.command](config)
