import json

import pytest

from helpers import answer, positive_prediction, prob_record, write_lines
from ingestion.predictions import write_predictions
from ingestion.records import Label, Scale, Scenario
from ingestion.survey import write_survey
from main import main
from rejection import simulate_calibrated_records

SURVEY_VALUES = {"v_tp": 18.15, "v_tn": 36.32, "v_fp": -16.69, "v_fn": -28.08, "v_r": -4.82}


@pytest.fixture
def values_file(tmp_path):
    path = tmp_path / "values.json"
    path.write_text(json.dumps(SURVEY_VALUES))
    return path


@pytest.fixture
def calibrated_file(tmp_path):
    path = tmp_path / "predictions.csv"
    write_predictions(simulate_calibrated_records(10_000, seed=5, levels=100), path)
    return path


def read_json(path):
    text = path.read_text(encoding="utf-8")
    assert text.endswith("\n")
    document = json.loads(text)
    assert list(document)[0] == "schema_version"
    assert document["schema_version"] == "1"
    return document


# ----------------------------------------------------------------------------
# calibrate
# ----------------------------------------------------------------------------

def test_calibrate_reports_unit_temperature(tmp_path, calibrated_file, capsys):
    out = tmp_path / "out"
    assert main(["calibrate", "--predictions", str(calibrated_file), "--out", str(out)]) == 0
    report = read_json(out / "calibration.json")
    assert report["temperature"] == pytest.approx(1.0, abs=0.05)
    assert {"fit_nll", "ece_before", "ece_after"} <= set(report)
    assert "✅ Wrote" in capsys.readouterr().err


def test_calibrate_rejects_probability_records(tmp_path, capsys):
    path = tmp_path / "p.csv"
    write_predictions([prob_record("a", 0.9, Label.POS), prob_record("b", 0.1, Label.NEG)], path)
    assert main(["calibrate", "--predictions", str(path), "--out", str(tmp_path / "out")]) == 2
    assert "ProbabilityKindUnsupported" in capsys.readouterr().err


def test_missing_input_file_is_io_error(tmp_path, capsys):
    code = main(["calibrate", "--predictions", str(tmp_path / "absent.csv"), "--out", str(tmp_path / "out")])
    assert code == 1
    assert "❌" in capsys.readouterr().err


# ----------------------------------------------------------------------------
# curve / threshold
# ----------------------------------------------------------------------------

def test_curve_accepts_everything_with_measured_values(tmp_path, calibrated_file, values_file):
    out = tmp_path / "out"
    code = main(["curve", "--predictions", str(calibrated_file), "--values", str(values_file),
                 "--out", str(out)])
    assert code == 0
    summary = read_json(out / "summary.json")
    assert summary["best"]["tau"] == 0.5
    assert summary["best"]["rejection_rate"] == 0.0
    assert summary["reject_all"]["policy"] == "reject_all"
    assert summary["thresholds"]["theoretical_pos"] == pytest.approx(0.4790, abs=1e-4)

    header = (out / "curve.csv").read_text().splitlines()[0]
    assert header.startswith("tau,policy,total_value,mean_value,rejection_rate,accepted_accuracy")
    assert (out / "curve.svg").read_text().lstrip().startswith("<?xml")


def test_curve_with_zero_correct_values_rejects(tmp_path, calibrated_file, values_file):
    out = tmp_path / "out"
    code = main(["curve", "--predictions", str(calibrated_file), "--values", str(values_file),
                 "--zero-correct", "--per-class", "--grid-step", "0.01", "--out", str(out)])
    assert code == 0
    summary = read_json(out / "summary.json")
    assert summary["best"]["tau"] > 0.5
    assert summary["best"]["rejection_rate"] > 0.0
    assert summary["thresholds"]["theoretical_pos"] is None
    assert summary["per_class"]["grid_size"] == 51


def test_curve_with_held_out_calibration(tmp_path, calibrated_file, values_file):
    out = tmp_path / "out"
    code = main(["curve", "--predictions", str(calibrated_file), "--calibration", str(calibrated_file),
                 "--values", str(values_file), "--grid-step", "0.05", "--out", str(out)])
    assert code == 0
    assert read_json(out / "summary.json")["calibration"]["temperature"] == pytest.approx(1.0, abs=0.05)


def test_empty_predictions_file(tmp_path, values_file, capsys):
    path = write_lines(tmp_path / "empty.csv", ["model_id,item_id,score_kind,score_a,score_b,true_label"])
    code = main(["curve", "--predictions", str(path), "--values", str(values_file), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "EmptyInput" in capsys.readouterr().err


def test_out_of_range_grid_step(tmp_path, calibrated_file, values_file, capsys):
    code = main(["curve", "--predictions", str(calibrated_file), "--values", str(values_file),
                 "--grid-step", "0.5", "--out", str(tmp_path / "out")])
    assert code == 2
    assert "ValidationError" in capsys.readouterr().err


def test_threshold_report(tmp_path, values_file):
    out = tmp_path / "out"
    assert main(["threshold", "--values", str(values_file), "--out", str(out)]) == 0
    thresholds = read_json(out / "thresholds.json")["thresholds"]
    assert thresholds["theoretical_pos"] == pytest.approx(0.4790, abs=1e-4)
    assert thresholds["theoretical_neg"] == pytest.approx(0.4360, abs=1e-4)
    assert thresholds["clamped_pos"] == thresholds["theoretical_pos"]


def test_threshold_below_grid_is_clamped(tmp_path):
    values = tmp_path / "values.json"
    values.write_text(json.dumps({"v_tp": 2, "v_tn": 2, "v_fp": -1, "v_fn": -1, "v_r": -0.1}))
    out = tmp_path / "out"
    assert main(["threshold", "--values", str(values), "--out", str(out)]) == 0
    thresholds = read_json(out / "thresholds.json")["thresholds"]
    assert thresholds["theoretical_pos"] == pytest.approx(1 / 3)
    assert thresholds["clamped_pos"] == 0.5
    assert thresholds["clamped_neg"] == 0.5


def test_curve_outputs_are_byte_identical(tmp_path, calibrated_file, values_file):
    runs = []
    for name in ("first", "second"):
        out = tmp_path / name
        assert main(["curve", "--predictions", str(calibrated_file), "--values", str(values_file),
                     "--grid-step", "0.01", "--out", str(out)]) == 0
        runs.append(out)
    for filename in ("curve.csv", "summary.json", "curve.svg"):
        assert (runs[0] / filename).read_bytes() == (runs[1] / filename).read_bytes()


# ----------------------------------------------------------------------------
# compare
# ----------------------------------------------------------------------------

def test_compare_flags_diverging_rankings(tmp_path):
    a = [positive_prediction(f"i{i}", 0.95, True, "A") for i in range(8)]
    a += [positive_prediction(f"i{i}", 0.99, False, "A") for i in range(8, 10)]
    b = [positive_prediction(f"i{i}", 0.95, True, "B") for i in range(7)]
    b += [positive_prediction(f"i{i}", 0.55, False, "B") for i in range(7, 10)]
    write_predictions(a, tmp_path / "a.csv")
    write_predictions(b, tmp_path / "b.json", format="json")
    values = tmp_path / "values.json"
    values.write_text(json.dumps({"v_tp": 1, "v_tn": 1, "v_fp": -1, "v_fn": -1, "v_r": -0.1}))

    out = tmp_path / "out"
    code = main(["compare", "--predictions", str(tmp_path / "a.csv"), str(tmp_path / "b.json"),
                 "--values", str(values), "--out", str(out)])
    assert code == 0
    report = read_json(out / "comparison.json")
    assert report["ranking_by_value"] == ["B", "A"]
    assert report["ranking_by_accuracy"] == ["A", "B"]
    assert report["rankings_disagree"] is True
    assert (out / "comparison.svg").exists()


def test_compare_with_mismatched_items(tmp_path, values_file, capsys):
    write_predictions([positive_prediction("i1", 0.9, True, "A"),
                       positive_prediction("i2", 0.9, True, "B")], tmp_path / "p.csv")
    code = main(["compare", "--predictions", str(tmp_path / "p.csv"), "--values", str(values_file),
                 "--out", str(tmp_path / "out")])
    assert code == 2
    assert "ItemSetMismatch" in capsys.readouterr().err


def test_same_item_in_two_prediction_files(tmp_path, values_file, capsys):
    write_predictions([positive_prediction("i1", 0.9, True, "m1"),
                       positive_prediction("i1", 0.9, True, "m2")], tmp_path / "a.csv")
    write_predictions([positive_prediction("i1", 0.6, False, "m2")], tmp_path / "b.csv")
    code = main(["compare", "--predictions", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"),
                 "--values", str(values_file), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "DuplicateKey" in capsys.readouterr().err


# ----------------------------------------------------------------------------
# survey
# ----------------------------------------------------------------------------

ME_ANSWERS = {"q1": (Scenario.TP, 100), "q2": (Scenario.FN, -50), "q3": (Scenario.REJ, -10), "q4": (Scenario.TN, 80)}
S100_ANSWERS = {"q1": 90, "q2": -40, "q3": -5, "q4": 70}


@pytest.fixture
def survey_file(tmp_path):
    responses = []
    for participant, factor, group in (("p1", 1.0, "a"), ("p2", 2.0, "a"), ("p3", 0.5, "b")):
        for question, (scenario, value) in ME_ANSWERS.items():
            responses.append(answer(participant, question, scenario, value * factor, group=group))
            responses.append(answer(participant, question, scenario, S100_ANSWERS[question],
                                    scale=Scale.S100, group=group))
    responses.append(answer("p9", "q1", Scenario.TP, 5, excluded=True))
    path = tmp_path / "survey.csv"
    write_survey(responses, path)
    return path


def test_survey_reports(tmp_path, survey_file):
    out = tmp_path / "out"
    assert main(["survey", "--survey", str(survey_file), "--validity", "--out", str(out)]) == 0

    scales = read_json(out / "scenario_values.json")["scales"]
    me = scales["ME"]
    assert me["n_participants"] == 3
    assert {s: v["value"] for s, v in me["scenarios"].items()} == {
        "TP": 100.0, "TN": 80.0, "FN": -50.0, "REJ": -10.0,
    }
    assert scales["S100"]["scenarios"]["FN"]["value"] == -40.0
    assert me["overall_alpha"] == 1.0

    validity = read_json(out / "validity.json")
    assert validity["spearman"] == 1.0
    assert validity["kendall_tau_b"] == 1.0
    assert read_json(out / "reliability.json")["scales"]["S100"]["overall_alpha"] == 1.0
    assert "group_differences.json" in {p.name for p in out.iterdir()}

    rows = (out / "scenario_values.csv").read_text().splitlines()
    assert rows[0] == "scale,scenario,value,alpha,interpretation"
    assert len(rows) == 9


def test_single_scale_validity_is_an_error(tmp_path, survey_file, capsys):
    code = main(["survey", "--survey", str(survey_file), "--scale", "me", "--validity",
                 "--out", str(tmp_path / "out")])
    assert code == 2
    assert "InsufficientData" in capsys.readouterr().err


def test_all_neutral_survey(tmp_path):
    responses = [answer(f"p{p}", f"q{q}", Scenario.FP, None) for p in range(3) for q in range(3)]
    path = tmp_path / "survey.csv"
    write_survey(responses, path)
    out = tmp_path / "out"
    assert main(["survey", "--survey", str(path), "--out", str(out)]) == 0
    me = read_json(out / "scenario_values.json")["scales"]["ME"]
    assert me["scenarios"]["FP"]["value"] == 0.0
    assert me["overall_alpha"] is None
    assert me["warnings"]
    assert not (out / "validity.json").exists()


# ----------------------------------------------------------------------------
# sample
# ----------------------------------------------------------------------------

def test_sample_is_deterministic(tmp_path):
    lines = ["doc_id,text,topic"]
    for topic, words in (("food", "pasta tomato basil garlic olive"),
                         ("sport", "football goal match team league"),
                         ("space", "rocket orbit planet astronaut launch")):
        for i in range(5):
            lines.append(f"{topic}{i},{words} {words.split()[i]},{topic}")
    corpus = write_lines(tmp_path / "corpus.csv", lines)
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps([{"name": "all", "k_min": 2, "k_max": 5}]))

    outputs = []
    for name in ("first", "second"):
        out = tmp_path / name
        assert main(["sample", "--corpus", str(corpus), "--plan", str(plan), "--seed", "3",
                     "--out", str(out)]) == 0
        outputs.append(out)

    for filename in ("selections.csv", "sampling_metadata.json"):
        assert (outputs[0] / filename).read_bytes() == (outputs[1] / filename).read_bytes()
    rows = (outputs[0] / "selections.csv").read_text().splitlines()
    assert rows[0] == "stratum,cluster,doc_id"
    assert len(rows) == 4
    assert read_json(outputs[0] / "sampling_metadata.json")["seed"] == 3


def test_sample_with_small_stratum(tmp_path, capsys):
    corpus = write_lines(tmp_path / "corpus.csv", ["doc_id,text", "d1,some words", "d2,more words"])
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps([{"name": "all", "clusters": 5}]))
    code = main(["sample", "--corpus", str(corpus), "--plan", str(plan), "--out", str(tmp_path / "out")])
    assert code == 2
    assert "StratumTooSmall" in capsys.readouterr().err


def test_invalid_exclude_pattern(tmp_path, capsys):
    corpus = write_lines(tmp_path / "corpus.csv", ["doc_id,text", "d1,some words", "d2,more words"])
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps([{"name": "all", "clusters": 2}]))
    code = main(["sample", "--corpus", str(corpus), "--plan", str(plan), "--exclude-pattern", "(",
                 "--out", str(tmp_path / "out")])
    assert code == 2
    assert "ValidationError" in capsys.readouterr().err
