import csv
import json
import math
from pathlib import Path

import pytest

import cpccms

FIXTURES = Path(__file__).resolve().parents[2] / "data" / "fixtures"


def load_pom(name):
    doc = json.loads((FIXTURES / name).read_text())
    return doc["criteria"], doc["entries"]


def test_weights_match_the_worked_matrix():
    criteria, entries = load_pom("pom_without_efficiency.json")
    report = cpccms.derive_weights(criteria, entries)
    assert math.isclose(sum(report["weights"]), 1.0, abs_tol=1e-12)
    assert report["ranks"] == [7, 5, 4, 3, 6, 1, 2]
    assert report["verdict"] == "Acceptable"
    assert round(report["accordance_index"], 4) == 0.0747


def test_consistent_matrix_has_zero_accordance_index():
    v = [3.0, 1.0, -2.0]
    entries = [[a - b for b in v] for a in v]
    assert cpccms.accordance_index(entries) < 1e-12


def test_invalid_matrix_raises_value_error():
    with pytest.raises(ValueError):
        cpccms.derive_weights(["a", "b"], [[0, 3], [3, 0]])


def test_ranking_flips_when_efficiency_is_included():
    with (FIXTURES / "case1_scores.csv").open() as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    models = [r[0] for r in body]
    scores = [[float(x) for x in r[1:]] for r in body]
    with (FIXTURES / "case1_timings.csv").open() as fh:
        timings = {r["model"]: float(r["seconds"]) for r in csv.DictReader(fh)}

    off = cpccms.rank_models(*load_pom("pom_without_efficiency.json"), models, header[1:], scores)
    on = cpccms.rank_models(*load_pom("pom_with_efficiency.json"), models, header[1:], scores,
                            timings=timings, include_efficiency=True)
    assert off["best"] == ["ALBERT"]
    assert on["best"] == ["XGBoost"]


def test_metrics_and_text_helpers():
    s = cpccms.criterion_scores(["a", "b", "a"], ["a", "b", "b"], ["a", "b"])
    assert math.isclose(s["accuracy"], 2 / 3)
    # Letters-only cleaning runs before entity decoding, so the entity name stays.
    assert cpccms.clean("RT @x Hello &amp; WORLD http://t.co/z") == "hello amp world"
    assert cpccms.clean("Hello &amp; WORLD", keep_punctuation=True) == "hello & world"
    assert cpccms.porter_stem("chaos") == "chao"
    assert cpccms.tokenize("b a, b") == ["b", "a", "b"]
