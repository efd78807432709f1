import json

import pytest

from singan.analysis import NO_SINGULAR_VALUES, analyze_map
from singan.catalog import load_maps
from singan.config import AnalysisConfig
from singan.errors import SinganError
from singan.report import build_report, eps_power, notation, parse_json, render_json, render_report, validate_report
from singan.singularity import (
    ANTICONFINED,
    CONFINED,
    NONCONFINED,
    Diverging,
    Regular,
    SingularityReport,
    Vanishing,
    infinity_probe,
)

maps = load_maps()

henon = build_report(analyze_map(maps["henon"], AnalysisConfig(steps=8)))
golden = build_report(analyze_map(maps["golden"], AnalysisConfig()))


def test_eps_powers():
    assert eps_power(0) == "O(1)"
    assert eps_power(1) == "ε"
    assert eps_power(-2) == "ε^{-2}"


def test_notation_for_each_classification():
    seed = infinity_probe()
    confined = SingularityReport("1", seed, CONFINED, pattern=(Regular("1", False), Vanishing(1), Diverging(1)))
    assert notation(confined) == "{1, 0, ∞}"
    anti = SingularityReport(
        "∞ probe",
        seed,
        ANTICONFINED,
        forward_valuations=(-1, -1, -2),
        backward_valuations=(1, 1, 2),
        regular_window=((Regular("c", True),),),
    )
    assert notation(anti) == "…, ε^{2}, ε, ε, c, ε^{-1}, ε^{-1}, ε^{-2}, …"
    assert notation(SingularityReport("0", seed, NONCONFINED, horizon=20)) == "not confined within 20 steps"


def test_henon_text_report():
    text = render_report(henon).decode("utf-8")
    assert text.startswith("map: henon (scalar)\n")
    assert "singular values: none" in text
    assert f"note: {NO_SINGULAR_VALUES}" in text
    assert "degrees: 0, 1, 2, 4, 8, 16, 32, 64, 128" in text
    assert "verdict: NonIntegrable" in text


def test_golden_text_report_shows_the_recurrence():
    text = render_report(golden).decode("utf-8")
    assert "recurrence: d_{n+1} = 2 d_n - d_{n-2} (from n = 4)" in text
    assert "singular values: -1, 0, 1, ∞" in text
    assert "characteristic polynomial: λ^3 - 2*λ^2 + 1 = " in text


def test_json_report_round_trips_and_is_canonical():
    text = render_json(henon)
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["verdict"]["kind"] == "NonIntegrable"
    assert data["config"] == {"horizon": 20, "seed": 0, "seeds": 3, "steps": 8, "trunc": 8}
    assert parse_json(text) == henon
    assert render_json(parse_json(text)) == text


def test_reports_are_deterministic():
    again = build_report(analyze_map(maps["henon"], AnalysisConfig(steps=8)))
    assert render_report(again, "json") == render_report(henon, "json")


def test_singularity_class_key_in_json():
    data = json.loads(render_json(golden))
    assert {s["class"] for s in data["singularities"]} == {"confined", "anticonfined"}


def test_invalid_reports_are_rejected():
    with pytest.raises(SinganError, match="Report validation failed"):
        validate_report({"name": "broken"})


def test_unknown_format():
    with pytest.raises(ValueError):
        render_report(henon, "yaml")
