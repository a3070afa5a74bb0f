import json

import pytest

from netenergy.errors import ConfigError
from netenergy.report import format_energy, render, render_json, render_series, render_table
from netenergy.scenario import evaluate, preset_scenarios, sweep


@pytest.fixture(scope="module")
def reports(territory):
    return [evaluate(s, territory=territory) for s in preset_scenarios()]


def test_three_significant_figures():
    assert format_energy(748.344) == "748"
    assert format_energy(2.6513) == "2.65"
    assert format_energy(0.0) == "0"
    assert format_energy(1055.2) == "1.06e+03"


def test_table_has_one_row_per_scenario(reports):
    text = render_table(reports, baseline_name="baseline")
    lines = text.splitlines()
    for report in reports:
        assert any(line.startswith(report.scenario) for line in lines)
    # the baseline row's delta against itself is +0%
    baseline_row = next(l for l in lines if l.startswith("baseline"))
    assert "+0%" in baseline_row


def test_single_report_table(reports):
    text = render_table(reports[:1])
    lines = [l for l in text.splitlines() if l.strip()]
    assert lines[0].startswith("Scenario")
    assert lines[2].startswith("baseline")


def test_missing_baseline_raises(reports):
    with pytest.raises(ConfigError):
        render_table(reports, baseline_name="nope")


def test_structured_round_trip(reports):
    text = render_json(reports, baseline_name="baseline")
    parsed = json.loads(text)
    assert json.dumps(parsed, sort_keys=True, indent=2) == text
    assert len(parsed["reports"]) == len(reports)


def test_structured_totals_match_segments(reports):
    parsed = json.loads(render_json(reports))
    for row in parsed["reports"]:
        total = sum(seg["energy_gwh"] for seg in row["segments"].values())
        assert row["total_gwh"] == pytest.approx(total, rel=1e-9)


def test_rendering_is_pure(reports):
    assert render_table(reports, "baseline") == render_table(reports, "baseline")
    assert render_json(reports) == render_json(reports)


def test_render_format_dispatch(reports):
    assert render(reports, fmt="table").startswith("Scenario")
    assert render(reports, fmt="json").startswith("{")
    with pytest.raises(ConfigError):
        render(reports, fmt="csv")


def test_series_records(territory):
    presets = {s.name: s for s in preset_scenarios()}
    reports = sweep(
        presets["HD"],
        "vod.rate_mbps",
        [3.0, 5.0],
        baseline_scenario=presets["baseline"],
        territory=territory,
    )
    doc = json.loads(render_series(reports, "vod.rate_mbps"))
    assert doc["parameter"] == "vod.rate_mbps"
    assert [rec["value"] for rec in doc["series"]] == [3.0, 5.0]
    for rec in doc["series"]:
        assert set(rec) == {"value", "scenario", "delta_gwh", "total_gwh", "wh_per_gb"}
