"""Golden-file check: the full scenario table renders byte-identically.

The stored document covers the six built-in scenarios plus the two
home-caching comparison rows, with baseline deltas. Any model or schema
change shows up as a diff here; regenerate deliberately with

    python tests/regenerate_golden.py
"""

from pathlib import Path

from netenergy.config import default_config
from netenergy.report import render_json
from netenergy.scenario import CacheVariant, evaluate, evaluate_dtt_variant

GOLDEN = Path(__file__).parent / "golden" / "scenario_reports.json"


def build_table_document() -> str:
    config = default_config()
    kwargs = config.model_kwargs()
    reports = [evaluate(s, **kwargs) for s in config.scenarios]
    territory = kwargs.pop("territory")
    for name, reduction in (("FHD", 0.5), ("UHD", 0.25)):
        reports.append(
            evaluate_dtt_variant(
                config.scenario(name),
                CacheVariant(ott_reduction=reduction),
                territory=territory,
                **kwargs,
            )
        )
    return render_json(reports, baseline_name="baseline") + "\n"


def test_scenario_table_matches_golden_file():
    assert build_table_document() == GOLDEN.read_text(encoding="utf-8")
