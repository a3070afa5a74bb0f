import math

import pytest

from netenergy.longhaul import (
    LonghaulRoute,
    dimension_longhaul,
    longhaul_peak,
    submarine_channel_power,
)
from netenergy.peakstats import ParameterDomainError
from netenergy.scenario import ModelFlags, Scenario, VodUsage, evaluate, global_peaks

ROUTE = LonghaulRoute()


def test_submarine_channel_power_closes_exactly():
    # 2*35 + (8000/50 * 0.2)/0.8 + 0.004*8000 = 70 + 40 + 32
    assert submarine_channel_power(ROUTE) == pytest.approx(142.0, abs=1e-9)


def test_submarine_channel_power_terminal_limit():
    short = LonghaulRoute(submarine_km=1e-6)
    assert submarine_channel_power(short) == pytest.approx(70.0, abs=1e-3)


def test_submarine_channel_power_ideal_feed():
    ideal = LonghaulRoute(feed_efficiency=1.0)
    assert submarine_channel_power(ideal) == pytest.approx(134.0)


def test_route_validation():
    with pytest.raises(ParameterDomainError):
        LonghaulRoute(feed_efficiency=0.0)
    with pytest.raises(ParameterDomainError):
        LonghaulRoute(terrestrial_segments_km=(600.0, -1.0))
    with pytest.raises(ParameterDomainError):
        LonghaulRoute(submarine_km=0.0)


def test_longhaul_peak_baseline(territory, factors):
    base = Scenario(name="baseline")
    r_b, r_v = global_peaks(base, territory)
    assert r_b == pytest.approx(0.02 * 30_450_000 * 10e-3)  # 6090 Gbps
    peak = longhaul_peak(r_b, r_v, 0.0, 0.0, ROUTE, factors, apply_growth_margin=False)
    assert peak == pytest.approx(r_b / 3.0)  # 2030 Gbps before margin
    with_margin = longhaul_peak(r_b, r_v, 0.0, 0.0, ROUTE, factors, apply_growth_margin=True)
    assert with_margin == pytest.approx(1.5 * peak)


def test_longhaul_peak_full_cache_hit(factors):
    # All video served locally: only the baseline share crosses the link.
    peak = longhaul_peak(6090.0, 5000.0, 1.0, 0.0, ROUTE, factors, apply_growth_margin=False)
    assert peak == pytest.approx(6090.0 / 3.0)


def test_longhaul_peak_fill_floor(factors):
    peak = longhaul_peak(0.0, 100.0, 0.9, 64.0, ROUTE, factors, apply_growth_margin=False)
    assert peak == pytest.approx(64.0)  # fill rate dominates the uncached 10


def test_hd_annual_energy_with_population_basis(territory):
    # Viewer head-count basis for the global peaks reproduces the published
    # longhaul figure for the HD grade.
    hd = Scenario(name="HD", vod=VodUsage(rate_mbps=3.0))
    flags = ModelFlags(global_peak_basis="inhabitants")
    report = evaluate(hd, territory=territory, flags=flags)
    assert 7.0 <= report.segments["longhaul"].energy_gwh <= 13.0


def test_dimension_longhaul_parts(catalog, factors):
    dims = dimension_longhaul(3045.0, ROUTE, catalog, factors)
    channels = math.ceil(3045.0 / 40.0)
    assert dims.channels == channels == 77
    assert dims.submarine_power_w == pytest.approx(1.8 * 2 * 2 * channels * 142.0)
    # 7 transit core nodes plus the two terrestrial WDM hops
    core = 1.8 * 2 * math.ceil(3045.0 / 560.0) * 1400.0
    wdm600 = 2 * channels * (1.8 * 9.2 + 5 * 3.5)
    wdm900 = 2 * channels * (1.8 * 9.2 + 8 * 3.5)
    assert dims.terrestrial_power_w == pytest.approx(7 * core + wdm600 + wdm900)


def test_baseline_annual_band(territory, catalog, factors):
    base = Scenario(name="baseline")
    report = evaluate(base, territory=territory)
    assert 2.0 <= report.segments["longhaul"].energy_gwh <= 3.6


def test_submarine_share_of_total(territory):
    # The submarine section stays near a third of the whole route's power.
    for rate in (3.0, 5.0, 16.0, 27.0):
        sc = Scenario(name=f"v{rate}", vod=VodUsage(rate_mbps=rate))
        report = evaluate(sc, territory=territory)
        lh = report.details["longhaul"]
        share = lh["submarine_power_w"] / (
            lh["submarine_power_w"] + lh["terrestrial_power_w"]
        )
        assert 0.25 <= share <= 0.41


def test_power_piecewise_constant_in_rate(catalog, factors):
    # Steps exactly at channel (40) and core module (560) multiples.
    previous = dimension_longhaul(41.0, ROUTE, catalog, factors).power_w
    for k in range(2, 30):
        boundary = 40.0 * k
        below = dimension_longhaul(boundary - 1e-6, ROUTE, catalog, factors).power_w
        at = dimension_longhaul(boundary, ROUTE, catalog, factors).power_w
        above = dimension_longhaul(boundary + 1e-6, ROUTE, catalog, factors).power_w
        assert at == pytest.approx(below)  # constant inside the interval
        assert above >= at
        assert at >= previous
        previous = at


def test_submarine_scales_linearly_with_channels(catalog, factors):
    one = dimension_longhaul(40.0, ROUTE, catalog, factors)
    two = dimension_longhaul(80.0, ROUTE, catalog, factors)
    assert two.submarine_power_w == pytest.approx(2 * one.submarine_power_w)


def test_fill_rate_well_below_baseline_share(territory, factors):
    from netenergy.cdn import CdnConfig, cdn_fill_rate

    fill = cdn_fill_rate(CdnConfig())
    r_b, _ = global_peaks(Scenario(name="baseline"), territory)
    assert fill * 10 <= r_b / 3.0
