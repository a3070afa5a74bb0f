import pytest

from netenergy.cdn import CdnConfig, CdnDimensions, cdn_fill_rate, dimension_cdn
from netenergy.catalog import GlobalFactors
from netenergy.peakstats import ParameterDomainError
from netenergy.scenario import Scenario, VodUsage, evaluate


def test_fill_rate_from_defaults():
    # 40 servers * 320 TB * 8 bit/B * 1.8% refreshed over 8 h
    assert cdn_fill_rate(CdnConfig()) == pytest.approx(64.0)


def test_fill_rate_zero_updates():
    assert cdn_fill_rate(CdnConfig(daily_update_fraction=0.0)) == 0.0


def test_fill_rate_inverse_in_window():
    full = cdn_fill_rate(CdnConfig())
    halved = cdn_fill_rate(CdnConfig(fill_window_h=4.0))
    assert halved == pytest.approx(2 * full)


def test_config_validation():
    with pytest.raises(ParameterDomainError):
        CdnConfig(cdn_fraction=1.5)
    with pytest.raises(ParameterDomainError):
        CdnConfig(fill_window_h=0.0)
    with pytest.raises(ParameterDomainError):
        CdnConfig(daily_update_fraction=-0.1)


def test_disabled_service_draws_nothing(catalog, factors):
    dims = dimension_cdn(1000.0, CdnConfig(), catalog, factors, service_active=False)
    assert dims == CdnDimensions(0.0, 0, 0, 0, 0.0)


def test_single_flash_server_operating_point(catalog):
    # Unit margins so the served rate equals the offered rate exactly.
    factors = GlobalFactors(alpha_t=1.0)
    dims = dimension_cdn(190.0, CdnConfig(), catalog, factors, cdn_fraction=1.0)
    assert dims.flash_servers == 1
    assert dims.edge_router_modules == 5
    assert dims.power_w == pytest.approx(1.8 * (1 * 320 + 40 * 400 + 2 * 5 * 120))
    assert dims.power_w == pytest.approx(31_536.0)


def test_uhd_annual_band(territory):
    uhd = Scenario(name="UHD", vod=VodUsage(rate_mbps=16.0))
    report = evaluate(uhd, territory=territory)
    assert 8.0 <= report.segments["cdn"].energy_gwh <= 14.0


def test_traffic_free_fraction_keeps_storage_floor(catalog, factors):
    dims = dimension_cdn(1000.0, CdnConfig(), catalog, factors, cdn_fraction=0.0)
    assert dims.flash_servers == 0
    assert dims.edge_router_modules == 0
    assert dims.power_w == pytest.approx(1.8 * 40 * 400)


def test_power_piecewise_constant(catalog):
    factors = GlobalFactors(alpha_t=1.0)

    def power(r):
        return dimension_cdn(r, CdnConfig(), catalog, factors, cdn_fraction=1.0).power_w

    # Steps only where the served rate crosses flash (190) or router (40)
    # module boundaries.
    boundaries = sorted(
        {190.0 * k for k in range(1, 8)} | {40.0 * k for k in range(1, 34)}
    )
    previous = power(0.0)
    for b in boundaries:
        below = power(b - 1e-6)
        at = power(b)
        above = power(b + 1e-6)
        assert at == pytest.approx(below)
        assert above >= at >= previous
        previous = at


def test_storage_fleet_independent_of_traffic(catalog, factors):
    low = dimension_cdn(100.0, CdnConfig(), catalog, factors)
    high = dimension_cdn(100_000.0, CdnConfig(), catalog, factors)
    assert low.storage_servers == high.storage_servers == 40
    assert high.power_w > low.power_w
