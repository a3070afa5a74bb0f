"""Single-IXP CDN: flash servers for throughput, storage servers for catalog.

Storage server count is fixed (catalog size does not scale with peak
bitrate); flash servers and the dedicated edge routers scale with the peak
rate the CDN has to serve. The nightly fill traffic needed to refresh the
stored catalog is derived from the storage fleet itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .catalog import EquipmentCatalog, GlobalFactors
from .peakstats import ParameterDomainError

__all__ = ["CdnConfig", "CdnDimensions", "cdn_fill_rate", "dimension_cdn"]


@dataclass(frozen=True)
class CdnConfig:
    storage_servers: int = 40
    storage_capacity_tb: float = 320.0
    daily_update_fraction: float = 0.018
    fill_window_h: float = 8.0
    #: Share of video traffic served locally when a scenario does not set
    #: its own.
    cdn_fraction: float = 0.8

    def __post_init__(self) -> None:
        if self.storage_servers < 0:
            raise ParameterDomainError(f"storage_servers must be >= 0, got {self.storage_servers}")
        if self.storage_capacity_tb < 0:
            raise ParameterDomainError("storage capacity must be >= 0")
        if not 0.0 <= self.daily_update_fraction <= 1.0:
            raise ParameterDomainError(
                f"daily update fraction must be in [0, 1], got {self.daily_update_fraction}"
            )
        if self.fill_window_h <= 0:
            raise ParameterDomainError(f"fill window must be > 0, got {self.fill_window_h}")
        if not 0.0 <= self.cdn_fraction <= 1.0:
            raise ParameterDomainError(
                f"cdn fraction must be in [0, 1], got {self.cdn_fraction}"
            )


@dataclass(frozen=True)
class CdnDimensions:
    serve_rate_gbps: float
    flash_servers: int
    storage_servers: int
    edge_router_modules: int
    power_w: float


def cdn_fill_rate(config: CdnConfig) -> float:
    """Rate (Gbps) needed to refresh the daily share of stored content
    within the fill window."""
    bits = config.storage_servers * config.storage_capacity_tb * 1e12 * 8.0
    return bits * config.daily_update_fraction / (config.fill_window_h * 3600.0) / 1e9


def dimension_cdn(
    r_v_global_gbps: float,
    config: CdnConfig,
    catalog: EquipmentCatalog,
    factors: GlobalFactors,
    service_active: bool = True,
    cdn_fraction: float | None = None,
) -> CdnDimensions:
    """Scale the CDN to the margin-adjusted share of the global video peak.

    Without an active video/download service there is no CDN at all. With
    one, the storage fleet is always present while flash servers and edge
    router modules follow the served rate.
    """
    if r_v_global_gbps < 0:
        raise ParameterDomainError(f"global video peak must be >= 0, got {r_v_global_gbps}")
    if not service_active:
        return CdnDimensions(0.0, 0, 0, 0, 0.0)
    fraction = config.cdn_fraction if cdn_fraction is None else cdn_fraction
    if not 0.0 <= fraction <= 1.0:
        raise ParameterDomainError(f"cdn fraction must be in [0, 1], got {fraction}")
    serve_rate = factors.alpha_t * fraction * r_v_global_gbps
    flash = math.ceil(serve_rate / catalog.flash_server.capacity_gbps)
    erm = math.ceil(serve_rate / catalog.edge_router_module.capacity_gbps)
    power = factors.pue * (
        flash * catalog.flash_server.static_power_w
        + config.storage_servers * catalog.storage_server.static_power_w
        + factors.eta * erm * catalog.edge_router_module.static_power_w
    )
    return CdnDimensions(
        serve_rate_gbps=serve_rate,
        flash_servers=flash,
        storage_servers=config.storage_servers,
        edge_router_modules=erm,
        power_w=power,
    )
