"""International longhaul route between the main IXP and the overseas datacenter.

Two terrestrial WDM hops, a handful of transit core nodes and one submarine
WDM section. Submarine repeaters are fed from shore, so their power is
grossed up by the feed efficiency and the resistive loss of the feed cable;
submarine capacity also carries its own, larger growth margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .catalog import EquipmentCatalog, GlobalFactors
from .corenet import WdmLinkParams, core_node_power, wdm_link_power
from .peakstats import ParameterDomainError

__all__ = [
    "LonghaulDimensions",
    "LonghaulRoute",
    "dimension_longhaul",
    "longhaul_peak",
    "submarine_channel_power",
]


@dataclass(frozen=True)
class LonghaulRoute:
    terrestrial_segments_km: Sequence[float] = (600.0, 900.0)
    transit_core_nodes: int = 7
    submarine_km: float = 8000.0
    repeater_spacing_km: float = 50.0
    terminal_w_per_channel: float = 35.0
    repeater_w_per_channel: float = 0.2
    feed_efficiency: float = 0.8
    cable_loss_w_per_km: float = 0.004
    channel_gbps: float = 40.0
    #: Share of the baseline peak that crosses this link.
    baseline_share: float = 1.0 / 3.0
    wdm: WdmLinkParams = WdmLinkParams()

    def __post_init__(self) -> None:
        segments = tuple(float(d) for d in self.terrestrial_segments_km)
        if any(d <= 0 for d in segments):
            raise ParameterDomainError("terrestrial segment lengths must be > 0")
        object.__setattr__(self, "terrestrial_segments_km", segments)
        for name in ("submarine_km", "repeater_spacing_km", "channel_gbps"):
            if getattr(self, name) <= 0:
                raise ParameterDomainError(f"{name} must be > 0")
        if not 0.0 < self.feed_efficiency <= 1.0:
            raise ParameterDomainError(
                f"feed efficiency must be in (0, 1], got {self.feed_efficiency}"
            )
        if not 0.0 <= self.baseline_share <= 1.0:
            raise ParameterDomainError(
                f"baseline share must be in [0, 1], got {self.baseline_share}"
            )


@dataclass(frozen=True)
class LonghaulDimensions:
    peak_gbps: float
    channels: int
    terrestrial_power_w: float
    submarine_power_w: float

    @property
    def power_w(self) -> float:
        return self.terrestrial_power_w + self.submarine_power_w


def submarine_channel_power(route: LonghaulRoute) -> float:
    """Electrical watts one submarine channel costs, fed from shore.

    Two terminal multiplexers, repeaters every ``repeater_spacing_km``
    grossed up by the feed efficiency, plus resistive loss along the feed
    cable.
    """
    repeaters = route.submarine_km / route.repeater_spacing_km
    return (
        2.0 * route.terminal_w_per_channel
        + (repeaters * route.repeater_w_per_channel) / route.feed_efficiency
        + route.cable_loss_w_per_km * route.submarine_km
    )


def longhaul_peak(
    r_b_star_gbps: float,
    r_v_star_gbps: float,
    cdn_fraction: float,
    fill_rate_gbps: float,
    route: LonghaulRoute,
    factors: GlobalFactors,
    apply_growth_margin: bool = True,
) -> float:
    """Peak rate the international link must carry (Gbps).

    Nightly cache filling is conservatively assumed to overlap the usage
    peak, hence the max of the fill rate and the non-cached video share,
    plus the international slice of the baseline. The terrestrial growth
    margin is applied on top unless disabled.
    """
    peak = (
        max(fill_rate_gbps, (1.0 - cdn_fraction) * r_v_star_gbps)
        + route.baseline_share * r_b_star_gbps
    )
    if apply_growth_margin:
        peak *= factors.alpha_t
    return peak


def dimension_longhaul(
    r_u_gbps: float,
    route: LonghaulRoute,
    catalog: EquipmentCatalog,
    factors: GlobalFactors,
) -> LonghaulDimensions:
    """Power of the full route at the given peak rate."""
    if r_u_gbps < 0:
        raise ParameterDomainError(f"longhaul peak must be >= 0, got {r_u_gbps}")
    terrestrial = route.transit_core_nodes * core_node_power(r_u_gbps, catalog, factors)
    for dist in route.terrestrial_segments_km:
        terrestrial += wdm_link_power(r_u_gbps, dist, factors, route.wdm)
    channels = max(math.ceil(r_u_gbps / route.channel_gbps), 1)
    submarine = (
        factors.pue
        * factors.eta
        * factors.alpha_u
        * channels
        * submarine_channel_power(route)
    )
    return LonghaulDimensions(
        peak_gbps=r_u_gbps,
        channels=channels,
        terrestrial_power_w=terrestrial,
        submarine_power_w=submarine,
    )
