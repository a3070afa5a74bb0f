"""GPON FTTH access network dimensioning: GPON trees, OLTs and 10GE uplinks.

The access network serves every home through shared GPON ports. The split
ratio (subscribers per GPON tree) is the largest one whose worst-case pool
demand still fits the port capacity; uplink 10GE ports then scale with the
per-OLT peak. ONU power is accounted for by the scenario evaluation, not
here: ONUs sit in homes and take no facility overhead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .catalog import EquipmentCatalog, GlobalFactors
from .peakstats import (
    HouseholdDistribution,
    ParameterDomainError,
    default_household_distribution,
)

__all__ = [
    "AccessDimensions",
    "CARDS_PER_OLT",
    "GPON_MAX_SUBSCRIBERS",
    "GPON_PORTS_PER_CARD",
    "GponCapacityError",
    "Territory",
    "dimension_access",
    "max_subscribers_per_gpon",
]

GPON_MAX_SUBSCRIBERS = 128
GPON_PORTS_PER_CARD = 16
CARDS_PER_OLT = 16

#: A demand curve maps a pool of n subscribers to its peak rate in Mbps.
DemandFn = Callable[[float], float]


class GponCapacityError(RuntimeError):
    """A single subscriber's peak demand already exceeds the GPON capacity."""

    def __init__(self, demand_mbps: float, capacity_gbps: float):
        super().__init__(
            "infeasible GPON split: margin-adjusted demand of one subscriber "
            f"({demand_mbps:.1f} Mbps) reaches the port capacity ({capacity_gbps} Gbps)"
        )
        self.demand_mbps = demand_mbps
        self.capacity_gbps = capacity_gbps


@dataclass(frozen=True)
class Territory:
    """Population served by the modeled infrastructure.

    ``inhabitants`` defaults to homes times the household mean and, when
    given explicitly, must stay within 5% of it.
    """

    homes: int = 30_450_000
    hubs: int = 3000
    household_dist: HouseholdDistribution = field(
        default_factory=default_household_distribution
    )
    inhabitants: Optional[int] = None

    def __post_init__(self) -> None:
        if self.homes <= 0:
            raise ParameterDomainError(f"homes must be > 0, got {self.homes}")
        if self.hubs < 1:
            raise ParameterDomainError(f"hubs must be >= 1, got {self.hubs}")
        implied = self.homes * self.household_dist.mean
        if self.inhabitants is None:
            object.__setattr__(self, "inhabitants", round(implied))
        elif abs(self.inhabitants - implied) > 0.05 * implied:
            raise ParameterDomainError(
                f"inhabitants={self.inhabitants} is more than 5% away from "
                f"homes * mean household size ({implied:.0f})"
            )


@dataclass(frozen=True)
class AccessDimensions:
    subscribers_per_gpon: int
    gpon_ports: int
    olts: int
    ge_ports: int
    uplink_peak_gbps: float
    power_w: float


def max_subscribers_per_gpon(
    demand: DemandFn, factors: GlobalFactors, c_gpon_gbps: float
) -> int:
    """Largest split n <= 128 with alpha_t * R(n) below the GPON capacity.

    Binary search on the (monotone) demand curve; monotonicity is
    spot-checked on the bracket endpoints.
    """
    cap_mbps = c_gpon_gbps * 1e3
    lo_demand = factors.alpha_t * demand(1)
    hi_demand = factors.alpha_t * demand(GPON_MAX_SUBSCRIBERS)
    if hi_demand < lo_demand:
        raise ParameterDomainError("demand curve is not monotone on [1, 128]")
    if lo_demand >= cap_mbps:
        raise GponCapacityError(lo_demand, c_gpon_gbps)
    if hi_demand < cap_mbps:
        return GPON_MAX_SUBSCRIBERS
    lo, hi = 1, GPON_MAX_SUBSCRIBERS  # feasible at lo, infeasible at hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if factors.alpha_t * demand(mid) < cap_mbps:
            lo = mid
        else:
            hi = mid
    return lo


def dimension_access(
    territory: Territory,
    demand: DemandFn,
    catalog: EquipmentCatalog,
    factors: GlobalFactors,
) -> AccessDimensions:
    """Scale GPON ports, OLTs and 10GE uplinks to the scenario peak."""
    sub_per_gpon = max_subscribers_per_gpon(demand, factors, catalog.gpon_port.capacity_gbps)
    # One spare GPON card per hub: deployed cards never run completely full.
    gpon_ports = math.ceil(
        territory.homes / sub_per_gpon + territory.hubs * GPON_PORTS_PER_CARD
    )
    olts = max(territory.hubs, math.ceil(gpon_ports / (GPON_PORTS_PER_CARD * CARDS_PER_OLT)))
    # Subscribers per OLT are fixed once the split is known, so the uplink
    # peak is read straight off the demand curve (no search needed).
    subscribers_per_olt = math.ceil(territory.homes / olts)
    uplink_peak_mbps = factors.alpha_t * demand(subscribers_per_olt)
    ge_per_olt = math.ceil(uplink_peak_mbps / (catalog.ge_port.capacity_gbps * 1e3))
    ge_ports = math.ceil(factors.eta * olts * ge_per_olt)
    power_w = factors.pue * (
        gpon_ports * catalog.gpon_port.static_power_w
        + ge_ports * catalog.ge_port.static_power_w
    )
    return AccessDimensions(
        subscribers_per_gpon=sub_per_gpon,
        gpon_ports=gpon_ports,
        olts=olts,
        ge_ports=ge_ports,
        uplink_peak_gbps=uplink_peak_mbps * 1e-3,
        power_w=power_w,
    )
