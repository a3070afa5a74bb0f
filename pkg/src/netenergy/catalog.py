"""Equipment power/capacity reference data and global dimensioning factors."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Optional

from .peakstats import ConfidenceLevel, ParameterDomainError

__all__ = [
    "DEFAULT_CATALOG",
    "EquipmentCatalog",
    "GlobalFactors",
    "PowerProfile",
    "efficiency_scaled_intensity",
]


@dataclass(frozen=True)
class PowerProfile:
    """Static power draw of one network element, with capacity where it has one."""

    static_power_w: float
    capacity_gbps: Optional[float] = None

    def __post_init__(self) -> None:
        if self.static_power_w <= 0:
            raise ParameterDomainError(f"static power must be > 0, got {self.static_power_w}")
        if self.capacity_gbps is not None and self.capacity_gbps <= 0:
            raise ParameterDomainError(f"capacity must be > 0, got {self.capacity_gbps}")


@dataclass(frozen=True)
class EquipmentCatalog:
    """Per-element power profiles for every equipment kind in the model.

    ONU and storage servers are dimensioned by presence, not throughput, so
    they carry no capacity; every other kind must have one.
    """

    onu: PowerProfile = PowerProfile(2.5)
    gpon_port: PowerProfile = PowerProfile(15.0, 2.5)
    ge_port: PowerProfile = PowerProfile(30.0, 10.0)
    eth_switch_module: PowerProfile = PowerProfile(60.0, 40.0)
    bng_module: PowerProfile = PowerProfile(75.0, 40.0)
    edge_router_module: PowerProfile = PowerProfile(120.0, 40.0)
    core_router_module: PowerProfile = PowerProfile(1400.0, 560.0)
    flash_server: PowerProfile = PowerProfile(320.0, 190.0)
    storage_server: PowerProfile = PowerProfile(400.0)

    _CAPACITY_FREE = frozenset({"onu", "storage_server"})

    def __post_init__(self) -> None:
        for f in fields(self):
            profile = getattr(self, f.name)
            if f.name in self._CAPACITY_FREE:
                continue
            if profile.capacity_gbps is None:
                raise ParameterDomainError(f"{f.name} requires a capacity")


DEFAULT_CATALOG = EquipmentCatalog()


@dataclass(frozen=True)
class GlobalFactors:
    """Facility overhead, redundancy and growth margins applied model-wide."""

    pue: float = 1.8
    eta: float = 2.0
    alpha_t: float = 1.5
    alpha_u: float = 2.0
    epsilon: ConfidenceLevel = field(default_factory=ConfidenceLevel)

    def __post_init__(self) -> None:
        for name, minimum in (("pue", 1.0), ("eta", 1.0), ("alpha_t", 1.0), ("alpha_u", 1.0)):
            if getattr(self, name) < minimum:
                raise ParameterDomainError(f"{name} must be >= {minimum}, got {getattr(self, name)}")
        if isinstance(self.epsilon, (int, float)):
            object.__setattr__(self, "epsilon", ConfidenceLevel(float(self.epsilon)))


def efficiency_scaled_intensity(p0: float, c0: float, years: int, gamma: float) -> float:
    """Power intensity (W/Gbps) of old equipment data projected forward.

    Applies the yearly efficiency-gain rate gamma over the given number of
    years: (p0 / c0) * (1 - gamma) ** years. Intended as a pre-processing
    helper when a user supplies equipment figures referenced to an older
    year than the catalog defaults.
    """
    if c0 <= 0:
        raise ParameterDomainError(f"reference capacity must be > 0, got {c0}")
    if not 0.0 <= gamma < 1.0:
        raise ParameterDomainError(f"efficiency gain rate must be in [0, 1), got {gamma}")
    return (p0 / c0) * (1.0 - gamma) ** years
