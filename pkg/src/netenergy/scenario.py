"""Usage scenarios, the pool demand curve and full-pipeline evaluation.

A scenario couples a sober always-on baseline with at most one
traffic-intensive service (streaming video or large-file downloads). Its
demand curve maps any pool of n subscribers to the worst-case peak rate that
pool can generate, which is what every dimensioning stage consumes. The
evaluation then scales each network segment, converts power to annual energy
at 8760 h and derives the volume-based efficiency indicator.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Optional, Sequence

from .access import Territory, dimension_access
from .catalog import DEFAULT_CATALOG, EquipmentCatalog, GlobalFactors
from .cdn import CdnConfig, cdn_fill_rate, dimension_cdn
from .corenet import CoreTreeTopology, dimension_national
from .errors import ConfigError
from .longhaul import LonghaulRoute, dimension_longhaul, longhaul_peak
from .peakstats import (
    DEFAULT_FIT_ANCHORS,
    ConfidenceLevel,
    HouseholdDistribution,
    ParameterDomainError,
    QuantileApprox,
    binomial_quantile,
    convolution_quantile,
    fit_quantile_approx,
)

__all__ = [
    "HOURS_PER_YEAR",
    "BaselineUsage",
    "CacheVariant",
    "DemandCurve",
    "DlUsage",
    "EnergyReport",
    "HomeCacheDevice",
    "ModelFlags",
    "OltCacheDevice",
    "Scenario",
    "SegmentEnergy",
    "VodUsage",
    "average_device_power",
    "demand_curve",
    "evaluate",
    "evaluate_dtt_variant",
    "evaluate_olt_cache_variant",
    "global_peaks",
    "preset_scenarios",
    "sweep",
]

HOURS_PER_YEAR = 8760.0
GB_PER_HOUR_PER_MBPS = 1e6 * 3600.0 / 8.0 / 1e9  # decimal units throughout


def _check_fraction(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"must be in [0, 1], got {value}", field=name)


def _check_nonnegative(value: float, name: str) -> None:
    if value < 0:
        raise ConfigError(f"must be >= 0, got {value}", field=name)


@dataclass(frozen=True)
class BaselineUsage:
    """Always-on sober usage: light browsing, messaging, mail."""

    rate_mbps: float = 10.0
    active_fraction: float = 0.02  # share of subscriptions busy at peak
    monthly_volume_gb: float = 2.0

    def __post_init__(self) -> None:
        _check_nonnegative(self.rate_mbps, "baseline.rate_mbps")
        _check_fraction(self.active_fraction, "baseline.active_fraction")
        _check_nonnegative(self.monthly_volume_gb, "baseline.monthly_volume_gb")


@dataclass(frozen=True)
class VodUsage:
    """Streaming video service parameters."""

    rate_mbps: float
    viewer_fraction: float = 0.2  # share of inhabitants watching at peak
    sharing: float = 1.5  # viewers per stream
    cdn_fraction: Optional[float] = None  # None: take the CDN config default
    daily_hours: float = 3.2
    mode: str = "per-inhabitant"  # or "per-subscriber"

    def __post_init__(self) -> None:
        _check_nonnegative(self.rate_mbps, "vod.rate_mbps")
        _check_fraction(self.viewer_fraction, "vod.viewer_fraction")
        if self.sharing <= 0:
            raise ConfigError(f"must be > 0, got {self.sharing}", field="vod.sharing")
        if self.cdn_fraction is not None:
            _check_fraction(self.cdn_fraction, "vod.cdn_fraction")
        if not 0.0 <= self.daily_hours <= 24.0:
            raise ConfigError(f"must be in [0, 24], got {self.daily_hours}", field="vod.daily_hours")
        if self.mode not in ("per-inhabitant", "per-subscriber"):
            raise ConfigError(f"unknown mode {self.mode!r}", field="vod.mode")


@dataclass(frozen=True)
class DlUsage:
    """Large-file download service (OS updates, game releases)."""

    rate_mbps: float = 200.0
    active_fraction: float = 0.03  # share of subscriptions downloading at peak
    epsilon: float = 1e-7  # relaxed confidence for this term only
    monthly_volume_gb: float = 25.0
    cdn_fraction: float = 0.95

    def __post_init__(self) -> None:
        _check_nonnegative(self.rate_mbps, "dl.rate_mbps")
        _check_fraction(self.active_fraction, "dl.active_fraction")
        ConfidenceLevel(self.epsilon)
        _check_nonnegative(self.monthly_volume_gb, "dl.monthly_volume_gb")
        _check_fraction(self.cdn_fraction, "dl.cdn_fraction")


@dataclass(frozen=True)
class Scenario:
    name: str
    baseline: BaselineUsage = field(default_factory=BaselineUsage)
    vod: Optional[VodUsage] = None
    dl: Optional[DlUsage] = None
    onu_off_fraction: float = 0.0

    def __post_init__(self) -> None:
        if self.vod is not None and self.dl is not None:
            raise ConfigError(
                "a scenario may use video streaming or downloads, not both",
                field="scenario",
            )
        _check_fraction(self.onu_off_fraction, "onu_off_fraction")

    @property
    def service_active(self) -> bool:
        return self.vod is not None or self.dl is not None

    def cdn_fraction(self, cdn_config: CdnConfig) -> float:
        if self.dl is not None:
            return self.dl.cdn_fraction
        if self.vod is not None:
            return (
                cdn_config.cdn_fraction
                if self.vod.cdn_fraction is None
                else self.vod.cdn_fraction
            )
        return 0.0


@dataclass(frozen=True)
class ModelFlags:
    """Switches for the model readings that the source material leaves open."""

    #: Count core tree nodes with the literal power-of-two convention
    #: instead of the branching factor.
    literal_2l: bool = False
    #: Apply the terrestrial growth margin to the longhaul peak.
    apply_growth_margin_longhaul: bool = True
    #: Divide the global video peak by the viewers-per-stream factor.
    rv_star_per_stream: bool = True
    #: Count the global video peak from simultaneous viewers across the
    #: whole population ("inhabitants") or from active subscriber lines
    #: ("subscribers").
    global_peak_basis: str = "subscribers"
    #: Add the traffic-proportional energy share to the report.
    dynamic_power: bool = False
    dynamic_intensity_wh_per_gb: float = 0.1

    def __post_init__(self) -> None:
        if self.global_peak_basis not in ("inhabitants", "subscribers"):
            raise ConfigError(
                f"unknown basis {self.global_peak_basis!r}", field="flags.global_peak_basis"
            )
        _check_nonnegative(self.dynamic_intensity_wh_per_gb, "flags.dynamic_intensity_wh_per_gb")


@dataclass(frozen=True)
class DemandCurve:
    """Pool size n (subscribers) to worst-case peak rate in Mbps."""

    terms: tuple[tuple[float, QuantileApprox], ...]

    def __call__(self, n: float) -> float:
        if n < 0:
            raise ParameterDomainError(f"pool size must be >= 0, got {n}")
        if n == 0:
            return 0.0
        return sum(coef * approx.eval(n) for coef, approx in self.terms)


def demand_curve(
    scenario: Scenario,
    dist: HouseholdDistribution,
    eps: float | ConfidenceLevel,
    anchors: Sequence[int] = DEFAULT_FIT_ANCHORS,
) -> DemandCurve:
    """Build the scenario's demand curve from fitted worst-case counts.

    The baseline term counts active subscriber lines. The video term counts
    simultaneous viewers behind the pool's worst-case number of inhabitants
    (two chained percentiles, fitted as one curve) and divides by the
    viewers-per-stream factor; in per-subscriber mode the viewer share
    applies to the lines directly. The download term counts active lines at
    its own, relaxed confidence level.
    """
    terms: list[tuple[float, QuantileApprox]] = []
    base = scenario.baseline
    if base.rate_mbps > 0:
        s_b = base.active_fraction
        fit = fit_quantile_approx(
            lambda n: binomial_quantile(n, s_b, eps), anchors, mean=s_b
        )
        terms.append((base.rate_mbps, fit))
    if scenario.vod is not None and scenario.vod.rate_mbps > 0:
        vod = scenario.vod
        s_v = vod.viewer_fraction
        if vod.mode == "per-inhabitant":
            fit = fit_quantile_approx(
                lambda n: binomial_quantile(convolution_quantile(dist, n, eps), s_v, eps),
                anchors,
                mean=s_v * dist.mean,
            )
        else:
            fit = fit_quantile_approx(
                lambda n: binomial_quantile(n, s_v, eps), anchors, mean=s_v
            )
        terms.append((vod.rate_mbps / vod.sharing, fit))
    if scenario.dl is not None and scenario.dl.rate_mbps > 0:
        dl = scenario.dl
        fit = fit_quantile_approx(
            lambda n: binomial_quantile(n, dl.active_fraction, dl.epsilon),
            anchors,
            mean=dl.active_fraction,
        )
        terms.append((dl.rate_mbps, fit))
    return DemandCurve(terms=tuple(terms))


def global_peaks(
    scenario: Scenario, territory: Territory, flags: ModelFlags = ModelFlags()
) -> tuple[float, float]:
    """Territory-wide baseline and service peaks (Gbps), as plain products.

    At national scale the worst-case percentiles coincide with the mean, so
    the peaks are simple products of rate, share and population. The video
    peak uses simultaneous viewers (inhabitants basis) or active lines
    (subscribers basis) per the flags; the download peak is always counted
    per line.
    """
    base = scenario.baseline
    r_b = base.active_fraction * territory.homes * base.rate_mbps * 1e-3
    r_v = 0.0
    if scenario.vod is not None:
        vod = scenario.vod
        if flags.global_peak_basis == "inhabitants" and vod.mode == "per-inhabitant":
            pool = territory.homes * territory.household_dist.mean
        else:
            pool = float(territory.homes)
        r_v = vod.viewer_fraction * pool * vod.rate_mbps * 1e-3
        if flags.rv_star_per_stream:
            r_v /= vod.sharing
    elif scenario.dl is not None:
        r_v = scenario.dl.active_fraction * territory.homes * scenario.dl.rate_mbps * 1e-3
    return r_b, r_v


@dataclass(frozen=True)
class SegmentEnergy:
    power_w: float
    energy_gwh: float


@dataclass(frozen=True)
class EnergyReport:
    scenario: str
    segments: Mapping[str, SegmentEnergy]
    total_power_w: float
    total_gwh: float
    volume_eb: float
    wh_per_gb: float
    details: Mapping[str, Any]
    parameters: Mapping[str, Any]
    baseline_name: Optional[str] = None
    delta_gwh: Optional[float] = None
    delta_pct: Optional[float] = None

    def with_baseline(self, baseline: "EnergyReport") -> "EnergyReport":
        delta = self.total_gwh - baseline.total_gwh
        pct = 100.0 * delta / baseline.total_gwh if baseline.total_gwh else math.nan
        return replace(
            self, baseline_name=baseline.scenario, delta_gwh=delta, delta_pct=pct
        )

    def to_mapping(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": 1,
            "scenario": self.scenario,
            "segments": {
                name: {"power_w": seg.power_w, "energy_gwh": seg.energy_gwh}
                for name, seg in self.segments.items()
            },
            "total_power_w": self.total_power_w,
            "total_gwh": self.total_gwh,
            "volume_eb": self.volume_eb,
            # infinite intensity (zero-volume scenario) is not representable
            # in interchange JSON
            "wh_per_gb": self.wh_per_gb if math.isfinite(self.wh_per_gb) else None,
            "details": dict(self.details),
            "parameters": dict(self.parameters),
        }
        if self.baseline_name is not None:
            out["baseline"] = self.baseline_name
            out["delta_gwh"] = self.delta_gwh
            out["delta_pct"] = self.delta_pct
        return out


def _yearly_volume_gb(scenario: Scenario, territory: Territory) -> float:
    volume = territory.homes * scenario.baseline.monthly_volume_gb * 12.0
    if scenario.vod is not None:
        volume += (
            territory.homes
            * scenario.vod.daily_hours
            * 365.0
            * scenario.vod.rate_mbps
            * GB_PER_HOUR_PER_MBPS
        )
    if scenario.dl is not None:
        volume += territory.homes * scenario.dl.monthly_volume_gb * 12.0
    return volume


def _gwh(power_w: float) -> float:
    return power_w * HOURS_PER_YEAR / 1e9


def _resolved_parameters(
    scenario: Scenario,
    territory: Territory,
    factors: GlobalFactors,
    flags: ModelFlags,
    cdn_config: CdnConfig,
) -> dict[str, Any]:
    params = {
        "scenario": dataclasses.asdict(scenario),
        "territory": {
            "homes": territory.homes,
            "hubs": territory.hubs,
            "inhabitants": territory.inhabitants,
            "household_distribution": dict(territory.household_dist.probabilities),
        },
        "factors": {
            "pue": factors.pue,
            "eta": factors.eta,
            "alpha_t": factors.alpha_t,
            "alpha_u": factors.alpha_u,
            "epsilon": factors.epsilon.epsilon,
        },
        "flags": dataclasses.asdict(flags),
        "cdn_fraction": scenario.cdn_fraction(cdn_config) if scenario.service_active else None,
    }
    return params


def evaluate(
    scenario: Scenario,
    territory: Optional[Territory] = None,
    topology: Optional[CoreTreeTopology] = None,
    route: Optional[LonghaulRoute] = None,
    cdn_config: Optional[CdnConfig] = None,
    catalog: Optional[EquipmentCatalog] = None,
    factors: Optional[GlobalFactors] = None,
    flags: Optional[ModelFlags] = None,
) -> EnergyReport:
    """Run the full dimensioning pipeline and report power, energy and volume."""
    territory = territory if territory is not None else Territory()
    topology = topology if topology is not None else CoreTreeTopology()
    route = route if route is not None else LonghaulRoute()
    cdn_config = cdn_config if cdn_config is not None else CdnConfig()
    catalog = catalog if catalog is not None else DEFAULT_CATALOG
    factors = factors if factors is not None else GlobalFactors()
    flags = flags if flags is not None else ModelFlags()

    eps = factors.epsilon
    demand = demand_curve(scenario, territory.household_dist, eps)
    acc = dimension_access(territory, demand, catalog, factors)
    nat = dimension_national(
        territory, demand, topology, catalog, factors, literal_power_of_two=flags.literal_2l
    )
    r_b_star, r_v_star = global_peaks(scenario, territory, flags)
    fraction = scenario.cdn_fraction(cdn_config)
    fill = cdn_fill_rate(cdn_config) if scenario.service_active else 0.0
    r_u = longhaul_peak(
        r_b_star,
        r_v_star,
        fraction,
        fill,
        route,
        factors,
        apply_growth_margin=flags.apply_growth_margin_longhaul,
    )
    lh = dimension_longhaul(r_u, route, catalog, factors)
    cdn = dimension_cdn(
        r_v_star,
        cdn_config,
        catalog,
        factors,
        service_active=scenario.service_active,
        cdn_fraction=fraction,
    )
    onu_power = (
        territory.homes * (1.0 - scenario.onu_off_fraction) * catalog.onu.static_power_w
    )

    segments: dict[str, SegmentEnergy] = {}
    for name, power in (
        ("onu", onu_power),
        ("access", acc.power_w),
        ("national", nat.power_w),
        ("longhaul", lh.power_w),
        ("cdn", cdn.power_w),
    ):
        segments[name] = SegmentEnergy(power_w=power, energy_gwh=_gwh(power))

    volume_gb = _yearly_volume_gb(scenario, territory)
    if flags.dynamic_power:
        dyn_gwh = volume_gb * flags.dynamic_intensity_wh_per_gb / 1e9
        segments["dynamic"] = SegmentEnergy(
            power_w=dyn_gwh * 1e9 / HOURS_PER_YEAR, energy_gwh=dyn_gwh
        )

    total_power = sum(seg.power_w for seg in segments.values())
    total_gwh = sum(seg.energy_gwh for seg in segments.values())
    volume_eb = volume_gb / 1e9
    wh_per_gb = total_gwh / volume_eb if volume_eb > 0 else math.inf

    details = {
        "access": {
            "subscribers_per_gpon": acc.subscribers_per_gpon,
            "gpon_ports": acc.gpon_ports,
            "olts": acc.olts,
            "ge_ports": acc.ge_ports,
            "uplink_peak_gbps": acc.uplink_peak_gbps,
        },
        "national": {
            "core_levels": [
                {
                    "nodes": lvl.nodes,
                    "demand_gbps": lvl.demand_gbps,
                    "modules_per_node": lvl.modules_per_node,
                    "node_power_w": lvl.node_power_w,
                    "link_channels": lvl.link_channels,
                    "link_power_w": lvl.link_power_w,
                }
                for lvl in nat.core
            ],
            "edge_nodes": nat.edge.nodes,
            "edge_demand_gbps": nat.edge.demand_gbps,
            "alternate_power_w": nat.alternate_power_w,
        },
        "longhaul": {
            "peak_gbps": lh.peak_gbps,
            "channels": lh.channels,
            "terrestrial_power_w": lh.terrestrial_power_w,
            "submarine_power_w": lh.submarine_power_w,
        },
        "cdn": {
            "serve_rate_gbps": cdn.serve_rate_gbps,
            "flash_servers": cdn.flash_servers,
            "storage_servers": cdn.storage_servers,
            "edge_router_modules": cdn.edge_router_modules,
            "fill_rate_gbps": fill,
        },
        "global_peaks_gbps": {"baseline": r_b_star, "service": r_v_star},
    }

    return EnergyReport(
        scenario=scenario.name,
        segments=segments,
        total_power_w=total_power,
        total_gwh=total_gwh,
        volume_eb=volume_eb,
        wh_per_gb=wh_per_gb,
        details=details,
        parameters=_resolved_parameters(scenario, territory, factors, flags, cdn_config),
    )


def average_device_power(standby_w: float, active_w: float, active_hours: float) -> float:
    """Duty-cycle average of a device active for active_hours per day."""
    if not 0.0 <= active_hours <= 24.0:
        raise ParameterDomainError(f"active hours must be in [0, 24], got {active_hours}")
    return (standby_w * (24.0 - active_hours) + active_w * active_hours) / 24.0


@dataclass(frozen=True)
class HomeCacheDevice:
    standby_w: float = 0.5
    active_w: float = 10.0
    active_hours: float = 3.5


@dataclass(frozen=True)
class OltCacheDevice:
    device_w: float = 30.0
    subscribers_per_olt: int = 8000


@dataclass(frozen=True)
class CacheVariant:
    """Local-caching what-if: fewer streamed views, extra cache hardware."""

    ott_reduction: float = 0.25
    home_cache: HomeCacheDevice = field(default_factory=HomeCacheDevice)
    olt_cache: OltCacheDevice = field(default_factory=OltCacheDevice)

    def __post_init__(self) -> None:
        _check_fraction(self.ott_reduction, "variant.ott_reduction")


def _reduced_scenario(scenario: Scenario, variant: CacheVariant, suffix: str) -> Scenario:
    if scenario.vod is None:
        raise ConfigError(
            "cache variants need an active video service", field="scenario.vod"
        )
    keep = 1.0 - variant.ott_reduction
    vod = replace(
        scenario.vod,
        viewer_fraction=scenario.vod.viewer_fraction * keep,
        daily_hours=scenario.vod.daily_hours * keep,
    )
    return replace(scenario, name=f"{scenario.name}{suffix}", vod=vod)


def _with_device_segment(
    report: EnergyReport, name: str, power_w: float
) -> EnergyReport:
    segments = dict(report.segments)
    segments[name] = SegmentEnergy(power_w=power_w, energy_gwh=_gwh(power_w))
    return replace(
        report,
        segments=segments,
        total_power_w=report.total_power_w + power_w,
        total_gwh=report.total_gwh + _gwh(power_w),
        wh_per_gb=(report.total_gwh + _gwh(power_w)) / report.volume_eb
        if report.volume_eb
        else math.inf,
    )


def evaluate_dtt_variant(
    scenario: Scenario,
    variant: CacheVariant,
    territory: Optional[Territory] = None,
    **model_kwargs: Any,
) -> EnergyReport:
    """Home-caching variant: one cache device per home, reduced streaming.

    The viewer share and viewing hours both shrink by the reduction factor;
    the network is re-dimensioned for the lighter usage and the cache fleet's
    duty-cycle average power is added on top (in-home device, no facility
    overhead).
    """
    territory = territory if territory is not None else Territory()
    reduced = _reduced_scenario(scenario, variant, "+DTT")
    report = evaluate(reduced, territory=territory, **model_kwargs)
    hc = variant.home_cache
    fleet_w = territory.homes * average_device_power(hc.standby_w, hc.active_w, hc.active_hours)
    return _with_device_segment(report, "cache_devices", fleet_w)


def evaluate_olt_cache_variant(
    scenario: Scenario,
    variant: CacheVariant,
    territory: Optional[Territory] = None,
    **model_kwargs: Any,
) -> EnergyReport:
    """OLT-caching variant: one shared cache card per OLT shelf.

    Same streaming reduction as the home-caching variant, but the cache
    sits inside the OLT and is shared by thousands of subscribers. The card
    is part of the shelf, so no facility overhead is applied.
    """
    territory = territory if territory is not None else Territory()
    reduced = _reduced_scenario(scenario, variant, "+OLT-cache")
    report = evaluate(reduced, territory=territory, **model_kwargs)
    oc = variant.olt_cache
    devices = math.ceil(territory.homes / oc.subscribers_per_olt)
    return _with_device_segment(report, "cache_devices", devices * oc.device_w)


_SWEEPABLE_BLOCKS = ("baseline", "vod", "dl")


def _replace_parameter(scenario: Scenario, parameter: str, value: float) -> Scenario:
    block_name, _, field_name = parameter.partition(".")
    if not field_name or block_name not in _SWEEPABLE_BLOCKS:
        raise ConfigError(
            f"unknown sweep parameter {parameter!r}; expected "
            f"{_SWEEPABLE_BLOCKS} dotted with a field name",
            field="sweep.parameter",
        )
    block = getattr(scenario, block_name)
    if block is None:
        raise ConfigError(
            f"scenario {scenario.name!r} has no {block_name!r} block",
            field="sweep.parameter",
        )
    if field_name not in {f.name for f in dataclasses.fields(block)}:
        raise ConfigError(
            f"unknown sweep parameter {parameter!r}", field="sweep.parameter"
        )
    new_block = replace(block, **{field_name: value})
    return replace(scenario, name=f"{scenario.name}[{parameter}={value:g}]", **{block_name: new_block})


def sweep(
    scenario: Scenario,
    parameter: str,
    values: Sequence[float],
    baseline_scenario: Optional[Scenario] = None,
    **model_kwargs: Any,
) -> list[EnergyReport]:
    """Evaluate the scenario once per parameter value, with baseline deltas."""
    baseline_report = None
    if baseline_scenario is not None:
        baseline_report = evaluate(baseline_scenario, **model_kwargs)
    reports = []
    for value in values:
        point = _replace_parameter(scenario, parameter, value)
        report = evaluate(point, **model_kwargs)
        if baseline_report is not None:
            report = report.with_baseline(baseline_report)
        reports.append(report)
    return reports


def preset_scenarios() -> list[Scenario]:
    """The six built-in scenarios: sober baseline, four video grades, downloads."""
    baseline = BaselineUsage()
    return [
        Scenario(name="baseline", baseline=baseline),
        Scenario(name="HD", baseline=baseline, vod=VodUsage(rate_mbps=3.0)),
        Scenario(name="FHD", baseline=baseline, vod=VodUsage(rate_mbps=5.0)),
        Scenario(name="UHD", baseline=baseline, vod=VodUsage(rate_mbps=16.0)),
        Scenario(name="UHD++", baseline=baseline, vod=VodUsage(rate_mbps=27.0)),
        Scenario(name="DL", baseline=baseline, dl=DlUsage()),
    ]
