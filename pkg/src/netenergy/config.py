"""Config document handling: one schema, two encodings (YAML file, JSON wire).

Every model input (territory, catalog, factors, topology, route, CDN, flags
and the scenario list) lives in one hierarchical document. All defaults are
embedded, so an empty document is a valid, complete configuration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from .access import Territory
from .catalog import EquipmentCatalog, GlobalFactors, PowerProfile
from .cdn import CdnConfig
from .corenet import CoreTreeTopology, WdmLinkParams
from .errors import ConfigError
from .longhaul import LonghaulRoute
from .peakstats import HouseholdDistribution, ParameterDomainError
from .scenario import (
    BaselineUsage,
    DlUsage,
    ModelFlags,
    Scenario,
    VodUsage,
    preset_scenarios,
)

__all__ = [
    "RunConfig",
    "catalog_from_mapping",
    "catalog_to_mapping",
    "default_config",
    "load_config",
    "parse_config",
    "parse_scenario",
    "scenario_to_mapping",
]

_CATALOG_KINDS = (
    "onu",
    "gpon_port",
    "ge_port",
    "eth_switch_module",
    "bng_module",
    "edge_router_module",
    "core_router_module",
    "flash_server",
    "storage_server",
)


@dataclass(frozen=True)
class RunConfig:
    territory: Territory = field(default_factory=Territory)
    catalog: EquipmentCatalog = field(default_factory=EquipmentCatalog)
    factors: GlobalFactors = field(default_factory=GlobalFactors)
    topology: CoreTreeTopology = field(default_factory=CoreTreeTopology)
    route: LonghaulRoute = field(default_factory=LonghaulRoute)
    cdn: CdnConfig = field(default_factory=CdnConfig)
    flags: ModelFlags = field(default_factory=ModelFlags)
    scenarios: tuple[Scenario, ...] = field(default_factory=lambda: tuple(preset_scenarios()))
    baseline_scenario: str = "baseline"

    def __post_init__(self) -> None:
        if not self.scenarios:
            raise ConfigError("at least one scenario is required", field="scenarios")
        names = [s.name for s in self.scenarios]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate scenario names in {names}", field="scenarios")

    def scenario(self, name: str) -> Scenario:
        for s in self.scenarios:
            if s.name == name:
                return s
        known = ", ".join(s.name for s in self.scenarios)
        raise ConfigError(f"unknown scenario {name!r}; available: {known}", field="scenario")

    def model_kwargs(self) -> dict[str, Any]:
        return {
            "territory": self.territory,
            "topology": self.topology,
            "route": self.route,
            "cdn_config": self.cdn,
            "catalog": self.catalog,
            "factors": self.factors,
            "flags": self.flags,
        }


def default_config() -> RunConfig:
    return RunConfig()


def _require_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise ConfigError(f"expected a mapping, got {type(value).__name__}", field=path)
    return value


def _check_keys(mapping: Mapping[str, Any], allowed: set[str], path: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(
            f"unknown field(s) {sorted(unknown)}; allowed: {sorted(allowed)}", field=path
        )


def _get(mapping: Mapping[str, Any], key: str, default: Any) -> Any:
    value = mapping.get(key, default)
    return default if value is None else value


def catalog_to_mapping(catalog: EquipmentCatalog) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for kind in _CATALOG_KINDS:
        profile: PowerProfile = getattr(catalog, kind)
        entry: dict[str, Any] = {"power_w": profile.static_power_w}
        if profile.capacity_gbps is not None:
            entry["capacity_gbps"] = profile.capacity_gbps
        out[kind] = entry
    return out


def catalog_from_mapping(mapping: Mapping[str, Any], path: str = "catalog") -> EquipmentCatalog:
    _check_keys(mapping, set(_CATALOG_KINDS), path)
    defaults = EquipmentCatalog()
    kwargs = {}
    for kind in _CATALOG_KINDS:
        if kind not in mapping:
            kwargs[kind] = getattr(defaults, kind)
            continue
        entry = _require_mapping(mapping[kind], f"{path}.{kind}")
        _check_keys(entry, {"power_w", "capacity_gbps"}, f"{path}.{kind}")
        base: PowerProfile = getattr(defaults, kind)
        try:
            kwargs[kind] = PowerProfile(
                static_power_w=float(_get(entry, "power_w", base.static_power_w)),
                capacity_gbps=(
                    float(entry["capacity_gbps"])
                    if entry.get("capacity_gbps") is not None
                    else base.capacity_gbps
                ),
            )
        except (ParameterDomainError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc), field=f"{path}.{kind}") from exc
    return EquipmentCatalog(**kwargs)


def _territory_from_mapping(mapping: Mapping[str, Any], path: str = "territory") -> Territory:
    _check_keys(mapping, {"homes", "hubs", "inhabitants", "household_distribution"}, path)
    dist = None
    if "household_distribution" in mapping:
        raw = _require_mapping(mapping["household_distribution"], f"{path}.household_distribution")
        try:
            dist = HouseholdDistribution({int(k): float(v) for k, v in raw.items()})
        except (ParameterDomainError, TypeError, ValueError) as exc:
            raise ConfigError(str(exc), field=f"{path}.household_distribution") from exc
    defaults = Territory()
    kwargs: dict[str, Any] = {
        "homes": int(_get(mapping, "homes", defaults.homes)),
        "hubs": int(_get(mapping, "hubs", defaults.hubs)),
    }
    if dist is not None:
        kwargs["household_dist"] = dist
    if mapping.get("inhabitants") is not None:
        kwargs["inhabitants"] = int(mapping["inhabitants"])
    try:
        return Territory(**kwargs)
    except ParameterDomainError as exc:
        raise ConfigError(str(exc), field=path) from exc


def territory_to_mapping(territory: Territory) -> dict[str, Any]:
    return {
        "homes": territory.homes,
        "hubs": territory.hubs,
        "inhabitants": territory.inhabitants,
        "household_distribution": {
            str(k): v for k, v in territory.household_dist.probabilities.items()
        },
    }


def factors_from_mapping(mapping: Mapping[str, Any], path: str = "factors") -> GlobalFactors:
    _check_keys(mapping, {"pue", "eta", "alpha_t", "alpha_u", "epsilon"}, path)
    defaults = GlobalFactors()
    try:
        return GlobalFactors(
            pue=float(_get(mapping, "pue", defaults.pue)),
            eta=float(_get(mapping, "eta", defaults.eta)),
            alpha_t=float(_get(mapping, "alpha_t", defaults.alpha_t)),
            alpha_u=float(_get(mapping, "alpha_u", defaults.alpha_u)),
            epsilon=float(_get(mapping, "epsilon", defaults.epsilon.epsilon)),
        )
    except ParameterDomainError as exc:
        raise ConfigError(str(exc), field=path) from exc


def factors_to_mapping(factors: GlobalFactors) -> dict[str, Any]:
    return {
        "pue": factors.pue,
        "eta": factors.eta,
        "alpha_t": factors.alpha_t,
        "alpha_u": factors.alpha_u,
        "epsilon": factors.epsilon.epsilon,
    }


def _topology_from_mapping(mapping: Mapping[str, Any], path: str = "topology") -> CoreTreeTopology:
    _check_keys(
        mapping,
        {"branching", "core_levels", "edge_fanout", "level_distances_km", "wdm"},
        path,
    )
    defaults = CoreTreeTopology()
    wdm = defaults.wdm
    if "wdm" in mapping:
        raw = _require_mapping(mapping["wdm"], f"{path}.wdm")
        _check_keys(
            raw,
            {"channel_gbps", "terminal_w_per_channel", "amplifier_w_per_channel", "amplifier_spacing_km"},
            f"{path}.wdm",
        )
        wdm = WdmLinkParams(
            channel_gbps=float(_get(raw, "channel_gbps", wdm.channel_gbps)),
            terminal_w_per_channel=float(
                _get(raw, "terminal_w_per_channel", wdm.terminal_w_per_channel)
            ),
            amplifier_w_per_channel=float(
                _get(raw, "amplifier_w_per_channel", wdm.amplifier_w_per_channel)
            ),
            amplifier_spacing_km=float(
                _get(raw, "amplifier_spacing_km", wdm.amplifier_spacing_km)
            ),
        )
    try:
        return CoreTreeTopology(
            branching=int(_get(mapping, "branching", defaults.branching)),
            core_levels=int(_get(mapping, "core_levels", defaults.core_levels)),
            edge_fanout=int(_get(mapping, "edge_fanout", defaults.edge_fanout)),
            level_distances_km=tuple(
                float(d) for d in _get(mapping, "level_distances_km", defaults.level_distances_km)
            ),
            wdm=wdm,
        )
    except ParameterDomainError as exc:
        raise ConfigError(str(exc), field=path) from exc


def topology_to_mapping(topology: CoreTreeTopology) -> dict[str, Any]:
    return {
        "branching": topology.branching,
        "core_levels": topology.core_levels,
        "edge_fanout": topology.edge_fanout,
        "level_distances_km": list(topology.level_distances_km),
        "wdm": {
            "channel_gbps": topology.wdm.channel_gbps,
            "terminal_w_per_channel": topology.wdm.terminal_w_per_channel,
            "amplifier_w_per_channel": topology.wdm.amplifier_w_per_channel,
            "amplifier_spacing_km": topology.wdm.amplifier_spacing_km,
        },
    }


_ROUTE_KEYS = {
    "terrestrial_segments_km",
    "transit_core_nodes",
    "submarine_km",
    "repeater_spacing_km",
    "terminal_w_per_channel",
    "repeater_w_per_channel",
    "feed_efficiency",
    "cable_loss_w_per_km",
    "channel_gbps",
    "baseline_share",
}


def _route_from_mapping(mapping: Mapping[str, Any], path: str = "route") -> LonghaulRoute:
    _check_keys(mapping, _ROUTE_KEYS, path)
    defaults = LonghaulRoute()
    kwargs: dict[str, Any] = {}
    for key in _ROUTE_KEYS:
        if key not in mapping or mapping[key] is None:
            continue
        if key == "terrestrial_segments_km":
            kwargs[key] = tuple(float(d) for d in mapping[key])
        elif key == "transit_core_nodes":
            kwargs[key] = int(mapping[key])
        else:
            kwargs[key] = float(mapping[key])
    try:
        return replace(defaults, **kwargs)
    except ParameterDomainError as exc:
        raise ConfigError(str(exc), field=path) from exc


def route_to_mapping(route: LonghaulRoute) -> dict[str, Any]:
    return {
        "terrestrial_segments_km": list(route.terrestrial_segments_km),
        "transit_core_nodes": route.transit_core_nodes,
        "submarine_km": route.submarine_km,
        "repeater_spacing_km": route.repeater_spacing_km,
        "terminal_w_per_channel": route.terminal_w_per_channel,
        "repeater_w_per_channel": route.repeater_w_per_channel,
        "feed_efficiency": route.feed_efficiency,
        "cable_loss_w_per_km": route.cable_loss_w_per_km,
        "channel_gbps": route.channel_gbps,
        "baseline_share": route.baseline_share,
    }


_CDN_KEYS = {
    "storage_servers",
    "storage_capacity_tb",
    "daily_update_fraction",
    "fill_window_h",
    "cdn_fraction",
}


def _cdn_from_mapping(mapping: Mapping[str, Any], path: str = "cdn") -> CdnConfig:
    _check_keys(mapping, _CDN_KEYS, path)
    defaults = CdnConfig()
    try:
        return CdnConfig(
            storage_servers=int(_get(mapping, "storage_servers", defaults.storage_servers)),
            storage_capacity_tb=float(
                _get(mapping, "storage_capacity_tb", defaults.storage_capacity_tb)
            ),
            daily_update_fraction=float(
                _get(mapping, "daily_update_fraction", defaults.daily_update_fraction)
            ),
            fill_window_h=float(_get(mapping, "fill_window_h", defaults.fill_window_h)),
            cdn_fraction=float(_get(mapping, "cdn_fraction", defaults.cdn_fraction)),
        )
    except ParameterDomainError as exc:
        raise ConfigError(str(exc), field=path) from exc


def cdn_to_mapping(cdn: CdnConfig) -> dict[str, Any]:
    return {
        "storage_servers": cdn.storage_servers,
        "storage_capacity_tb": cdn.storage_capacity_tb,
        "daily_update_fraction": cdn.daily_update_fraction,
        "fill_window_h": cdn.fill_window_h,
        "cdn_fraction": cdn.cdn_fraction,
    }


_FLAG_KEYS = {
    "literal_2l",
    "apply_growth_margin_longhaul",
    "rv_star_per_stream",
    "global_peak_basis",
    "dynamic_power",
    "dynamic_intensity_wh_per_gb",
}


def flags_from_mapping(mapping: Mapping[str, Any], path: str = "flags") -> ModelFlags:
    _check_keys(mapping, _FLAG_KEYS, path)
    defaults = ModelFlags()
    return ModelFlags(
        literal_2l=bool(_get(mapping, "literal_2l", defaults.literal_2l)),
        apply_growth_margin_longhaul=bool(
            _get(mapping, "apply_growth_margin_longhaul", defaults.apply_growth_margin_longhaul)
        ),
        rv_star_per_stream=bool(
            _get(mapping, "rv_star_per_stream", defaults.rv_star_per_stream)
        ),
        global_peak_basis=str(_get(mapping, "global_peak_basis", defaults.global_peak_basis)),
        dynamic_power=bool(_get(mapping, "dynamic_power", defaults.dynamic_power)),
        dynamic_intensity_wh_per_gb=float(
            _get(mapping, "dynamic_intensity_wh_per_gb", defaults.dynamic_intensity_wh_per_gb)
        ),
    )


def flags_to_mapping(flags: ModelFlags) -> dict[str, Any]:
    return {
        "literal_2l": flags.literal_2l,
        "apply_growth_margin_longhaul": flags.apply_growth_margin_longhaul,
        "rv_star_per_stream": flags.rv_star_per_stream,
        "global_peak_basis": flags.global_peak_basis,
        "dynamic_power": flags.dynamic_power,
        "dynamic_intensity_wh_per_gb": flags.dynamic_intensity_wh_per_gb,
    }


def parse_scenario(mapping: Mapping[str, Any], path: str = "scenario") -> Scenario:
    _require_mapping(mapping, path)
    _check_keys(mapping, {"name", "baseline", "vod", "dl", "onu_off_fraction"}, path)
    if "name" not in mapping:
        raise ConfigError("scenario needs a name", field=f"{path}.name")
    baseline = BaselineUsage()
    if mapping.get("baseline") is not None:
        raw = _require_mapping(mapping["baseline"], f"{path}.baseline")
        _check_keys(raw, {"rate_mbps", "active_fraction", "monthly_volume_gb"}, f"{path}.baseline")
        baseline = BaselineUsage(
            rate_mbps=float(_get(raw, "rate_mbps", baseline.rate_mbps)),
            active_fraction=float(_get(raw, "active_fraction", baseline.active_fraction)),
            monthly_volume_gb=float(_get(raw, "monthly_volume_gb", baseline.monthly_volume_gb)),
        )
    vod = None
    if mapping.get("vod") is not None:
        raw = _require_mapping(mapping["vod"], f"{path}.vod")
        _check_keys(
            raw,
            {"rate_mbps", "viewer_fraction", "sharing", "cdn_fraction", "daily_hours", "mode"},
            f"{path}.vod",
        )
        if "rate_mbps" not in raw:
            raise ConfigError("vod needs rate_mbps", field=f"{path}.vod.rate_mbps")
        proto = VodUsage(rate_mbps=0.0)
        vod = VodUsage(
            rate_mbps=float(raw["rate_mbps"]),
            viewer_fraction=float(_get(raw, "viewer_fraction", proto.viewer_fraction)),
            sharing=float(_get(raw, "sharing", proto.sharing)),
            cdn_fraction=(
                float(raw["cdn_fraction"]) if raw.get("cdn_fraction") is not None else None
            ),
            daily_hours=float(_get(raw, "daily_hours", proto.daily_hours)),
            mode=str(_get(raw, "mode", proto.mode)),
        )
    dl = None
    if mapping.get("dl") is not None:
        raw = _require_mapping(mapping["dl"], f"{path}.dl")
        _check_keys(
            raw,
            {"rate_mbps", "active_fraction", "epsilon", "monthly_volume_gb", "cdn_fraction"},
            f"{path}.dl",
        )
        proto = DlUsage()
        dl = DlUsage(
            rate_mbps=float(_get(raw, "rate_mbps", proto.rate_mbps)),
            active_fraction=float(_get(raw, "active_fraction", proto.active_fraction)),
            epsilon=float(_get(raw, "epsilon", proto.epsilon)),
            monthly_volume_gb=float(_get(raw, "monthly_volume_gb", proto.monthly_volume_gb)),
            cdn_fraction=float(_get(raw, "cdn_fraction", proto.cdn_fraction)),
        )
    return Scenario(
        name=str(mapping["name"]),
        baseline=baseline,
        vod=vod,
        dl=dl,
        onu_off_fraction=float(_get(mapping, "onu_off_fraction", 0.0)),
    )


def scenario_to_mapping(scenario: Scenario) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": scenario.name,
        "baseline": {
            "rate_mbps": scenario.baseline.rate_mbps,
            "active_fraction": scenario.baseline.active_fraction,
            "monthly_volume_gb": scenario.baseline.monthly_volume_gb,
        },
        "onu_off_fraction": scenario.onu_off_fraction,
    }
    if scenario.vod is not None:
        out["vod"] = {
            "rate_mbps": scenario.vod.rate_mbps,
            "viewer_fraction": scenario.vod.viewer_fraction,
            "sharing": scenario.vod.sharing,
            "cdn_fraction": scenario.vod.cdn_fraction,
            "daily_hours": scenario.vod.daily_hours,
            "mode": scenario.vod.mode,
        }
    if scenario.dl is not None:
        out["dl"] = {
            "rate_mbps": scenario.dl.rate_mbps,
            "active_fraction": scenario.dl.active_fraction,
            "epsilon": scenario.dl.epsilon,
            "monthly_volume_gb": scenario.dl.monthly_volume_gb,
            "cdn_fraction": scenario.dl.cdn_fraction,
        }
    return out


_CONFIG_KEYS = {
    "territory",
    "catalog",
    "factors",
    "topology",
    "route",
    "cdn",
    "flags",
    "scenarios",
    "baseline_scenario",
}


def parse_config(document: Mapping[str, Any] | None) -> RunConfig:
    """Build a RunConfig from a parsed document, filling every default."""
    if document is None:
        document = {}
    _require_mapping(document, "config")
    _check_keys(document, _CONFIG_KEYS, "config")
    defaults = RunConfig()
    scenarios = defaults.scenarios
    if document.get("scenarios") is not None:
        raw_list = document["scenarios"]
        if not isinstance(raw_list, (list, tuple)):
            raise ConfigError("expected a list of scenarios", field="scenarios")
        scenarios = tuple(
            parse_scenario(raw, path=f"scenarios[{i}]") for i, raw in enumerate(raw_list)
        )
    return RunConfig(
        territory=(
            _territory_from_mapping(_require_mapping(document["territory"], "territory"))
            if document.get("territory") is not None
            else defaults.territory
        ),
        catalog=(
            catalog_from_mapping(_require_mapping(document["catalog"], "catalog"))
            if document.get("catalog") is not None
            else defaults.catalog
        ),
        factors=(
            factors_from_mapping(_require_mapping(document["factors"], "factors"))
            if document.get("factors") is not None
            else defaults.factors
        ),
        topology=(
            _topology_from_mapping(_require_mapping(document["topology"], "topology"))
            if document.get("topology") is not None
            else defaults.topology
        ),
        route=(
            _route_from_mapping(_require_mapping(document["route"], "route"))
            if document.get("route") is not None
            else defaults.route
        ),
        cdn=(
            _cdn_from_mapping(_require_mapping(document["cdn"], "cdn"))
            if document.get("cdn") is not None
            else defaults.cdn
        ),
        flags=(
            flags_from_mapping(_require_mapping(document["flags"], "flags"))
            if document.get("flags") is not None
            else defaults.flags
        ),
        scenarios=scenarios,
        baseline_scenario=str(_get(document, "baseline_scenario", defaults.baseline_scenario)),
    )


def config_to_mapping(config: RunConfig) -> dict[str, Any]:
    return {
        "territory": territory_to_mapping(config.territory),
        "catalog": catalog_to_mapping(config.catalog),
        "factors": factors_to_mapping(config.factors),
        "topology": topology_to_mapping(config.topology),
        "route": route_to_mapping(config.route),
        "cdn": cdn_to_mapping(config.cdn),
        "flags": flags_to_mapping(config.flags),
        "scenarios": [scenario_to_mapping(s) for s in config.scenarios],
        "baseline_scenario": config.baseline_scenario,
    }


def load_config(path: str | Path) -> RunConfig:
    """Load a YAML (or JSON) config file; missing sections take defaults."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config file: {exc}", field=str(path)) from exc
    return parse_config(document)


def dump_config(config: RunConfig) -> str:
    return json.dumps(config_to_mapping(config), sort_keys=True, indent=2)
