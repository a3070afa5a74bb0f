"""National core/edge router tree and its WDM interconnects.

The country hangs off one root node (the main IXP) through a star-of-stars
tree: each core node has ``branching`` children over ``core_levels`` levels,
and every last-level core node fans out to ``edge_fanout`` edge nodes that
aggregate the OLTs. Every node and link that exists in the topology draws at
least one module/channel worth of power even at zero demand: the skeleton
must connect everyone before it carries anything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .access import Territory
from .catalog import EquipmentCatalog, GlobalFactors
from .peakstats import ParameterDomainError

__all__ = [
    "CoreTreeTopology",
    "LevelDimensions",
    "NationalDimensions",
    "WdmLinkParams",
    "core_node_power",
    "dimension_national",
    "edge_node_power",
    "wdm_link_power",
]

DemandFn = Callable[[float], float]


@dataclass(frozen=True)
class WdmLinkParams:
    """WDM transport system: two terminal multiplexers plus line amplifiers."""

    channel_gbps: float = 40.0
    terminal_w_per_channel: float = 4.6  # one at each extremity
    amplifier_w_per_channel: float = 3.5
    amplifier_spacing_km: float = 100.0


@dataclass(frozen=True)
class CoreTreeTopology:
    branching: int = 8
    core_levels: int = 3
    edge_fanout: int = 8
    #: Distance of the links arriving at level 1, 2, ... and finally at the
    #: edge level (so core_levels entries in total).
    level_distances_km: Sequence[float] = (300.0, 300.0, 100.0)
    wdm: WdmLinkParams = WdmLinkParams()

    def __post_init__(self) -> None:
        if self.branching < 2:
            raise ParameterDomainError(f"branching must be >= 2, got {self.branching}")
        if self.core_levels < 1:
            raise ParameterDomainError(f"core_levels must be >= 1, got {self.core_levels}")
        if self.edge_fanout < 1:
            raise ParameterDomainError(f"edge_fanout must be >= 1, got {self.edge_fanout}")
        dists = tuple(float(d) for d in self.level_distances_km)
        if len(dists) != self.core_levels:
            raise ParameterDomainError(
                f"need {self.core_levels} link distances, got {len(dists)}"
            )
        if any(d <= 0 for d in dists):
            raise ParameterDomainError("link distances must be > 0")
        object.__setattr__(self, "level_distances_km", dists)


@dataclass(frozen=True)
class LevelDimensions:
    """One populated level of the tree: its nodes and their uplinks."""

    nodes: int
    demand_gbps: float  # margin-adjusted per-node demand
    modules_per_node: int
    node_power_w: float  # all nodes of the level together
    link_channels: int  # per uplink; 0 at the root, which has none
    link_power_w: float  # all uplinks of the level together


@dataclass(frozen=True)
class NationalDimensions:
    core: tuple[LevelDimensions, ...]
    edge: LevelDimensions
    power_w: float
    #: Total under the alternate node-count convention (powers of two instead
    #: of the branching factor, or vice versa), for comparison output.
    alternate_power_w: float


def core_node_power(r_gbps: float, catalog: EquipmentCatalog, factors: GlobalFactors) -> float:
    """Power of one core router sized for r Gbps (at least one module)."""
    modules = _modules(r_gbps, catalog.core_router_module.capacity_gbps)
    return factors.pue * factors.eta * modules * catalog.core_router_module.static_power_w


def edge_node_power(r_gbps: float, catalog: EquipmentCatalog, factors: GlobalFactors) -> float:
    """Power of one edge node: Ethernet switch + BNG + edge router, modular."""
    total = 0.0
    for profile in (catalog.eth_switch_module, catalog.bng_module, catalog.edge_router_module):
        total += _modules(r_gbps, profile.capacity_gbps) * profile.static_power_w
    return factors.pue * factors.eta * total


def wdm_link_power(
    r_gbps: float,
    dist_km: float,
    factors: GlobalFactors,
    wdm: WdmLinkParams = WdmLinkParams(),
) -> float:
    """Power of one WDM link of the given length sized for r Gbps."""
    if dist_km <= 0:
        raise ParameterDomainError(f"link distance must be > 0, got {dist_km}")
    channels = _modules(r_gbps, wdm.channel_gbps)
    amplifiers = max(math.ceil(dist_km / wdm.amplifier_spacing_km - 1), 0)
    per_channel = (
        factors.pue * 2 * wdm.terminal_w_per_channel
        + amplifiers * wdm.amplifier_w_per_channel
    )
    return factors.eta * channels * per_channel


def _modules(r_gbps: float, capacity_gbps: float) -> int:
    if r_gbps < 0:
        raise ParameterDomainError(f"required capacity must be >= 0, got {r_gbps}")
    return max(math.ceil(r_gbps / capacity_gbps), 1)


def dimension_national(
    territory: Territory,
    demand: DemandFn,
    topology: CoreTreeTopology,
    catalog: EquipmentCatalog,
    factors: GlobalFactors,
    literal_power_of_two: bool = False,
) -> NationalDimensions:
    """Scale every core level, the edge layer and all WDM uplinks.

    Node counts grow with the branching factor (1, 8, 64 core nodes and
    branching**2 * fanout edge nodes by default) and each node at a level
    serves an equal share of the homes. Every child node owns one uplink to
    its parent carrying that child's full demand. ``literal_power_of_two``
    switches node counts and per-node shares to 2**level, the alternate
    convention; both totals are always computed and reported.
    """
    primary = _tree_power(territory, demand, topology, catalog, factors, topology.branching)
    alternate = _tree_power(territory, demand, topology, catalog, factors, 2)
    if literal_power_of_two:
        primary, alternate = alternate, primary
    core, edge, power = primary
    _, _, alt_power = alternate
    return NationalDimensions(core=core, edge=edge, power_w=power, alternate_power_w=alt_power)


def _tree_power(
    territory: Territory,
    demand: DemandFn,
    topology: CoreTreeTopology,
    catalog: EquipmentCatalog,
    factors: GlobalFactors,
    radix: int,
) -> tuple[tuple[LevelDimensions, ...], LevelDimensions, float]:
    leaf_level = topology.core_levels  # edge nodes sit one level below the core
    # The alternate counting convention uses its radix as the fanout too.
    fanout = topology.edge_fanout if radix == topology.branching else radix
    edge_nodes = radix ** (topology.core_levels - 1) * fanout
    dists = topology.level_distances_km

    levels = []
    for level in range(topology.core_levels):
        nodes = radix**level
        # a node whose share rounds below one home still serves one
        r = factors.alpha_t * demand(max(territory.homes / nodes, 1.0)) * 1e-3
        modules = _modules(r, catalog.core_router_module.capacity_gbps)
        node_power = nodes * core_node_power(r, catalog, factors)
        if level == 0:
            channels, link_power = 0, 0.0
        else:
            channels = _modules(r, topology.wdm.channel_gbps)
            link_power = nodes * wdm_link_power(r, dists[level - 1], factors, topology.wdm)
        levels.append(
            LevelDimensions(nodes, r, modules, node_power, channels, link_power)
        )

    r_edge = factors.alpha_t * demand(max(territory.homes / edge_nodes, 1.0)) * 1e-3
    edge_modules = _modules(r_edge, catalog.edge_router_module.capacity_gbps)
    edge = LevelDimensions(
        nodes=edge_nodes,
        demand_gbps=r_edge,
        modules_per_node=edge_modules,
        node_power_w=edge_nodes * edge_node_power(r_edge, catalog, factors),
        link_channels=_modules(r_edge, topology.wdm.channel_gbps),
        link_power_w=edge_nodes
        * wdm_link_power(r_edge, dists[leaf_level - 1], factors, topology.wdm),
    )

    total = edge.node_power_w + edge.link_power_w
    for lvl in levels:
        total += lvl.node_power_w + lvl.link_power_w
    return tuple(levels), edge, total
