"""Bottom-up network infrastructure energy model scaled to peak usage.

Dimensions a simplified national network (GPON FTTH access, core/edge tree,
international longhaul, CDN) for user-defined usage scenarios and reports
absolute power, annual energy, deltas against a sober baseline and
efficiency indicators.
"""

from .access import AccessDimensions, GponCapacityError, Territory, dimension_access
from .catalog import DEFAULT_CATALOG, EquipmentCatalog, GlobalFactors, PowerProfile
from .cdn import CdnConfig, cdn_fill_rate, dimension_cdn
from .config import RunConfig, default_config, load_config
from .corenet import (
    CoreTreeTopology,
    core_node_power,
    dimension_national,
    edge_node_power,
    wdm_link_power,
)
from .errors import ConfigError
from .longhaul import LonghaulRoute, dimension_longhaul, longhaul_peak, submarine_channel_power
from .peakstats import (
    ConfidenceLevel,
    HouseholdDistribution,
    QuantileApprox,
    binomial_quantile,
    convolution_quantile,
    default_household_distribution,
    eval_quantile_approx,
    fit_quantile_approx,
)
from .scenario import (
    BaselineUsage,
    CacheVariant,
    DlUsage,
    EnergyReport,
    ModelFlags,
    Scenario,
    VodUsage,
    average_device_power,
    demand_curve,
    evaluate,
    evaluate_dtt_variant,
    evaluate_olt_cache_variant,
    global_peaks,
    preset_scenarios,
    sweep,
)

__version__ = "0.1.0"
