// The six built-in scenarios, mirrored verbatim from the engine defaults
// (GET /defaults carries the authoritative copy; these drive the preset
// buttons before the first fetch completes and in tests).

import type { FactorsDraft, FlagsDraft, ScenarioDraft } from "./types.js";

const BASELINE_USAGE = {
  rate_mbps: 10,
  active_fraction: 0.02,
  monthly_volume_gb: 2,
};

function vodPreset(name: string, rate: number): ScenarioDraft {
  return {
    name,
    baseline: { ...BASELINE_USAGE },
    vod: {
      rate_mbps: rate,
      viewer_fraction: 0.2,
      sharing: 1.5,
      cdn_fraction: null,
      daily_hours: 3.2,
      mode: "per-inhabitant",
    },
    dl: null,
    onu_off_fraction: 0,
  };
}

export const PRESETS: ScenarioDraft[] = [
  {
    name: "baseline",
    baseline: { ...BASELINE_USAGE },
    vod: null,
    dl: null,
    onu_off_fraction: 0,
  },
  vodPreset("HD", 3),
  vodPreset("FHD", 5),
  vodPreset("UHD", 16),
  vodPreset("UHD++", 27),
  {
    name: "DL",
    baseline: { ...BASELINE_USAGE },
    vod: null,
    dl: {
      rate_mbps: 200,
      active_fraction: 0.03,
      epsilon: 1e-7,
      monthly_volume_gb: 25,
      cdn_fraction: 0.95,
    },
    onu_off_fraction: 0,
  },
];

export const DEFAULT_FACTORS: FactorsDraft = {
  pue: 1.8,
  eta: 2,
  alpha_t: 1.5,
  alpha_u: 2,
  epsilon: 1e-9,
};

export const DEFAULT_FLAGS: FlagsDraft = {
  literal_2l: false,
  apply_growth_margin_longhaul: true,
  rv_star_per_stream: true,
  global_peak_basis: "subscribers",
  dynamic_power: false,
  dynamic_intensity_wh_per_gb: 0.1,
};

export function presetByName(name: string): ScenarioDraft {
  const hit = PRESETS.find((p) => p.name === name);
  if (!hit) {
    throw new Error(`unknown preset ${name}`);
  }
  return structuredClone(hit);
}

// Table-style caching comparisons: usage reduction when a local cache
// absorbs part of the streaming.
export const DTT_REDUCTIONS: Record<string, number> = {
  FHD: 0.5,
  UHD: 0.25,
};
