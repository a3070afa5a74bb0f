// Shapes mirrored from the evaluation API's JSON schema (schema_version 1).

export interface SegmentEnergy {
  power_w: number;
  energy_gwh: number;
}

export interface EnergyReport {
  schema_version: number;
  scenario: string;
  segments: Record<string, SegmentEnergy>;
  total_power_w: number;
  total_gwh: number;
  volume_eb: number;
  wh_per_gb: number;
  details: Record<string, unknown>;
  parameters: Record<string, unknown>;
  baseline?: string;
  delta_gwh?: number;
  delta_pct?: number;
}

export interface CompareResponse {
  a: EnergyReport;
  b: EnergyReport;
  delta_gwh: number;
  delta_pct: number | null;
  segments: Record<string, { a_gwh: number; b_gwh: number; delta_gwh: number }>;
}

export interface VodDraft {
  rate_mbps: number;
  viewer_fraction: number;
  sharing: number;
  cdn_fraction: number | null;
  daily_hours: number;
  mode: "per-inhabitant" | "per-subscriber";
}

export interface DlDraft {
  rate_mbps: number;
  active_fraction: number;
  epsilon: number;
  monthly_volume_gb: number;
  cdn_fraction: number;
}

export interface ScenarioDraft {
  name: string;
  baseline: {
    rate_mbps: number;
    active_fraction: number;
    monthly_volume_gb: number;
  };
  vod: VodDraft | null;
  dl: DlDraft | null;
  onu_off_fraction: number;
}

export interface FactorsDraft {
  pue: number;
  eta: number;
  alpha_t: number;
  alpha_u: number;
  epsilon: number;
}

export interface VariantDraft {
  kind: "home-cache" | "olt-cache";
  ott_reduction: number;
}

export interface FlagsDraft {
  literal_2l: boolean;
  apply_growth_margin_longhaul: boolean;
  rv_star_per_stream: boolean;
  global_peak_basis: "inhabitants" | "subscribers";
  dynamic_power: boolean;
  dynamic_intensity_wh_per_gb: number;
}

export interface EvaluateRequest {
  scenario: ScenarioDraft | string;
  baseline?: ScenarioDraft | string;
  factors?: FactorsDraft;
  flags?: FlagsDraft;
  variant?: VariantDraft;
  dynamic_power?: boolean;
}

export interface ApiError {
  error: { message: string; field?: string };
}

export interface DefaultsDocument {
  factors: FactorsDraft;
  scenarios: ScenarioDraft[];
  [key: string]: unknown;
}
