// Client-side draft validation. The rules mirror the server's exactly
// (fractions within [0, 1], bitrates non-negative, hours within the day);
// a draft that fails here is never submitted.

import type { FactorsDraft, ScenarioDraft } from "./types.js";

export interface FieldError {
  field: string;
  message: string;
}

function fraction(value: number, field: string, errors: FieldError[]): void {
  if (!(value >= 0 && value <= 1)) {
    errors.push({ field, message: `must be in [0, 1], got ${value}` });
  }
}

function nonNegative(value: number, field: string, errors: FieldError[]): void {
  if (!(value >= 0)) {
    errors.push({ field, message: `must be >= 0, got ${value}` });
  }
}

function finite(value: number, field: string, errors: FieldError[]): boolean {
  if (!Number.isFinite(value)) {
    errors.push({ field, message: "must be a number" });
    return false;
  }
  return true;
}

export function validateScenario(draft: ScenarioDraft): FieldError[] {
  const errors: FieldError[] = [];
  if (!draft.name.trim()) {
    errors.push({ field: "name", message: "scenario needs a name" });
  }
  if (finite(draft.baseline.rate_mbps, "baseline.rate_mbps", errors)) {
    nonNegative(draft.baseline.rate_mbps, "baseline.rate_mbps", errors);
  }
  if (finite(draft.baseline.active_fraction, "baseline.active_fraction", errors)) {
    fraction(draft.baseline.active_fraction, "baseline.active_fraction", errors);
  }
  nonNegative(draft.baseline.monthly_volume_gb, "baseline.monthly_volume_gb", errors);
  fraction(draft.onu_off_fraction, "onu_off_fraction", errors);

  if (draft.vod && draft.dl) {
    errors.push({ field: "scenario", message: "choose video or downloads, not both" });
  }
  if (draft.vod) {
    const v = draft.vod;
    if (finite(v.rate_mbps, "vod.rate_mbps", errors)) {
      nonNegative(v.rate_mbps, "vod.rate_mbps", errors);
    }
    if (finite(v.viewer_fraction, "vod.viewer_fraction", errors)) {
      fraction(v.viewer_fraction, "vod.viewer_fraction", errors);
    }
    if (!(v.sharing > 0)) {
      errors.push({ field: "vod.sharing", message: `must be > 0, got ${v.sharing}` });
    }
    if (v.cdn_fraction !== null) {
      fraction(v.cdn_fraction, "vod.cdn_fraction", errors);
    }
    if (!(v.daily_hours >= 0 && v.daily_hours <= 24)) {
      errors.push({ field: "vod.daily_hours", message: `must be in [0, 24], got ${v.daily_hours}` });
    }
  }
  if (draft.dl) {
    const d = draft.dl;
    if (finite(d.rate_mbps, "dl.rate_mbps", errors)) {
      nonNegative(d.rate_mbps, "dl.rate_mbps", errors);
    }
    fraction(d.active_fraction, "dl.active_fraction", errors);
    fraction(d.cdn_fraction, "dl.cdn_fraction", errors);
    if (!(d.epsilon > 0 && d.epsilon < 1)) {
      errors.push({ field: "dl.epsilon", message: `must be in (0, 1), got ${d.epsilon}` });
    }
    nonNegative(d.monthly_volume_gb, "dl.monthly_volume_gb", errors);
  }
  return errors;
}

export function validateFactors(draft: FactorsDraft): FieldError[] {
  const errors: FieldError[] = [];
  const atLeastOne: Array<keyof FactorsDraft> = ["pue", "eta", "alpha_t", "alpha_u"];
  for (const key of atLeastOne) {
    const value = draft[key];
    if (!(value >= 1)) {
      errors.push({ field: `factors.${key}`, message: `must be >= 1, got ${value}` });
    }
  }
  if (!(draft.epsilon > 0 && draft.epsilon < 1)) {
    errors.push({ field: "factors.epsilon", message: `must be in (0, 1), got ${draft.epsilon}` });
  }
  return errors;
}
