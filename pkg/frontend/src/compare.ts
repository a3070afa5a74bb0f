// Side-by-side comparison requests, including the cache-variant toggle that
// reproduces the streaming-vs-local-caching trade-off tables.

import type { EvaluateRequest, FactorsDraft, ScenarioDraft, VariantDraft } from "./types.js";
import { DTT_REDUCTIONS, presetByName } from "./presets.js";

export interface ComparePlan {
  a: EvaluateRequest;
  b: EvaluateRequest;
}

export function buildComparePlan(
  left: ScenarioDraft,
  right: ScenarioDraft,
  factors: FactorsDraft,
  dttOnRight: boolean,
): ComparePlan {
  const a: EvaluateRequest = { scenario: left, factors };
  const b: EvaluateRequest = { scenario: right, factors };
  if (dttOnRight) {
    b.variant = dttVariantFor(right.name);
  }
  return { a, b };
}

/** Home-caching variant with the published usage reduction for the grade. */
export function dttVariantFor(presetName: string): VariantDraft {
  const reduction = DTT_REDUCTIONS[presetName] ?? 0.25;
  return { kind: "home-cache", ott_reduction: reduction };
}

/** The two published caching rows: FHD at 50% reduction, UHD at 25%. */
export function tableFivePlans(factors: FactorsDraft): ComparePlan[] {
  return ["FHD", "UHD"].map((name) =>
    buildComparePlan(presetByName(name), presetByName(name), factors, true),
  );
}
