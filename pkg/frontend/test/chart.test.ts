import { describe, expect, it } from "vitest";

import { SEGMENT_ORDER, stackedBars } from "../src/chart.js";
import type { EnergyReport } from "../src/types.js";

function report(scenario: string, segments: Record<string, number>): EnergyReport {
  const segs: EnergyReport["segments"] = {};
  for (const [name, gwh] of Object.entries(segments)) {
    segs[name] = { power_w: (gwh * 1e9) / 8760, energy_gwh: gwh };
  }
  const total = Object.values(segments).reduce((a, b) => a + b, 0);
  return {
    schema_version: 1,
    scenario,
    segments: segs,
    total_power_w: (total * 1e9) / 8760,
    total_gwh: total,
    volume_eb: 1,
    wh_per_gb: total,
    details: {},
    parameters: {},
  };
}

describe("stacked bar geometry", () => {
  it("slice heights are proportional to segment energies", () => {
    const bars = stackedBars([report("x", { onu: 600, access: 300, national: 100 })]);
    const [bar] = bars;
    expect(bar.slices.map((s) => s.segment)).toEqual(["onu", "access", "national"]);
    expect(bar.slices[0].height).toBeCloseTo(0.6, 12);
    expect(bar.slices[1].height).toBeCloseTo(0.3, 12);
    expect(bar.slices[2].height).toBeCloseTo(0.1, 12);
  });

  it("bars share a common scale so totals compare visually", () => {
    const bars = stackedBars([
      report("small", { onu: 500 }),
      report("large", { onu: 1000 }),
    ]);
    const sum = (bar: (typeof bars)[number]) =>
      bar.slices.reduce((acc, s) => acc + s.height, 0);
    expect(sum(bars[1])).toBeCloseTo(1.0, 12);
    expect(sum(bars[0])).toBeCloseTo(0.5, 12);
  });

  it("keeps the canonical segment order", () => {
    const shuffled = report("x", { cdn: 1, onu: 1, longhaul: 1, access: 1 });
    const [bar] = stackedBars([shuffled]);
    const expected = SEGMENT_ORDER.filter((s) => s in shuffled.segments);
    expect(bar.slices.map((s) => s.segment)).toEqual(expected);
  });

  it("omits segments the report does not carry", () => {
    const [bar] = stackedBars([report("x", { onu: 1 })]);
    expect(bar.slices).toHaveLength(1);
  });
});
