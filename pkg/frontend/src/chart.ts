// Stacked per-segment energy bars. Geometry is computed as plain data so it
// can be tested without a DOM; painting is a thin layer on top.

import type { EnergyReport } from "./types.js";

export const SEGMENT_ORDER = [
  "onu",
  "access",
  "national",
  "longhaul",
  "cdn",
  "cache_devices",
  "dynamic",
] as const;

export const SEGMENT_LABELS: Record<string, string> = {
  onu: "ONU",
  access: "Access",
  national: "National Core+Edge",
  longhaul: "Int. longhaul",
  cdn: "CDN",
  cache_devices: "Cache devices",
  dynamic: "Dynamic",
};

export const SEGMENT_COLORS: Record<string, string> = {
  onu: "#4e79a7",
  access: "#f28e2b",
  national: "#e15759",
  longhaul: "#76b7b2",
  cdn: "#59a14f",
  cache_devices: "#edc948",
  dynamic: "#b07aa1",
};

export interface BarSlice {
  segment: string;
  label: string;
  energyGwh: number;
  /** Height as a share of the chart scale, in [0, 1]. */
  height: number;
  color: string;
}

export interface Bar {
  scenario: string;
  totalGwh: number;
  slices: BarSlice[];
}

/** One bar per report; heights share a common scale (the largest total). */
export function stackedBars(reports: EnergyReport[]): Bar[] {
  const scale = Math.max(...reports.map((r) => r.total_gwh), 1e-12);
  return reports.map((report) => ({
    scenario: report.scenario,
    totalGwh: report.total_gwh,
    slices: SEGMENT_ORDER.filter((name) => name in report.segments).map((name) => ({
      segment: name,
      label: SEGMENT_LABELS[name],
      energyGwh: report.segments[name].energy_gwh,
      height: report.segments[name].energy_gwh / scale,
      color: SEGMENT_COLORS[name],
    })),
  }));
}

export function renderStackedBars(container: HTMLElement, bars: Bar[]): void {
  container.textContent = "";
  for (const bar of bars) {
    const column = document.createElement("div");
    column.className = "bar-column";
    const stack = document.createElement("div");
    stack.className = "bar-stack";
    for (const slice of [...bar.slices].reverse()) {
      if (slice.energyGwh <= 0) {
        continue;
      }
      const div = document.createElement("div");
      div.className = "bar-slice";
      div.style.height = `${(slice.height * 100).toFixed(2)}%`;
      div.style.background = slice.color;
      div.title = `${slice.label}: ${slice.energyGwh.toFixed(1)} GWh`;
      stack.appendChild(div);
    }
    const label = document.createElement("div");
    label.className = "bar-label";
    label.textContent = bar.scenario;
    column.appendChild(stack);
    column.appendChild(label);
    container.appendChild(column);
  }
}
