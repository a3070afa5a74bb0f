// Scenario explorer wiring: parameter controls on the left, live results on
// the right, and a side-by-side comparison panel underneath. Every number
// shown comes from an API response; the page computes none itself.

import { ApiClient } from "./api.js";
import { renderStackedBars, stackedBars } from "./chart.js";
import { buildComparePlan } from "./compare.js";
import { formatDelta, formatGwh, formatPct, formatWhPerGb } from "./format.js";
import { DEFAULT_FACTORS, DEFAULT_FLAGS, PRESETS, presetByName } from "./presets.js";
import { debounce } from "./sequence.js";
import { ScenarioSession, type ViewState } from "./state.js";
import type {
  EnergyReport,
  FactorsDraft,
  FlagsDraft,
  ScenarioDraft,
  VariantDraft,
} from "./types.js";

const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const controls = {
  draft: presetByName("HD") as ScenarioDraft,
  factors: { ...DEFAULT_FACTORS } as FactorsDraft,
  flags: { ...DEFAULT_FLAGS } as FlagsDraft,
  dtt: false,
};

// --------------------------------------------------------------------------
// results panel

function paint(state: ViewState): void {
  el<HTMLDivElement>("status").textContent = state.pending ? "evaluating..." : "";
  const banner = el<HTMLDivElement>("network-error");
  banner.hidden = state.networkError === null;
  if (state.networkError !== null) {
    banner.textContent = `request failed, showing last good result (${state.networkError})`;
  }
  const errors = el<HTMLUListElement>("field-errors");
  errors.textContent = "";
  for (const fe of state.fieldErrors) {
    const li = document.createElement("li");
    li.textContent = `${fe.field}: ${fe.message}`;
    errors.appendChild(li);
  }
  if (state.report) {
    showReport(state.report);
  }
}

function showReport(report: EnergyReport): void {
  const total = el<HTMLSpanElement>("total-gwh");
  total.textContent = formatGwh(report.total_gwh);
  total.dataset.exact = String(report.total_gwh); // full-precision API value
  const delta = el<HTMLSpanElement>("delta-gwh");
  delta.textContent = `${formatDelta(report.delta_gwh)} GWh (${formatPct(report.delta_pct)})`;
  delta.dataset.exact = String(report.delta_gwh ?? "");
  el<HTMLSpanElement>("wh-per-gb").textContent = formatWhPerGb(report.wh_per_gb);
  el<HTMLSpanElement>("volume-eb").textContent = formatGwh(report.volume_eb);
  el<HTMLSpanElement>("scenario-name").textContent = report.scenario;
  renderStackedBars(el<HTMLDivElement>("bars"), stackedBars([report]));
}

const session = new ScenarioSession(api, paint);

const submit = debounce(() => {
  const variant: VariantDraft | null = controls.dtt
    ? { kind: "home-cache", ott_reduction: controls.draft.name === "FHD" ? 0.5 : 0.25 }
    : null;
  void session.submit(controls.draft, controls.factors, variant, controls.flags);
}, 150);

// --------------------------------------------------------------------------
// parameter controls

interface SliderSpec {
  id: string;
  get(): number;
  set(value: number): void;
  scale?: number; // slider unit -> model unit
}

const SLIDERS: SliderSpec[] = [
  {
    id: "rv",
    get: () => controls.draft.vod?.rate_mbps ?? 0,
    set: (v) => {
      ensureVod().rate_mbps = v;
    },
  },
  {
    id: "sv",
    scale: 0.01,
    get: () => controls.draft.vod?.viewer_fraction ?? 0,
    set: (v) => {
      ensureVod().viewer_fraction = v;
    },
  },
  {
    id: "sharing",
    get: () => controls.draft.vod?.sharing ?? 1.5,
    set: (v) => {
      ensureVod().sharing = v;
    },
  },
  {
    id: "cdn",
    scale: 0.01,
    get: () => controls.draft.vod?.cdn_fraction ?? 0.8,
    set: (v) => {
      ensureVod().cdn_fraction = v;
    },
  },
  {
    id: "hours",
    get: () => controls.draft.vod?.daily_hours ?? 3.2,
    set: (v) => {
      ensureVod().daily_hours = v;
    },
  },
  { id: "pue", get: () => controls.factors.pue, set: (v) => (controls.factors.pue = v) },
  { id: "eta", get: () => controls.factors.eta, set: (v) => (controls.factors.eta = v) },
  {
    id: "alpha-t",
    get: () => controls.factors.alpha_t,
    set: (v) => (controls.factors.alpha_t = v),
  },
  {
    id: "alpha-u",
    get: () => controls.factors.alpha_u,
    set: (v) => (controls.factors.alpha_u = v),
  },
];

function ensureVod(): NonNullable<ScenarioDraft["vod"]> {
  if (!controls.draft.vod) {
    controls.draft.vod = {
      rate_mbps: 3,
      viewer_fraction: 0.2,
      sharing: 1.5,
      cdn_fraction: null,
      daily_hours: 3.2,
      mode: "per-inhabitant",
    };
    controls.draft.dl = null;
  }
  return controls.draft.vod;
}

function refreshSliders(): void {
  for (const spec of SLIDERS) {
    const input = el<HTMLInputElement>(spec.id);
    input.value = String(spec.get() / (spec.scale ?? 1));
    el<HTMLSpanElement>(`${spec.id}-value`).textContent = input.value;
  }
}

function wireSliders(): void {
  for (const spec of SLIDERS) {
    const input = el<HTMLInputElement>(spec.id);
    input.addEventListener("input", () => {
      spec.set(Number(input.value) * (spec.scale ?? 1));
      el<HTMLSpanElement>(`${spec.id}-value`).textContent = input.value;
      submit();
    });
  }
}

function wirePresets(): void {
  const box = el<HTMLDivElement>("presets");
  for (const preset of PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset.name;
    button.dataset.preset = preset.name;
    button.addEventListener("click", () => {
      controls.draft = presetByName(preset.name);
      refreshSliders();
      submit();
    });
    box.appendChild(button);
  }
  const dtt = el<HTMLInputElement>("dtt-toggle");
  dtt.addEventListener("change", () => {
    controls.dtt = dtt.checked;
    submit();
  });
}

function wireFlags(): void {
  const toggles: Array<[string, keyof FlagsDraft]> = [
    ["flag-dynamic", "dynamic_power"],
    ["flag-literal-2l", "literal_2l"],
    ["flag-longhaul-margin", "apply_growth_margin_longhaul"],
    ["flag-per-stream", "rv_star_per_stream"],
  ];
  for (const [id, key] of toggles) {
    const input = el<HTMLInputElement>(id);
    input.checked = controls.flags[key] as boolean;
    input.addEventListener("change", () => {
      (controls.flags[key] as boolean) = input.checked;
      submit();
    });
  }
  const basis = el<HTMLSelectElement>("flag-basis");
  basis.value = controls.flags.global_peak_basis;
  basis.addEventListener("change", () => {
    controls.flags.global_peak_basis = basis.value as FlagsDraft["global_peak_basis"];
    submit();
  });
}

// --------------------------------------------------------------------------
// comparison panel

async function runCompare(): Promise<void> {
  const leftName = el<HTMLSelectElement>("compare-a").value;
  const rightName = el<HTMLSelectElement>("compare-b").value;
  const dttOnRight = el<HTMLInputElement>("compare-dtt").checked;
  const plan = buildComparePlan(
    presetByName(leftName),
    presetByName(rightName),
    controls.factors,
    dttOnRight,
  );
  const out = el<HTMLDivElement>("compare-result");
  out.textContent = "comparing...";
  try {
    const result = await api.compare(plan.a, plan.b);
    out.textContent = "";
    const table = document.createElement("table");
    const head = table.insertRow();
    for (const text of ["Segment", result.a.scenario, result.b.scenario, "Delta"]) {
      const cell = document.createElement("th");
      cell.textContent = text;
      head.appendChild(cell);
    }
    for (const [name, seg] of Object.entries(result.segments)) {
      const row = table.insertRow();
      row.insertCell().textContent = name;
      row.insertCell().textContent = formatGwh(seg.a_gwh);
      row.insertCell().textContent = formatGwh(seg.b_gwh);
      row.insertCell().textContent = formatDelta(seg.delta_gwh);
    }
    const totals = table.insertRow();
    totals.insertCell().textContent = "Total";
    const aTotal = totals.insertCell();
    aTotal.textContent = formatGwh(result.a.total_gwh);
    aTotal.dataset.exact = String(result.a.total_gwh);
    const bTotal = totals.insertCell();
    bTotal.textContent = formatGwh(result.b.total_gwh);
    bTotal.dataset.exact = String(result.b.total_gwh);
    totals.insertCell().textContent = `${formatDelta(result.delta_gwh)} GWh`;
    out.appendChild(table);
    renderStackedBars(el<HTMLDivElement>("compare-bars"), stackedBars([result.a, result.b]));
  } catch (err) {
    out.textContent = `comparison failed: ${err}`;
  }
}

function wireCompare(): void {
  for (const id of ["compare-a", "compare-b"]) {
    const select = el<HTMLSelectElement>(id);
    for (const preset of PRESETS) {
      const option = document.createElement("option");
      option.value = preset.name;
      option.textContent = preset.name;
      select.appendChild(option);
    }
  }
  el<HTMLSelectElement>("compare-a").value = "FHD";
  el<HTMLSelectElement>("compare-b").value = "FHD";
  el<HTMLInputElement>("compare-dtt").checked = true;
  el<HTMLButtonElement>("compare-run").addEventListener("click", () => {
    void runCompare();
  });
}

async function startup(): Promise<void> {
  wireSliders();
  wirePresets();
  wireFlags();
  wireCompare();
  refreshSliders();
  try {
    const defaults = await api.getDefaults();
    controls.factors = { ...defaults.factors };
    refreshSliders();
  } catch {
    // offline start: embedded defaults already match the engine's
  }
  submit();
}

document.addEventListener("DOMContentLoaded", () => {
  void startup();
});
