import { describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { DEFAULT_FACTORS, presetByName } from "../src/presets.js";
import { ScenarioSession, type ViewState } from "../src/state.js";
import type { EnergyReport } from "../src/types.js";

function report(scenario: string, total: number): EnergyReport {
  return {
    schema_version: 1,
    scenario,
    segments: {},
    total_power_w: 0,
    total_gwh: total,
    volume_eb: 1,
    wh_per_gb: total,
    details: {},
    parameters: {},
  };
}

function sessionWith(fetchFn: typeof fetch) {
  const states: ViewState[] = [];
  const session = new ScenarioSession(new ApiClient("", fetchFn), (s) => states.push(s));
  return { session, states };
}

const ok = (body: unknown) =>
  new Response(JSON.stringify(body), { status: 200, headers: { "Content-Type": "application/json" } });

describe("scenario session", () => {
  it("never submits an invalid draft", async () => {
    const fetchSpy = vi.fn() as unknown as typeof fetch;
    const { session, states } = sessionWith(fetchSpy);
    const bad = presetByName("HD");
    bad.vod!.viewer_fraction = 2;
    await session.submit(bad, DEFAULT_FACTORS);
    expect((fetchSpy as unknown as ReturnType<typeof vi.fn>).mock.calls).toHaveLength(0);
    expect(states.at(-1)?.fieldErrors.map((e) => e.field)).toEqual(["vod.viewer_fraction"]);
  });

  it("applies responses and clears errors", async () => {
    const { session, states } = sessionWith(vi.fn(async () => ok(report("HD", 779))) as never);
    await session.submit(presetByName("HD"), DEFAULT_FACTORS);
    const last = states.at(-1)!;
    expect(last.report?.total_gwh).toBe(779);
    expect(last.pending).toBe(false);
    expect(last.fieldErrors).toEqual([]);
  });

  it("last write wins when responses arrive out of order", async () => {
    let call = 0;
    const resolvers: Array<(r: Response) => void> = [];
    const fetchFn = vi.fn(() => {
      call += 1;
      const mine = call;
      return new Promise<Response>((resolve) => {
        resolvers[mine - 1] = resolve;
      });
    }) as unknown as typeof fetch;
    const { session, states } = sessionWith(fetchFn);
    const first = session.submit(presetByName("HD"), DEFAULT_FACTORS);
    const second = session.submit(presetByName("UHD"), DEFAULT_FACTORS);
    // the newer request resolves first...
    resolvers[1](ok(report("UHD", 906)));
    await second;
    // ...and the stale response must not clobber it
    resolvers[0](ok(report("HD", 779)));
    await first;
    expect(states.at(-1)?.report?.scenario).toBe("UHD");
  });

  it("keeps the last good report through a transport failure", async () => {
    let healthy = true;
    const fetchFn = vi.fn(async () => {
      if (healthy) {
        return ok(report("HD", 779));
      }
      throw new TypeError("fetch failed");
    }) as unknown as typeof fetch;
    const { session, states } = sessionWith(fetchFn);
    await session.submit(presetByName("HD"), DEFAULT_FACTORS);
    healthy = false;
    await session.submit(presetByName("UHD"), DEFAULT_FACTORS);
    const last = states.at(-1)!;
    expect(last.report?.scenario).toBe("HD"); // retained
    expect(last.networkError).toContain("fetch failed");
  });

  it("forwards model-reading flags alongside the draft", async () => {
    const fetchFn = vi.fn(async () => ok(report("HD", 779))) as unknown as typeof fetch;
    const { session } = sessionWith(fetchFn);
    const flags = {
      literal_2l: true,
      apply_growth_margin_longhaul: false,
      rv_star_per_stream: true,
      global_peak_basis: "inhabitants" as const,
      dynamic_power: true,
      dynamic_intensity_wh_per_gb: 0.1,
    };
    await session.submit(presetByName("HD"), DEFAULT_FACTORS, null, flags);
    const [, init] = (fetchFn as unknown as ReturnType<typeof vi.fn>).mock.calls[0];
    expect(JSON.parse(init.body).flags).toEqual(flags);
  });

  it("maps server field errors onto the form", async () => {
    const fetchFn = vi.fn(async () =>
      new Response(
        JSON.stringify({ error: { message: "out of range", field: "vod.sharing" } }),
        { status: 400 },
      ),
    ) as unknown as typeof fetch;
    const { session, states } = sessionWith(fetchFn);
    const draft = presetByName("HD");
    await session.submit(draft, DEFAULT_FACTORS);
    expect(states.at(-1)?.fieldErrors).toEqual([
      { field: "vod.sharing", message: "out of range" },
    ]);
  });
});
