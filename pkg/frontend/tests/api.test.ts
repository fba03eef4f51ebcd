import { afterEach, describe, expect, it, vi } from "vitest";

import { AdviceClient, ApiError } from "../src/api";
import { FROZEN_ADVICE } from "./fixtures";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

const SAMPLE_REQUEST = {
  cup: { red: 2, yellow: 3, green: 1 },
  footprints: { red: 1, yellow: 0, green: 1 },
  shotguns: 1,
  brains: 0,
  policy: "table",
};

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("AdviceClient", () => {
  it("posts the request and returns the parsed advice", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
      expect(String(url)).toBe("/api/advise");
      expect(init?.method).toBe("POST");
      const sent = JSON.parse(String(init?.body));
      expect(sent.cup).toEqual(SAMPLE_REQUEST.cup);
      return jsonResponse(FROZEN_ADVICE.s1b0);
    });
    vi.stubGlobal("fetch", fetchMock);
    const advice = await new AdviceClient().advise(SAMPLE_REQUEST);
    expect(advice.verdict).toBe("continue");
    expect(advice.threshold).toBe(4);
    expect(advice.bust_probability.fraction).toBe("19/72");
  });

  it("aborts a stale in-flight request when a newer one arrives", async () => {
    const seen: AbortSignal[] = [];
    const fetchMock = vi.fn(
      (url: RequestInfo | URL, init?: RequestInit) =>
        new Promise<Response>((resolve, reject) => {
          const signal = init?.signal as AbortSignal;
          seen.push(signal);
          signal.addEventListener("abort", () =>
            reject(new DOMException("aborted", "AbortError")),
          );
          if (seen.length === 2) resolve(jsonResponse(FROZEN_ADVICE.s1b4));
        }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const client = new AdviceClient();
    const first = client.advise(SAMPLE_REQUEST);
    const second = client.advise({ ...SAMPLE_REQUEST, brains: 4 });
    await expect(first).rejects.toThrow(/aborted/);
    const advice = await second;
    expect(advice.verdict).toBe("continue");
    expect(seen[0].aborted).toBe(true);
    expect(seen[1].aborted).toBe(false);
  });

  it("surfaces violations from a 400", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({ violations: ["green overflow"] }, 400),
      ),
    );
    const err = await new AdviceClient()
      .advise(SAMPLE_REQUEST)
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.violations).toEqual(["green overflow"]);
  });

  it("queries the validate endpoint with the state parameters", async () => {
    const fetchMock = vi.fn(async (url: RequestInfo | URL) => {
      const parsed = new URL(String(url), "http://test");
      expect(parsed.pathname).toBe("/api/state/validate");
      expect(parsed.searchParams.get("g_cup")).toBe("1");
      return jsonResponse({ valid: true, violations: [] });
    });
    vi.stubGlobal("fetch", fetchMock);
    const res = await new AdviceClient().validateState({ g_cup: 1 });
    expect(res.valid).toBe(true);
  });

  it("reads service health", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () =>
        jsonResponse({
          status: "ok",
          version: "0.1.0",
          table_rows: 1650,
          table_checksum: "x".repeat(64),
        }),
      ),
    );
    const health = await new AdviceClient().health();
    expect(health.table_rows).toBe(1650);
  });
});
