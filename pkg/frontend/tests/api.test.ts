import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike } from "../src/api.js";
import { ApiRequestError } from "../src/types.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function mockFetch(
  handler: (url: string, init?: RequestInit) => { status: number; body: unknown },
): { fetchFn: FetchLike; calls: Call[] } {
  const calls: Call[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    const { status, body } = handler(url, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

const RECORD = {
  case_id: "c1",
  pattern_id: "IP-0001",
  pattern_text: "ab+c",
  n_contacts: 2,
  n_places: 1,
  person_codes: 2,
  building_codes: 1,
  block_height: 0,
  mining: {
    winner_miner: 1,
    winning_code: "Pabc",
    bhc: "ab".repeat(32),
    tries_per_miner: [1, 0, 0],
    met_difficulty: true,
  },
};

describe("ApiClient contract", () => {
  it("posts case registrations as JSON to /cases", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: RECORD }));
    const api = new ApiClient("http://host:8000", fetchFn);
    const record = await api.registerCase("c1");
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://host:8000/cases");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ case_id: "c1" });
    expect(record.pattern_id).toBe("IP-0001");
    expect(record.mining?.winning_code).toBe("Pabc");
  });

  it("raises ApiRequestError with the server's error shape", async () => {
    const { fetchFn } = mockFetch(() => ({
      status: 409,
      body: { error: "DuplicateCase", detail: "case c1 already registered" },
    }));
    const api = new ApiClient("", fetchFn);
    const err = await api.registerCase("c1").catch((e) => e);
    expect(err).toBeInstanceOf(ApiRequestError);
    expect(err.status).toBe(409);
    expect(err.code).toBe("DuplicateCase");
    expect(err.message).toContain("already registered");
  });

  it("posts verification requests to /verify", async () => {
    const { fetchFn, calls } = mockFetch(() => ({
      status: 200,
      body: {
        code: "Pabbc",
        valid: true,
        pattern_id: "IP-0001",
        case_id: "c1",
        contagion_place: null,
        contagion_time: "05/06/20-12:00:00",
        undispatched: false,
      },
    }));
    const result = await new ApiClient("", fetchFn).verifyCode("Pabbc");
    expect(calls[0].url).toBe("/verify");
    expect(JSON.parse(calls[0].init?.body as string)).toEqual({ code: "Pabbc" });
    expect(result.valid).toBe(true);
    expect(result.case_id).toBe("c1");
  });

  it("builds suspect queries with exactly one mode", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: [] }));
    const api = new ApiClient("", fetchFn);
    await api.suspects({ threshold: 0.25 });
    await api.suspects({ k: 3 });
    await api.suspects();
    expect(calls.map((c) => c.url)).toEqual([
      "/authority/suspects?threshold=0.25",
      "/authority/suspects?k=3",
      "/authority/suspects",
    ]);
  });

  it("fetches the chain summary from /chain", async () => {
    const blocks = [
      {
        height: 0,
        n_patterns: 1,
        bhc: "0".repeat(64),
        prev_hash: "0".repeat(64),
        merkle_root: "1".repeat(64),
        winning_code: "Pabc",
        timestamp: "05/06/20-12:00:00",
      },
    ];
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: blocks }));
    const chain = await new ApiClient("http://x", fetchFn).chain();
    expect(calls[0].url).toBe("http://x/chain");
    expect(chain).toHaveLength(1);
    expect(chain[0].winning_code).toBe("Pabc");
  });

  it("strips a trailing slash from the base URL", async () => {
    const { fetchFn, calls } = mockFetch(() => ({
      status: 200,
      body: { status: "ok", blocks: 0 },
    }));
    await new ApiClient("http://host:8000/", fetchFn).health();
    expect(calls[0].url).toBe("http://host:8000/health");
  });
});
