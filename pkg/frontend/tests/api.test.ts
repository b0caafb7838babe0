/**
 * ApiClient: request shaping (auth header, paths, query strings) and the
 * normalization of both server error layouts into ApiError.
 */

import { describe, expect, it, vi } from "vitest";
import { ApiClient, ApiError, idToPath } from "../src/api.js";
import { wireResponse } from "./fixtures.js";

function clientWith(response: Response) {
  const fetchImpl = vi.fn(async () => response);
  const client = new ApiClient("http://server", "tok-123", fetchImpl as unknown as typeof fetch);
  return { client, fetchImpl };
}

function requestOf(fetchImpl: { mock: { calls: unknown[][] } }): { url: string; init: RequestInit } {
  const call = fetchImpl.mock.calls[0] as [string, RequestInit];
  return { url: call[0], init: call[1] };
}

describe("request shaping", () => {
  it("sends the bearer token on every call", async () => {
    const { client, fetchImpl } = clientWith(wireResponse(200, { user: "amal", role: "translator" }));
    const me = await client.me();

    expect(me.user).toBe("amal");
    const { url, init } = requestOf(fetchImpl);
    expect(url).toBe("http://server/api/me");
    expect(new Headers(init.headers).get("Authorization")).toBe("Bearer tok-123");
  });

  it("marks JSON bodies and posts transitions to the record path", async () => {
    const { client, fetchImpl } = clientWith(wireResponse(200, {}));
    await client.transition("noun:02958343", { action: "submit", expected_revision: 0 });

    const { url, init } = requestOf(fetchImpl);
    expect(url).toBe("http://server/api/synsets/noun/02958343/transition");
    expect(init.method).toBe("POST");
    expect(new Headers(init.headers).get("Content-Type")).toBe("application/json");
    expect(JSON.parse(init.body as string)).toEqual({ action: "submit", expected_revision: 0 });
  });

  it("builds the queue query string from the given filters only", async () => {
    const { client, fetchImpl } = clientWith(wireResponse(200, { items: [] }));
    await client.queue({ state: "untranslated", pos: "noun", page: 2, page_size: 10 });

    expect(requestOf(fetchImpl).url).toBe(
      "http://server/api/synsets?state=untranslated&pos=noun&page=2&page_size=10",
    );
  });

  it("omits the query string when no filters are set", async () => {
    const { client, fetchImpl } = clientWith(wireResponse(200, { items: [] }));
    await client.queue();

    expect(requestOf(fetchImpl).url).toBe("http://server/api/synsets");
  });
});

describe("error normalization", () => {
  it("reads top-level error bodies, findings included", async () => {
    const { client } = clientWith(
      wireResponse(422, {
        code: "validation_blocked",
        message: "record is not complete",
        findings: [{ rule_id: "E03", severity: "error", message: "no synonyms", locus: "noun:1#" }],
      }),
    );

    const error = await client.transition("noun:1", { action: "submit", expected_revision: 0 }).catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(422);
    expect(error.code).toBe("validation_blocked");
    expect(error.message).toBe("record is not complete");
    expect(error.findings).toHaveLength(1);
    expect(error.isStaleRevision).toBe(false);
  });

  it("reads detail-nested error bodies", async () => {
    const { client } = clientWith(
      wireResponse(401, { detail: { code: "unauthorized", message: "unknown token" } }),
    );

    const error = await client.me().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.status).toBe(401);
    expect(error.code).toBe("unauthorized");
    expect(error.message).toBe("unknown token");
  });

  it("keeps a plain-string detail as the message", async () => {
    const { client } = clientWith(wireResponse(422, { detail: "value is not a valid integer" }));

    const error = await client.me().catch((e) => e);
    expect(error.code).toBe("error");
    expect(error.message).toBe("value is not a valid integer");
  });

  it("falls back to the status text when the body is not JSON", async () => {
    const broken = {
      ok: false,
      status: 500,
      statusText: "Internal Server Error",
      json: async () => {
        throw new SyntaxError("not json");
      },
    } as unknown as Response;
    const { client } = clientWith(broken);

    const error = await client.me().catch((e) => e);
    expect(error).toBeInstanceOf(ApiError);
    expect(error.code).toBe("error");
    expect(error.message).toBe("Internal Server Error");
  });

  it("recognizes an edit conflict only as 409 + stale_revision", () => {
    expect(new ApiError(409, "stale_revision", "x").isStaleRevision).toBe(true);
    expect(new ApiError(409, "conflict", "x").isStaleRevision).toBe(false);
    expect(new ApiError(422, "stale_revision", "x").isStaleRevision).toBe(false);
  });
});

describe("idToPath", () => {
  it("splits the id at the colon", () => {
    expect(idToPath("noun:02958343")).toBe("noun/02958343");
    expect(idToPath("adjective-satellite:00001740")).toBe("adjective-satellite/00001740");
  });

  it("rejects ids without a colon", () => {
    expect(() => idToPath("noun02958343")).toThrow(/malformed/);
  });
});
