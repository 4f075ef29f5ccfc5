import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { emptyDocument } from "../src/editor.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("posts the layout and options to /v1/feedback", async () => {
    const calls: Array<{ url: string; init?: RequestInit }> = [];
    const client = new ApiClient("http://api", async (url, init) => {
      calls.push({ url, init });
      return jsonResponse({ seed: 3 });
    });
    await client.feedback(emptyDocument(), { seed: 3, k_similar: 8 });
    expect(calls[0].url).toBe("http://api/v1/feedback");
    const body = JSON.parse(String(calls[0].init?.body));
    expect(body.layout.canvas).toEqual({ width: 360, height: 640 });
    expect(body.options.seed).toBe(3);
  });

  it("requests templates scaled to the studio canvas", async () => {
    let seen = "";
    const client = new ApiClient("http://api", async (url) => {
      seen = url;
      return jsonResponse(emptyDocument());
    });
    await client.fetchTemplate("tpl01", 360, 640);
    expect(seen).toBe("http://api/v1/corpus/tpl01/layout?canvas_w=360&canvas_h=640");
  });

  it("raises ApiError with the service's error code", async () => {
    const client = new ApiClient("http://api", async () =>
      jsonResponse({ error: { code: "unknown_entry", message: "no corpus entry" } }, 404),
    );
    await expect(client.fetchTemplate("nope", 1, 1)).rejects.toMatchObject({
      status: 404,
      code: "unknown_entry",
    });
    await expect(client.fetchTemplate("nope", 1, 1)).rejects.toBeInstanceOf(ApiError);
  });

  it("builds thumbnail urls", () => {
    const client = new ApiClient("http://api");
    expect(client.thumbnailUrl("t 1")).toBe("http://api/v1/corpus/t%201/thumbnail.png");
  });
});
