/** Shared test plumbing: recorded service fixtures and a fetch stub. */

import { readFileSync } from "node:fs";
import { resolve } from "node:path";

export interface Recorded {
  status: number;
  body: unknown;
}

export function fixture(name: string): Recorded {
  const path = resolve(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf-8")) as Recorded;
}

function respond(recorded: Recorded, asText = false): Response {
  const payload = asText
    ? JSON.stringify(recorded.body, null, 2)
    : JSON.stringify(recorded.body);
  return new Response(payload, {
    status: recorded.status,
    headers: { "content-type": asText ? "text/plain" : "application/json" },
  });
}

/** Replays the recorded service over the documented endpoints. */
export function fixtureFetch(
  options: { delayFirstSearchMs?: number } = {},
): typeof fetch {
  let firstSearch = true;
  return async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const signal = init?.signal ?? null;
    if (url.endsWith("/corpora")) {
      return respond(fixture("corpora.json"));
    }
    if (url.includes("/graphs/")) {
      return respond(fixture("graph_interchange.json"), true);
    }
    if (url.includes("/search")) {
      const body = JSON.parse(String(init?.body ?? "{}")) as {
        request?: string;
      };
      const request = body.request ?? "";
      if (firstSearch && options.delayFirstSearchMs) {
        firstSearch = false;
        await new Promise((resolve, reject) => {
          const timer = setTimeout(resolve, options.delayFirstSearchMs);
          signal?.addEventListener("abort", () => {
            clearTimeout(timer);
            reject(new DOMException("aborted", "AbortError"));
          });
        });
      }
      firstSearch = false;
      if (request.includes('"make-05"')) {
        return respond(fixture("search_cluster_refined.json"));
      }
      if (request.includes("make-.*")) {
        return respond(fixture("search_cluster.json"));
      }
      if (request.includes('"zz"')) {
        return respond(fixture("search_zero.json"));
      }
      if (request.includes("concept = ]")) {
        return respond(fixture("search_syntax_error.json"));
      }
      if (request.includes("say-01")) {
        return respond(fixture("search_say.json"));
      }
      return respond(fixture("search_zero.json"));
    }
    throw new TypeError(`no fixture route for ${url}`);
  };
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 2000,
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error("waitFor timed out");
    }
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}
