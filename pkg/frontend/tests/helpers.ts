import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8")) as T;
}

export interface StubCall {
  url: string;
  init?: RequestInit;
  body: unknown;
}

export type StubHandler = (call: StubCall) => {
  status?: number;
  body: unknown;
  delayMs?: number;
};

// fetch stand-in: routes each request through the handler, optionally
// delaying the response to simulate slow networks.
export function stubFetch(handler: StubHandler): { fetchFn: FetchLike; calls: StubCall[] } {
  const calls: StubCall[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    const call: StubCall = {
      url,
      init,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    };
    calls.push(call);
    const result = handler(call);
    if (result.delayMs) {
      await new Promise((resolve) => setTimeout(resolve, result.delayMs));
    }
    return new Response(JSON.stringify(result.body), {
      status: result.status ?? 200,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}
