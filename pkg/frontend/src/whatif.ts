// What-if exploration: re-submit the base answers with one field changed
// and show both service verdicts side by side. The client never predicts
// the direction of change; both labels come from the service.

import type { ApiClient, AssessResponse } from "./api.js";

export interface WhatIfResult {
  base: AssessResponse;
  variant: AssessResponse;
  changedField: string | null;
  answers: Record<string, number>;
}

export function withChangedField(
  answers: Record<string, number>,
  field: string | null,
  value?: number,
): Record<string, number> {
  if (field === null) return { ...answers };
  if (!(field in answers)) {
    throw new Error(`cannot change unknown field ${field}`);
  }
  const out = { ...answers };
  out[field] = value !== undefined ? value : out[field] === 0 ? 1 : 0;
  return out;
}

export async function runWhatIf(
  client: ApiClient,
  task: string,
  baseAnswers: Record<string, number>,
  changedField: string | null,
  value?: number,
): Promise<WhatIfResult> {
  const variantAnswers = withChangedField(baseAnswers, changedField, value);
  const base = await client.assess(task, baseAnswers);
  const variant = await client.assess(task, variantAnswers);
  return { base, variant, changedField, answers: variantAnswers };
}

// Queued what-ifs resolve strictly in submission order, regardless of
// how long each request takes, so the panels never render shuffled.
export class WhatIfQueue {
  private tail: Promise<unknown> = Promise.resolve();
  readonly results: WhatIfResult[] = [];

  push(
    client: ApiClient,
    task: string,
    baseAnswers: Record<string, number>,
    changedField: string | null,
    value?: number,
  ): Promise<WhatIfResult> {
    const next = this.tail.then(async () => {
      const result = await runWhatIf(client, task, baseAnswers, changedField, value);
      this.results.push(result);
      return result;
    });
    this.tail = next.catch(() => undefined);
    return next;
  }
}
