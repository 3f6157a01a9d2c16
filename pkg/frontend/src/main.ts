// Page wiring. All logic lives in the imported modules; this file only
// moves values between the DOM and the API client.

import { ApiClient, ServiceError, type TaskSchema } from "./api.js";
import {
  renderFacilities,
  renderFieldErrors,
  renderForm,
  renderRanking,
  renderVerdict,
  renderWhatIfPair,
  type SortKey,
} from "./render.js";
import { defaultValue, validateAnswers } from "./validate.js";
import { WhatIfQueue } from "./whatif.js";

const client = new ApiClient("");
const whatIfQueue = new WhatIfQueue();

interface AssessState {
  task: string;
  schema: TaskSchema | null;
  values: Record<string, number>;
  lastAnswers: Record<string, number> | null;
}

const state: AssessState = { task: "cervical", schema: null, values: {}, lastAnswers: null };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function readFormValues(form: HTMLFormElement, schema: TaskSchema): Record<string, number> {
  const answers: Record<string, number> = {};
  for (const field of schema.fields) {
    const input = form.querySelector<HTMLInputElement>(`[name="${CSS.escape(field.name)}"]`);
    if (!input) continue;
    answers[field.name] = field.kind === "toggle" ? (input.checked ? 1 : 0) : Number(input.value);
  }
  return answers;
}

async function loadSchema(): Promise<void> {
  const panel = el<HTMLDivElement>("form-panel");
  try {
    state.schema = await client.fetchSchema(state.task);
    state.values = {};
    for (const f of state.schema.fields) state.values[f.name] = defaultValue(f);
    panel.innerHTML = renderForm(state.schema.fields, state.values);
    panel.querySelector("form")?.addEventListener("submit", onSubmit);
  } catch (err) {
    panel.innerHTML =
      `<p class="banner error">Could not load the form schema. ` +
      `<button id="schema-retry">Retry</button></p>`;
    el<HTMLButtonElement>("schema-retry").addEventListener("click", () => void loadSchema());
    console.error(err);
  }
}

async function onSubmit(event: Event): Promise<void> {
  event.preventDefault();
  if (!state.schema) return;
  const form = event.currentTarget as HTMLFormElement;
  const answers = readFormValues(form, state.schema);
  state.values = answers;

  // Client-side validation mirrors the service; invalid forms never
  // produce a request.
  const errors = validateAnswers(state.schema, answers);
  const errorBox = el<HTMLDivElement>("form-errors");
  if (errors.length > 0) {
    errorBox.innerHTML = renderFieldErrors(errors);
    el<HTMLDivElement>("form-panel").innerHTML = renderForm(
      state.schema.fields, answers, errors,
    );
    el<HTMLDivElement>("form-panel").querySelector("form")
      ?.addEventListener("submit", onSubmit);
    return;
  }
  errorBox.innerHTML = "";

  try {
    const verdict = await client.assess(state.task, answers);
    state.lastAnswers = answers;
    el<HTMLDivElement>("verdict-panel").innerHTML = renderVerdict(verdict);
    el<HTMLDivElement>("whatif-controls").hidden = false;
    populateWhatIfSelect();
  } catch (err) {
    if (err instanceof ServiceError) {
      errorBox.innerHTML = renderFieldErrors(
        err.fields.map((f) => ({ field: f, message: err.message })),
      );
    } else {
      // Network failure: keep the form state, offer a retry.
      errorBox.innerHTML =
        `<p class="banner error">Service unreachable; your answers are kept. ` +
        `<button id="assess-retry">Retry</button></p>`;
      el<HTMLButtonElement>("assess-retry").addEventListener("click", () => {
        form.requestSubmit();
      });
    }
  }
}

function populateWhatIfSelect(): void {
  if (!state.schema) return;
  const select = el<HTMLSelectElement>("whatif-field");
  select.innerHTML =
    `<option value="">(no change)</option>` +
    state.schema.fields
      .map((f) => `<option value="${f.name}">${f.label}</option>`)
      .join("");
}

async function onWhatIf(): Promise<void> {
  if (!state.lastAnswers) return;
  const select = el<HTMLSelectElement>("whatif-field");
  const changed = select.value === "" ? null : select.value;
  const result = await whatIfQueue.push(client, state.task, state.lastAnswers, changed);
  const panel = el<HTMLDivElement>("whatif-panel");
  panel.innerHTML = whatIfQueue.results
    .map((r) => renderWhatIfPair(r.base, r.variant, r.changedField))
    .join("\n");
  void result;
}

async function onFindFacilities(): Promise<void> {
  const address = el<HTMLInputElement>("facility-address").value.trim();
  const k = Number(el<HTMLSelectElement>("facility-k").value);
  const panel = el<HTMLDivElement>("facility-panel");
  const run = async (params: Parameters<typeof client.facilitiesNear>[0]) => {
    try {
      panel.innerHTML = renderFacilities(await client.facilitiesNear(params));
    } catch (err) {
      if (err instanceof ServiceError && err.status === 404) {
        panel.innerHTML =
          `<p class="banner error">Address not found; try a district or town name.</p>`;
      } else {
        panel.innerHTML =
          `<p class="banner error">Lookup failed (${String(err)}); try again.</p>`;
      }
    }
  };
  if (address) {
    await run({ address, k });
  } else if (navigator.geolocation) {
    navigator.geolocation.getCurrentPosition(
      (pos) => void run({ lat: pos.coords.latitude, lon: pos.coords.longitude, k }),
      () => {
        panel.innerHTML =
          `<p class="banner">Location unavailable; enter an address instead.</p>`;
      },
    );
  } else {
    panel.innerHTML = `<p class="banner">Enter an address to search.</p>`;
  }
}

let rankingSort: { key: SortKey; ascending: boolean } = { key: "rank", ascending: true };

async function loadRanking(): Promise<void> {
  const indicator = el<HTMLSelectElement>("ranking-indicator").value;
  const panel = el<HTMLDivElement>("ranking-panel");
  try {
    const resp = await client.districtRanking(indicator);
    const draw = () => {
      panel.innerHTML = renderRanking(resp, rankingSort.key, rankingSort.ascending);
      panel.querySelectorAll<HTMLElement>("th[data-sort]").forEach((th) => {
        th.addEventListener("click", () => {
          const key = th.dataset.sort as SortKey;
          rankingSort = {
            key,
            ascending: rankingSort.key === key ? !rankingSort.ascending : true,
          };
          draw();
        });
      });
    };
    draw();
  } catch (err) {
    panel.innerHTML = `<p class="banner error">Could not load rankings (${String(err)}).</p>`;
  }
}

export function boot(): void {
  el<HTMLSelectElement>("task-select").addEventListener("change", (e) => {
    state.task = (e.target as HTMLSelectElement).value;
    state.lastAnswers = null;
    el<HTMLDivElement>("verdict-panel").innerHTML = "";
    el<HTMLDivElement>("whatif-controls").hidden = true;
    void loadSchema();
  });
  el<HTMLButtonElement>("whatif-run").addEventListener("click", () => void onWhatIf());
  el<HTMLButtonElement>("facility-search").addEventListener("click", () => void onFindFacilities());
  el<HTMLSelectElement>("facility-k").addEventListener("change", () => void onFindFacilities());
  el<HTMLSelectElement>("ranking-indicator").addEventListener("change", () => void loadRanking());
  void loadSchema();
  void loadRanking();
}

if (typeof document !== "undefined" && document.getElementById("task-select")) {
  boot();
}
