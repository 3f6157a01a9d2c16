// HTML renderers. Pure string producers so the contract tests can assert
// on output without a DOM; main.ts attaches them to the page.

import type {
  AssessResponse,
  FacilitiesResponse,
  RankingResponse,
  SchemaField,
} from "./api.js";
import type { FieldError } from "./validate.js";

export function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function renderField(field: SchemaField, value: number, error?: string): string {
  const input =
    field.kind === "toggle"
      ? `<input type="checkbox" name="${esc(field.name)}" ${value >= 1 ? "checked" : ""}>`
      : `<input type="number" name="${esc(field.name)}" value="${value}" ` +
        `min="${field.min}" max="${field.max}" step="any">`;
  const err = error ? `<span class="field-error">${esc(error)}</span>` : "";
  return (
    `<label class="field ${error ? "invalid" : ""}" data-field="${esc(field.name)}">` +
    `<span class="field-label">${esc(field.label)}</span>${input}${err}</label>`
  );
}

export function renderForm(
  fields: SchemaField[],
  values: Record<string, number>,
  errors: FieldError[] = [],
): string {
  const byField = new Map(errors.map((e) => [e.field, e.message]));
  const rows = fields
    .map((f) => renderField(f, values[f.name] ?? 0, byField.get(f.name)))
    .join("\n");
  return `<form class="assessment">${rows}\n<button type="submit">Assess</button></form>`;
}

// The verdict text is inserted verbatim (escaped, never rewritten): the
// label, confidence kind, and disclaimer all come straight from the
// service response.
export function renderVerdict(resp: AssessResponse): string {
  return (
    `<section class="verdict verdict-${esc(resp.label)}">` +
    `<p class="verdict-label">${esc(resp.label)}</p>` +
    `<p class="verdict-confidence">${esc(resp.confidence.kind)}: ` +
    `${resp.confidence.value}</p>` +
    `<p class="verdict-model">${esc(resp.model_id)}</p>` +
    `<p class="verdict-disclaimer">${esc(resp.disclaimer)}</p>` +
    `</section>`
  );
}

export function renderWhatIfPair(
  base: AssessResponse,
  variant: AssessResponse,
  changedField: string | null,
): string {
  const note = changedField
    ? `<p class="whatif-changed">changed: <mark>${esc(changedField)}</mark></p>`
    : `<p class="whatif-changed">no field changed</p>`;
  return (
    `<div class="whatif">${note}` +
    `<div class="whatif-base">${renderVerdict(base)}</div>` +
    `<div class="whatif-variant">${renderVerdict(variant)}</div>` +
    `</div>`
  );
}

export function formatDistanceKm(km: number): string {
  return `${km.toFixed(1)} km`;
}

export function renderFacilities(resp: FacilitiesResponse): string {
  if (resp.results.length === 0) {
    return `<p class="empty">No facilities found.</p>`;
  }
  const source = resp.geocode
    ? `<p class="geocode-note">located via ${esc(resp.geocode.source)}` +
      `${resp.geocode.fallback_used ? " (remote lookup failed, used offline fallback)" : ""}</p>`
    : "";
  const rows = resp.results
    .map(
      (f) =>
        `<tr><td>${esc(f.name)}</td><td>${esc(f.kind)}</td>` +
        `<td>${esc(f.district)}</td><td>${formatDistanceKm(f.distance_km)}</td></tr>`,
    )
    .join("\n");
  return (
    `${source}<table class="facilities">` +
    `<thead><tr><th>Name</th><th>Kind</th><th>District</th><th>Distance</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export type SortKey = "rank" | "district" | "value_pct";

export function sortRanking(
  rows: RankingResponse["ranking"],
  key: SortKey,
  ascending: boolean,
): RankingResponse["ranking"] {
  const sorted = [...rows].sort((a, b) => {
    const av = a[key];
    const bv = b[key];
    if (av === bv) return a.district.localeCompare(b.district);
    return av < bv ? -1 : 1;
  });
  return ascending ? sorted : sorted.reverse();
}

export function renderRanking(
  resp: RankingResponse,
  key: SortKey = "rank",
  ascending = true,
): string {
  const means = Object.entries(resp.statewide_means)
    .map(([k, v]) => `${esc(k.replace("_pct", ""))} ${v.toFixed(1)}%`)
    .join(", ");
  const rows = sortRanking(resp.ranking, key, ascending)
    .map(
      (r) =>
        `<tr><td>${r.rank}</td><td>${esc(r.district)}</td>` +
        `<td>${r.value_pct.toFixed(1)}%</td></tr>`,
    )
    .join("\n");
  return (
    `<p class="statewide">statewide means: ${means}</p>` +
    `<table class="ranking" data-indicator="${esc(resp.indicator)}">` +
    `<thead><tr><th data-sort="rank">#</th><th data-sort="district">District</th>` +
    `<th data-sort="value_pct">Screened</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderFieldErrors(errors: FieldError[]): string {
  if (errors.length === 0) return "";
  const items = errors
    .map((e) => `<li data-field="${esc(e.field)}">${esc(e.field)}: ${esc(e.message)}</li>`)
    .join("");
  return `<ul class="errors">${items}</ul>`;
}
