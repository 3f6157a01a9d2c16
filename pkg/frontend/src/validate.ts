// Client-side validation mirroring the service's rules exactly:
// every schema field must be present, nothing extra, and each value must
// lie inside the field's [min, max]. The contract tests replay recorded
// service traffic through this function to keep the two in lockstep.

import type { SchemaField, TaskSchema } from "./api.js";

export interface FieldError {
  field: string;
  message: string;
}

export function validateAnswers(
  schema: TaskSchema,
  answers: Record<string, number>,
): FieldError[] {
  const errors: FieldError[] = [];
  const known = new Map(schema.fields.map((f) => [f.name, f]));

  for (const field of schema.fields) {
    if (!(field.name in answers)) {
      errors.push({ field: field.name, message: "required" });
    }
  }
  for (const name of Object.keys(answers)) {
    if (!known.has(name)) {
      errors.push({ field: name, message: "unknown field" });
    }
  }
  for (const [name, value] of Object.entries(answers)) {
    const field = known.get(name);
    if (!field) continue;
    if (!Number.isFinite(value)) {
      errors.push({ field: name, message: "must be a number" });
    } else if (value < field.min || value > field.max) {
      errors.push({
        field: name,
        message: `must be between ${field.min} and ${field.max}`,
      });
    }
  }
  return errors;
}

// Shape check used by the schema-drift contract test: anything the form
// renderer relies on must hold for the live schema.
export function checkSchemaShape(schema: TaskSchema): string[] {
  const problems: string[] = [];
  if (!schema.task) problems.push("schema.task is empty");
  if (!schema.model_id) problems.push("schema.model_id is empty");
  if (!Array.isArray(schema.fields) || schema.fields.length === 0) {
    problems.push("schema.fields is empty");
    return problems;
  }
  const seen = new Set<string>();
  for (const f of schema.fields) {
    if (!f.name) problems.push("field with empty name");
    if (seen.has(f.name)) problems.push(`duplicate field ${f.name}`);
    seen.add(f.name);
    if (f.kind !== "number" && f.kind !== "toggle") {
      problems.push(`field ${f.name}: unknown kind ${String(f.kind)}`);
    }
    if (typeof f.min !== "number" || typeof f.max !== "number" || f.min > f.max) {
      problems.push(`field ${f.name}: bad range [${f.min}, ${f.max}]`);
    }
    if (f.kind === "toggle" && (f.min < 0 || f.max > 1)) {
      problems.push(`field ${f.name}: toggle outside {0, 1}`);
    }
  }
  return problems;
}

export function defaultValue(field: SchemaField): number {
  return field.kind === "toggle" ? 0 : field.min;
}
