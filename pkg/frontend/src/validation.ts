// Client-side validation mirroring the server's summary invariants, so bad
// rows never produce a request.

import { ScenarioCode, SummaryInput, TESTABLE_SCENARIOS } from "./types.js";

export type NumericField = "a" | "q1" | "m" | "q3" | "b" | "mean" | "sd";

export const REQUIRED_FIELDS: Record<ScenarioCode, readonly NumericField[]> = {
  s1: ["a", "m", "b"],
  s2: ["q1", "m", "q3"],
  s3: ["a", "q1", "m", "q3", "b"],
  mean_sd: ["mean", "sd"],
  mean_range: ["mean", "a", "b"],
};

const ORDER_CHAIN: readonly NumericField[] = ["a", "q1", "m", "q3", "b"];

export type FieldErrors = Partial<Record<NumericField | "n" | "scenario", string>>;

export function validateSummary(input: SummaryInput): FieldErrors {
  const errors: FieldErrors = {};
  const required = REQUIRED_FIELDS[input.scenario];
  if (!required) {
    errors.scenario = `unknown scenario ${String(input.scenario)}`;
    return errors;
  }
  if (!Number.isInteger(input.n) || input.n < 1) {
    errors.n = "n must be a positive integer";
  } else if (TESTABLE_SCENARIOS.has(input.scenario) && input.n < 5) {
    errors.n = "skewness tests need n >= 5";
  }
  for (const field of required) {
    const value = input[field];
    if (value === null || value === undefined || value === ("" as unknown)) {
      errors[field] = "required";
    } else if (typeof value !== "number" || !Number.isFinite(value)) {
      errors[field] = "must be a finite number";
    }
  }
  const present = ORDER_CHAIN.filter(
    (f) => typeof input[f] === "number" && Number.isFinite(input[f] as number),
  );
  for (let i = 1; i < present.length; i += 1) {
    const lo = present[i - 1]!;
    const hi = present[i]!;
    if ((input[lo] as number) > (input[hi] as number) && !errors[hi]) {
      errors[hi] = `ordering violated: ${String(lo)} > ${String(hi)}`;
    }
  }
  if (input.scenario === "mean_sd" && typeof input.sd === "number" && input.sd <= 0) {
    errors.sd = "sd must be positive";
  }
  return errors;
}

export function isValid(errors: FieldErrors): boolean {
  return Object.keys(errors).length === 0;
}

/** Strip fields the scenario does not use; keeps payloads canonical. */
export function canonicalSummary(input: SummaryInput): SummaryInput {
  const out: SummaryInput = { scenario: input.scenario, n: input.n };
  for (const field of REQUIRED_FIELDS[input.scenario]) {
    out[field] = input[field] as number;
  }
  return out;
}
