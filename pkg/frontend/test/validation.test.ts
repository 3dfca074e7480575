import { describe, expect, it } from "vitest";

import { SummaryInput } from "../src/types.js";
import { canonicalSummary, isValid, validateSummary } from "../src/validation.js";

function s1(a: number, m: number, b: number, n: number): SummaryInput {
  return { scenario: "s1", a, m, b, n };
}

describe("validateSummary", () => {
  it("accepts a complete ordered s1 summary", () => {
    expect(validateSummary(s1(2.25, 16, 74.25, 40))).toEqual({});
  });

  it("requires the scenario's fields", () => {
    const errors = validateSummary({ scenario: "s1", m: 1, n: 10 });
    expect(errors.a).toBe("required");
    expect(errors.b).toBe("required");
  });

  it("flags ordering violations on the present chain", () => {
    const errors = validateSummary({ scenario: "s2", q1: 3, m: 2, q3: 4, n: 21 });
    expect(errors.m).toContain("ordering");
  });

  it("flags q1 above m for the full summary", () => {
    const errors = validateSummary({
      scenario: "s3", a: 0, q1: 2, m: 1, q3: 3, b: 4, n: 21,
    });
    expect(isValid(errors)).toBe(false);
  });

  it("needs n of at least five for testable scenarios", () => {
    expect(validateSummary(s1(0, 1, 2, 4)).n).toContain("n >= 5");
    expect(validateSummary(s1(0, 1, 2, 5)).n).toBeUndefined();
  });

  it("allows small n for reported-moment rows", () => {
    const errors = validateSummary({ scenario: "mean_sd", mean: 3, sd: 1, n: 3 });
    expect(errors).toEqual({});
  });

  it("rejects non-positive reported sd", () => {
    const errors = validateSummary({ scenario: "mean_sd", mean: 3, sd: 0, n: 10 });
    expect(errors.sd).toContain("positive");
  });

  it("rejects non-finite numbers", () => {
    const errors = validateSummary(s1(Number.NaN, 1, 2, 10));
    expect(errors.a).toContain("finite");
  });

  it("requires integral n", () => {
    expect(validateSummary(s1(0, 1, 2, 10.5)).n).toContain("integer");
  });

  it("accepts equal adjacent quantiles", () => {
    expect(validateSummary({ scenario: "s3", a: 0, q1: 0, m: 1, q3: 2, b: 2, n: 9 }))
      .toEqual({});
  });
});

describe("canonicalSummary", () => {
  it("drops fields the scenario does not use", () => {
    const canon = canonicalSummary({
      scenario: "s1", a: 0, q1: 9, m: 1, q3: 9, b: 2, mean: 5, sd: 1, n: 11,
    });
    expect(canon).toEqual({ scenario: "s1", a: 0, m: 1, b: 2, n: 11 });
  });

  it("keeps mean and range for mean_range", () => {
    const canon = canonicalSummary({
      scenario: "mean_range", a: 2.5, b: 75, mean: 26.75, n: 35,
    });
    expect(canon).toEqual({ scenario: "mean_range", a: 2.5, b: 75, mean: 26.75, n: 35 });
  });
});
