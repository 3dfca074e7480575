import { describe, expect, it } from "vitest";

import { Session, SessionStudy, StorageLike } from "../src/session.js";
import { EstimateResult, StudyPayload, TestResult } from "../src/types.js";

class MemoryStorage implements StorageLike {
  private data = new Map<string, string>();
  getItem(key: string): string | null {
    return this.data.get(key) ?? null;
  }
  setItem(key: string, value: string): void {
    this.data.set(key, value);
  }
  removeItem(key: string): void {
    this.data.delete(key);
  }
}

function fakeTest(reject: boolean): TestResult {
  return {
    scenario: "s1", statistic: 0.5, critical_value: 0.3, critical: 0.3,
    alpha: 0.05, source: "approx", reject, verdict: reject ? "Reject" : "Not reject",
    theta1_hat: 1, theta2_hat: null,
  };
}

function fakeEstimate(): EstimateResult {
  return { scenario: "s1", n: 40, mean: 10, sd: 2, mean_method: "x", sd_method: "y" };
}

function study(id: string, rejected: boolean): SessionStudy {
  const payload: StudyPayload = {
    id, label: id,
    cases: { scenario: "s1", a: 0, m: 1, b: 2, n: 40 },
    controls: { scenario: "s1", a: 0, m: 1, b: 2, n: 40 },
  };
  return {
    payload,
    cases: { test: fakeTest(rejected), estimate: fakeEstimate() },
    controls: { test: fakeTest(false), estimate: fakeEstimate() },
    defaultExcluded: rejected,
    included: !rejected,
  };
}

describe("Session", () => {
  it("defaults rejected studies to excluded", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("a", true));
    session.addStudy(study("b", false));
    const args = session.metaArgs();
    expect(args.studies.map((s) => s.id)).toEqual(["b"]);
    expect(args.forceInclude).toEqual([]);
  });

  it("flags re-included rejected studies as overrides", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("a", true));
    session.setIncluded("a", true);
    expect(session.isOverride(session.studies[0]!)).toBe(true);
    expect(session.metaArgs().forceInclude).toEqual(["a"]);
  });

  it("never flags ordinary included studies", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("b", false));
    expect(session.isOverride(session.studies[0]!)).toBe(false);
  });

  it("toggle flips inclusion", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("b", false));
    session.toggle("b");
    expect(session.metaArgs().studies).toEqual([]);
    session.toggle("b");
    expect(session.metaArgs().studies.length).toBe(1);
  });

  it("persists across reloads", () => {
    const storage = new MemoryStorage();
    const first = new Session(storage);
    first.alpha = 0.05;
    first.source = "table";
    first.addStudy(study("a", true));
    first.setIncluded("a", true);

    const second = new Session(storage);
    expect(second.source).toBe("table");
    expect(second.studies.length).toBe(1);
    expect(second.metaArgs().forceInclude).toEqual(["a"]);
  });

  it("rejects duplicate ids", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("a", false));
    expect(() => session.addStudy(study("a", false))).toThrow(/already/);
  });

  it("survives corrupted persisted state", () => {
    const storage = new MemoryStorage();
    storage.setItem("skewsum-session", "{nonsense");
    const session = new Session(storage);
    expect(session.studies).toEqual([]);
  });

  it("removeStudy drops the study and persists", () => {
    const storage = new MemoryStorage();
    const session = new Session(storage);
    session.addStudy(study("a", false));
    session.removeStudy("a");
    expect(new Session(storage).studies).toEqual([]);
  });

  it("reassess resets untouched studies to the new verdict default", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("a", false));
    expect(session.studies[0]!.included).toBe(true);
    // tighter level: the study now rejects
    session.reassess("a", { test: fakeTest(true), estimate: fakeEstimate() },
      { test: fakeTest(false), estimate: fakeEstimate() }, true);
    expect(session.studies[0]!.included).toBe(false);
    expect(session.studies[0]!.defaultExcluded).toBe(true);
  });

  it("reassess preserves choices the user made by hand", () => {
    const session = new Session(new MemoryStorage());
    session.addStudy(study("a", true));
    session.setIncluded("a", true); // explicit override
    session.reassess("a", { test: fakeTest(true), estimate: fakeEstimate() },
      { test: fakeTest(false), estimate: fakeEstimate() }, true);
    expect(session.studies[0]!.included).toBe(true);
    expect(session.isOverride(session.studies[0]!)).toBe(true);
  });
});
