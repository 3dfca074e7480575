// @vitest-environment jsdom
//
// Scripted end-to-end session against the real HTTP service: load the
// bundled dataset, accept the default verdicts, then force the two rejected
// studies back in. Displayed numbers must equal the API payload byte for
// byte, and every verdict badge must match the API verdict.

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppHandle, initApp } from "../src/main.js";

const PORT = 8923;
const BASE = `http://127.0.0.1:${PORT}`;
const START_TIMEOUT_MS = 30_000;

let server: ChildProcess | null = null;
let app: AppHandle;

async function waitForHealth(): Promise<void> {
  const deadline = Date.now() + START_TIMEOUT_MS;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("API server did not come up");
}

function text(selector: string): string {
  const node = app.root.querySelector(selector);
  if (!node) throw new Error(`missing node: ${selector}`);
  return node.textContent ?? "";
}

async function waitFor(cond: () => boolean, what: string, ms = 10_000): Promise<void> {
  const deadline = Date.now() + ms;
  while (Date.now() < deadline) {
    if (cond()) return;
    await new Promise((r) => setTimeout(r, 50));
  }
  throw new Error(`timed out waiting for ${what}`);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "uvicorn", "skewsum.server:app", "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForHealth();
  const client = new ApiClient(BASE);
  const root = document.createElement("div");
  document.body.append(root);
  app = initApp(root, { client, storage: null });
}, START_TIMEOUT_MS + 5_000);

afterAll(() => {
  server?.kill();
});

async function rawMeta(forceInclude: string[]): Promise<{
  raw: string;
  fixed: { pooled_md: string; ci_low: string; ci_high: string };
  random: { pooled_md: string; ci_low: string; ci_high: string };
}> {
  const { studies } = app.session.metaArgs();
  const response = await fetch(`${BASE}/api/meta`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({
      studies, alpha: 0.05, source: "approx", force_include: forceInclude,
    }),
  });
  const raw = await response.text();
  const capture = (model: string) => {
    const match = raw.match(new RegExp(
      `"model":"${model}","pooled_md":(-?[^,]+),"ci_low":(-?[^,]+),"ci_high":(-?[^,]+),`,
    ));
    if (!match) throw new Error(`model ${model} not in response`);
    return { pooled_md: match[1]!, ci_low: match[2]!, ci_high: match[3]! };
  };
  return { raw, fixed: capture("fixed"), random: capture("random") };
}

describe("end-to-end fixture", () => {
  it("loads the example dataset with default verdicts", async () => {
    await app.loadExample();
    expect(app.session.studies.length).toBe(6);
    const excluded = app.session.studies.filter((s) => !s.included).map((s) => s.payload.id);
    expect(excluded).toEqual(["davies-1985", "grange-1985"]);
    expect(app.root.querySelectorAll("#studies tbody tr").length).toBe(6);
  }, 60_000);

  it("shows verdict badges identical to the API verdicts", async () => {
    const client = new ApiClient(BASE);
    let checked = 0;
    for (const study of app.session.studies) {
      for (const arm of ["cases", "controls"] as const) {
        const summary = study.payload[arm];
        const badge = text(`[data-verdict-for="${study.payload.id}.${arm}"]`);
        if (study[arm].test === null) {
          expect(badge).toBe("No test");
          continue;
        }
        const direct = await client.testSummary(summary, 0.05, "approx");
        expect(badge).toBe(direct.verdict);
        checked += 1;
      }
    }
    expect(checked).toBe(6); // three s1 studies, two arms each
  }, 60_000);

  it("displays the four-study pooled values byte for byte", async () => {
    const expected = await rawMeta([]);
    for (const model of ["fixed", "random"] as const) {
      expect(text(`tr[data-pooled-row="${model}"] td[data-field="pooled_md"]`))
        .toBe(expected[model].pooled_md);
      expect(text(`tr[data-pooled-row="${model}"] td[data-field="ci_low"]`))
        .toBe(expected[model].ci_low);
      expect(text(`tr[data-pooled-row="${model}"] td[data-field="ci_high"]`))
        .toBe(expected[model].ci_high);
    }
    expect(app.root.querySelector("#plot svg")?.getAttribute("data-rows")).toBe("6");
  }, 60_000);

  it("force-including the rejected studies reproduces the six-study run", async () => {
    const fourStudyFixed = Number(
      text('tr[data-pooled-row="fixed"] td[data-field="pooled_md"]'));

    await app.setIncluded("davies-1985", true);
    await app.setIncluded("grange-1985", true);
    expect(app.session.metaArgs().forceInclude).toEqual(["davies-1985", "grange-1985"]);

    const expected = await rawMeta(["davies-1985", "grange-1985"]);
    for (const model of ["fixed", "random"] as const) {
      expect(text(`tr[data-pooled-row="${model}"] td[data-field="pooled_md"]`))
        .toBe(expected[model].pooled_md);
    }
    // six-study comparison: the pooled effect attenuates toward zero
    const sixStudyFixed = Number(
      text('tr[data-pooled-row="fixed"] td[data-field="pooled_md"]'));
    expect(Math.abs(sixStudyFixed)).toBeLessThan(Math.abs(fourStudyFixed));
    // override rows are visually flagged
    expect(app.root.querySelectorAll('[data-flag="override"]').length).toBe(2);
    expect(app.root.querySelector("#plot svg")?.getAttribute("data-rows")).toBe("8");
  }, 60_000);

  it("toggling a study off and back on restores the identical view", async () => {
    const before = app.root.querySelector("#plot")!.innerHTML;
    const pooledBefore = text('tr[data-pooled-row="random"] td[data-field="pooled_md"]');

    const checkbox = app.root.querySelector<HTMLInputElement>(
      'input[data-toggle="chan-1994"]')!;
    checkbox.checked = false;
    checkbox.dispatchEvent(new Event("change"));
    await waitFor(
      () => text('tr[data-pooled-row="random"] td[data-field="pooled_md"]') !== pooledBefore,
      "pooled value to change after exclusion",
    );

    checkbox.checked = true;
    checkbox.dispatchEvent(new Event("change"));
    await waitFor(
      () => app.root.querySelector("#plot")!.innerHTML === before,
      "plot to return to the original rendering",
    );
    expect(text('tr[data-pooled-row="random"] td[data-field="pooled_md"]'))
      .toBe(pooledBefore);
  }, 60_000);

  it("re-tests every arm when the critical-value source changes", async () => {
    const select = app.root.querySelector<HTMLSelectElement>("#source")!;
    select.value = "table";
    await app.reassessAll();
    for (const study of app.session.studies) {
      for (const arm of ["cases", "controls"] as const) {
        const test = study[arm].test;
        if (test) expect(test.source).toBe("table");
      }
    }
    // pooled display still mirrors the API under the new source
    const { studies, forceInclude } = app.session.metaArgs();
    const response = await fetch(`${BASE}/api/meta`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ studies, alpha: 0.05, source: "table",
        force_include: forceInclude }),
    });
    const raw = await response.text();
    const match = raw.match(/"model":"fixed","pooled_md":(-?[^,]+),/);
    expect(text('tr[data-pooled-row="fixed"] td[data-field="pooled_md"]'))
      .toBe(match![1]);
    select.value = "approx";
    await app.reassessAll();
  }, 60_000);

  it("remove button drops a study and repools", async () => {
    const payload = {
      id: "throwaway",
      label: "Throwaway",
      cases: { scenario: "mean_sd" as const, mean: 10, sd: 2, n: 30 },
      controls: { scenario: "mean_sd" as const, mean: 12, sd: 2, n: 30 },
    };
    await app.addStudy(payload);
    expect(app.session.hasStudy("throwaway")).toBe(true);
    const pooledWith = text('tr[data-pooled-row="fixed"] td[data-field="pooled_md"]');
    const button = app.root.querySelector<HTMLButtonElement>(
      'button[data-remove="throwaway"]')!;
    button.click();
    await waitFor(
      () => !app.session.hasStudy("throwaway"),
      "study removal",
    );
    await waitFor(
      () => text('tr[data-pooled-row="fixed"] td[data-field="pooled_md"]') !== pooledWith,
      "pooled value to revert",
    );
  }, 60_000);

  it("rejects invalid form input before any request is sent", async () => {
    const form = app.root;
    form.querySelector<HTMLInputElement>("#study-id")!.value = "manual-1";
    form.querySelector<HTMLSelectElement>("#scenario")!.value = "s2";
    const set = (arm: string, field: string, value: string) => {
      form.querySelector<HTMLInputElement>(
        `input[data-arm="${arm}"][data-field="${field}"]`)!.value = value;
    };
    set("cases", "q1", "3");
    set("cases", "m", "2");  // ordering violation: q1 > m
    set("cases", "q3", "4");
    set("cases", "n", "21");
    set("controls", "q1", "1");
    set("controls", "m", "2");
    set("controls", "q3", "3");
    set("controls", "n", "21");
    const ok = await app.submitForm();
    expect(ok).toBe(false);
    expect(text('[data-error-for="cases.m"]')).toContain("ordering");
    expect(app.session.hasStudy("manual-1")).toBe(false);
  }, 60_000);
});
