// App wiring: entry form -> per-arm verdicts/estimates -> session list ->
// pooled forest view. Every displayed number is the API's value verbatim.

import { ApiClient, ApiRequestError } from "./api.js";
import { exactString, pct } from "./format.js";
import { renderForestSvg } from "./forest.js";
import { ArmAssessment, Session, SessionStudy, StorageLike } from "./session.js";
import {
  MetaResponse,
  ScenarioCode,
  StudyPayload,
  SummaryInput,
  TESTABLE_SCENARIOS,
} from "./types.js";
import { canonicalSummary, isValid, validateSummary } from "./validation.js";

export interface AppOptions {
  client: ApiClient;
  storage?: StorageLike | null;
}

export interface AppHandle {
  root: HTMLElement;
  client: ApiClient;
  session: Session;
  lastMeta: MetaResponse | null;
  addStudy(payload: StudyPayload): Promise<void>;
  loadExample(): Promise<void>;
  setIncluded(id: string, included: boolean): Promise<void>;
  removeStudy(id: string): Promise<void>;
  reassessAll(): Promise<void>;
  refresh(): Promise<void>;
  readForm(): StudyPayload;
  submitForm(): Promise<boolean>;
}

const ARM_FIELDS = ["a", "q1", "m", "q3", "b", "mean", "sd", "n"] as const;
const SCENARIOS: ScenarioCode[] = ["s1", "s2", "s3", "mean_sd", "mean_range"];

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  html = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (html) node.innerHTML = html;
  return node;
}

function armInputs(arm: "cases" | "controls"): string {
  const cells = ARM_FIELDS.map(
    (f) =>
      `<label class="field"><span>${f}</span>` +
      `<input type="number" step="any" data-arm="${arm}" data-field="${f}"` +
      `${f === "n" ? ' data-kind="int"' : ""}/>` +
      `<em class="field-error" data-error-for="${arm}.${f}"></em></label>`,
  );
  return `<fieldset class="arm"><legend>${arm}</legend>${cells.join("")}</fieldset>`;
}

function buildSkeleton(root: HTMLElement): void {
  root.innerHTML = `
  <section class="panel" id="entry">
    <h2>Add a study</h2>
    <div class="row">
      <label class="field"><span>study id</span><input id="study-id" type="text"/>
        <em class="field-error" data-error-for="study.id"></em></label>
      <label class="field"><span>label</span><input id="study-label" type="text"/></label>
      <label class="field"><span>scenario</span>
        <select id="scenario">${SCENARIOS.map((s) => `<option>${s}</option>`).join("")}</select>
      </label>
      <label class="field"><span>alpha</span><input id="alpha" type="number" step="any" value="0.05"/></label>
      <label class="field"><span>critical values</span>
        <select id="source"><option>approx</option><option>table</option>
        <option>asymptotic</option><option>mc</option></select>
      </label>
    </div>
    ${armInputs("cases")}
    ${armInputs("controls")}
    <div class="row">
      <button id="add-study" type="button">Add study</button>
      <button id="load-example" type="button">Load example dataset</button>
      <button id="clear-session" type="button">Clear session</button>
      <span id="entry-status" role="status"></span>
    </div>
  </section>
  <section class="panel" id="list">
    <h2>Studies</h2>
    <table id="studies">
      <thead><tr><th>include</th><th>study</th><th>cases</th><th>controls</th></tr></thead>
      <tbody></tbody>
    </table>
  </section>
  <section class="panel" id="forest">
    <h2>Pooled mean difference</h2>
    <table id="pooled">
      <thead><tr><th>model</th><th>pooled MD</th><th>CI low</th><th>CI high</th>
      <th>tau^2</th><th>I^2</th></tr></thead>
      <tbody></tbody>
    </table>
    <div id="plot"><p class="placeholder">No studies included yet.</p></div>
  </section>`;
}

function armSummaryHtml(study: SessionStudy, arm: "cases" | "controls"): string {
  const assessment: ArmAssessment = study[arm];
  const test = assessment.test;
  const badge = test
    ? `<span class="badge ${test.reject ? "reject" : "keep"}" data-verdict-for="${study.payload.id}.${arm}">${test.verdict}</span>`
    : `<span class="badge na" data-verdict-for="${study.payload.id}.${arm}">No test</span>`;
  const stat = test
    ? `<div class="stat">stat ${exactString(test.statistic)} vs ${exactString(test.critical_value)}</div>`
    : "";
  const est = assessment.estimate;
  const moments = `<div class="moments">mean ${exactString(est.mean)} (${est.mean_method}), ` +
    `sd ${exactString(est.sd)} (${est.sd_method})</div>`;
  return badge + stat + moments;
}

export function initApp(root: HTMLElement, options: AppOptions): AppHandle {
  buildSkeleton(root);
  const session = new Session(options.storage ?? null);
  const client = options.client;
  const statusNode = root.querySelector<HTMLElement>("#entry-status")!;
  const alphaInput = root.querySelector<HTMLInputElement>("#alpha")!;
  const sourceSelect = root.querySelector<HTMLSelectElement>("#source")!;
  alphaInput.value = String(session.alpha);
  sourceSelect.value = session.source;

  const handle: AppHandle = {
    root,
    client,
    session,
    lastMeta: null,
    addStudy,
    loadExample,
    setIncluded,
    removeStudy,
    reassessAll,
    refresh,
    readForm,
    submitForm,
  };

  function currentAlpha(): number {
    return Number(alphaInput.value || "0.05");
  }

  function currentSource(): string {
    return sourceSelect.value;
  }

  function setStatus(text: string, isError = false): void {
    statusNode.textContent = text;
    statusNode.classList.toggle("error", isError);
  }

  function readArm(arm: "cases" | "controls"): SummaryInput {
    const scenario = root.querySelector<HTMLSelectElement>("#scenario")!.value as ScenarioCode;
    const summary: SummaryInput = { scenario, n: NaN };
    for (const field of ARM_FIELDS) {
      const input = root.querySelector<HTMLInputElement>(
        `input[data-arm="${arm}"][data-field="${field}"]`,
      )!;
      const raw = input.value.trim();
      if (field === "n") {
        summary.n = raw === "" ? NaN : Number(raw);
      } else if (raw !== "") {
        summary[field] = Number(raw);
      }
    }
    return summary;
  }

  function readForm(): StudyPayload {
    const id = root.querySelector<HTMLInputElement>("#study-id")!.value.trim();
    const label = root.querySelector<HTMLInputElement>("#study-label")!.value.trim() || id;
    return { id, label, cases: readArm("cases"), controls: readArm("controls") };
  }

  function clearFieldErrors(): void {
    root.querySelectorAll<HTMLElement>(".field-error").forEach((node) => {
      node.textContent = "";
    });
  }

  function showFieldErrors(arm: "cases" | "controls", errors: Record<string, string>): void {
    for (const [field, message] of Object.entries(errors)) {
      const slot = root.querySelector<HTMLElement>(
        `[data-error-for="${arm}.${field}"]`,
      );
      if (slot) slot.textContent = message;
    }
  }

  async function assessStudy(payload: StudyPayload): Promise<SessionStudy> {
    const alpha = currentAlpha();
    const source = currentSource();
    const arms = {} as Record<"cases" | "controls", ArmAssessment>;
    for (const arm of ["cases", "controls"] as const) {
      const summary = canonicalSummary(payload[arm]);
      const test = TESTABLE_SCENARIOS.has(summary.scenario)
        ? await client.testSummary(summary, alpha, source)
        : null;
      const estimate = await client.estimateSummary(summary);
      arms[arm] = { test, estimate };
    }
    const defaultExcluded = Boolean(arms.cases.test?.reject || arms.controls.test?.reject);
    return {
      payload,
      cases: arms.cases,
      controls: arms.controls,
      defaultExcluded,
      included: !defaultExcluded,
    };
  }

  async function addStudy(payload: StudyPayload): Promise<void> {
    const study = await assessStudy(payload);
    session.addStudy(study);
    renderStudies();
    await refresh();
  }

  async function submitForm(): Promise<boolean> {
    clearFieldErrors();
    const payload = readForm();
    if (!payload.id) {
      root.querySelector<HTMLElement>('[data-error-for="study.id"]')!.textContent =
        "required";
      return false;
    }
    if (session.hasStudy(payload.id)) {
      root.querySelector<HTMLElement>('[data-error-for="study.id"]')!.textContent =
        "already in session";
      return false;
    }
    let valid = true;
    for (const arm of ["cases", "controls"] as const) {
      const errors = validateSummary(payload[arm]);
      if (!isValid(errors)) {
        showFieldErrors(arm, errors as Record<string, string>);
        valid = false;
      }
    }
    if (!valid) return false; // invalid input: no request is sent
    try {
      await addStudy(payload);
      setStatus(`added ${payload.id}`);
      return true;
    } catch (err) {
      setStatus(err instanceof ApiRequestError ? err.message : String(err), true);
      return false;
    }
  }

  async function loadExample(): Promise<void> {
    const dataset = await client.vitaminDataset();
    for (const study of dataset.studies) {
      if (session.hasStudy(study.id)) continue;
      const payload: StudyPayload = {
        id: study.id,
        label: study.label,
        cases: canonicalSummary(study.cases),
        controls: canonicalSummary(study.controls),
      };
      const assessed = await assessStudy(payload);
      session.addStudy(assessed);
    }
    renderStudies();
    await refresh();
  }

  async function setIncluded(id: string, included: boolean): Promise<void> {
    session.setIncluded(id, included);
    renderStudies();
    await refresh();
  }

  async function removeStudy(id: string): Promise<void> {
    session.removeStudy(id);
    renderStudies();
    await refresh();
  }

  // Alpha or source changed: stored verdicts no longer apply, so every
  // testable arm is re-tested before pooling again.
  async function reassessAll(): Promise<void> {
    for (const study of [...session.studies]) {
      const fresh = await assessStudy(study.payload);
      session.reassess(study.payload.id, fresh.cases, fresh.controls,
        fresh.defaultExcluded);
    }
    renderStudies();
    await refresh();
  }

  function renderStudies(): void {
    const body = root.querySelector<HTMLTableSectionElement>("#studies tbody")!;
    body.innerHTML = "";
    for (const study of session.studies) {
      const row = el("tr", { "data-study-row": study.payload.id });
      const override = session.isOverride(study);
      if (override) row.classList.add("override");
      const toggleCell = el("td");
      const checkbox = el("input", {
        type: "checkbox",
        "data-toggle": study.payload.id,
      }) as HTMLInputElement;
      checkbox.checked = study.included;
      checkbox.addEventListener("change", () => {
        void setIncluded(study.payload.id, checkbox.checked);
      });
      const removeButton = el("button", {
        type: "button",
        class: "remove",
        "data-remove": study.payload.id,
        title: "remove study",
      }, "&#10005;");
      removeButton.addEventListener("click", () => {
        void removeStudy(study.payload.id);
      });
      toggleCell.append(checkbox, removeButton);
      const labelCell = el(
        "td",
        {},
        `<strong>${study.payload.label}</strong>` +
        `<div class="scenario">${study.payload.cases.scenario}, n=${study.payload.cases.n}/` +
        `${study.payload.controls.n}</div>` +
        (study.defaultExcluded
          ? `<div class="default-note">${override
            ? '<span class="flag" data-flag="override">included despite rejection</span>'
            : "excluded by default"}</div>`
          : ""),
      );
      row.append(
        toggleCell,
        labelCell,
        el("td", {}, armSummaryHtml(study, "cases")),
        el("td", {}, armSummaryHtml(study, "controls")),
      );
      body.append(row);
    }
  }

  function renderMeta(meta: MetaResponse | null): void {
    const pooledBody = root.querySelector<HTMLTableSectionElement>("#pooled tbody")!;
    const plot = root.querySelector<HTMLElement>("#plot")!;
    if (!meta) {
      pooledBody.innerHTML = "";
      plot.innerHTML = '<p class="placeholder">No studies included yet.</p>';
      return;
    }
    pooledBody.innerHTML = "";
    for (const model of [meta.fixed, meta.random]) {
      const row = el("tr", { "data-pooled-row": model.model });
      row.innerHTML =
        `<td>${model.model}</td>` +
        `<td data-field="pooled_md">${exactString(model.pooled_md)}</td>` +
        `<td data-field="ci_low">${exactString(model.ci_low)}</td>` +
        `<td data-field="ci_high">${exactString(model.ci_high)}</td>` +
        `<td data-field="tau2">${exactString(model.tau2)}</td>` +
        `<td data-field="i2">${pct(100 * model.i2)}</td>`;
      pooledBody.append(row);
    }
    plot.innerHTML = renderForestSvg(meta.forest);
  }

  async function refresh(): Promise<void> {
    session.alpha = currentAlpha();
    session.source = currentSource();
    session.save();
    const { studies, forceInclude } = session.metaArgs();
    if (studies.length === 0) {
      handle.lastMeta = null;
      renderMeta(null);
      return;
    }
    try {
      const meta = await client.metaAnalyze(studies, currentAlpha(), currentSource(),
        forceInclude);
      handle.lastMeta = meta;
      renderMeta(meta);
      setStatus(`pooled ${studies.length} studies`);
    } catch (err) {
      setStatus(err instanceof ApiRequestError ? err.message : String(err), true);
    }
  }

  root.querySelector<HTMLButtonElement>("#add-study")!.addEventListener("click", () => {
    void submitForm();
  });
  root.querySelector<HTMLButtonElement>("#load-example")!.addEventListener("click", () => {
    setStatus("loading example dataset...");
    loadExample().then(
      () => setStatus("example dataset loaded"),
      (err) => setStatus(String(err), true),
    );
  });
  root.querySelector<HTMLButtonElement>("#clear-session")!.addEventListener("click", () => {
    session.clear();
    renderStudies();
    void refresh();
  });
  alphaInput.addEventListener("change", () => void reassessAll());
  sourceSelect.addEventListener("change", () => void reassessAll());

  renderStudies();
  void refresh();
  return handle;
}
