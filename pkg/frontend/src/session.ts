// Session state: the ordered study list with verdicts and inclusion flags,
// persisted locally (reload-safe) and never on the server.

import { EstimateResult, StudyPayload, TestResult } from "./types.js";

export interface ArmAssessment {
  test: TestResult | null; // null when the scenario is untestable
  estimate: EstimateResult;
}

export interface SessionStudy {
  payload: StudyPayload;
  cases: ArmAssessment;
  controls: ArmAssessment;
  /** True when some tested arm rejected: the flow chart's default is exclusion. */
  defaultExcluded: boolean;
  /** Current user choice; starts as !defaultExcluded. */
  included: boolean;
  /** Set once the user toggles inclusion by hand; re-assessment then keeps
      their choice instead of resetting to the verdict default. */
  touched?: boolean;
}

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export interface SessionData {
  alpha: number;
  source: string;
  studies: SessionStudy[];
}

const DEFAULTS: SessionData = { alpha: 0.05, source: "approx", studies: [] };

export class Session {
  alpha: number;
  source: string;
  studies: SessionStudy[];

  constructor(
    private readonly storage: StorageLike | null = null,
    private readonly key: string = "skewsum-session",
  ) {
    this.alpha = DEFAULTS.alpha;
    this.source = DEFAULTS.source;
    this.studies = [];
    this.load();
  }

  load(): void {
    if (!this.storage) return;
    const raw = this.storage.getItem(this.key);
    if (!raw) return;
    try {
      const data = JSON.parse(raw) as SessionData;
      this.alpha = data.alpha ?? DEFAULTS.alpha;
      this.source = data.source ?? DEFAULTS.source;
      this.studies = Array.isArray(data.studies) ? data.studies : [];
    } catch {
      this.storage.removeItem(this.key);
    }
  }

  save(): void {
    if (!this.storage) return;
    const data: SessionData = {
      alpha: this.alpha,
      source: this.source,
      studies: this.studies,
    };
    this.storage.setItem(this.key, JSON.stringify(data));
  }

  clear(): void {
    this.studies = [];
    this.save();
  }

  hasStudy(id: string): boolean {
    return this.studies.some((s) => s.payload.id === id);
  }

  addStudy(study: SessionStudy): void {
    if (this.hasStudy(study.payload.id)) {
      throw new Error(`study id already in session: ${study.payload.id}`);
    }
    this.studies.push(study);
    this.save();
  }

  removeStudy(id: string): void {
    this.studies = this.studies.filter((s) => s.payload.id !== id);
    this.save();
  }

  setIncluded(id: string, included: boolean): void {
    const study = this.studies.find((s) => s.payload.id === id);
    if (!study) throw new Error(`no such study: ${id}`);
    study.included = included;
    study.touched = true;
    this.save();
  }

  toggle(id: string): void {
    const study = this.studies.find((s) => s.payload.id === id);
    if (!study) throw new Error(`no such study: ${id}`);
    study.included = !study.included;
    study.touched = true;
    this.save();
  }

  /** Replace a study's verdicts/estimates after alpha or source changed.
      Untouched studies fall back to the new verdict default. */
  reassess(id: string, cases: ArmAssessment, controls: ArmAssessment,
           defaultExcluded: boolean): void {
    const study = this.studies.find((s) => s.payload.id === id);
    if (!study) throw new Error(`no such study: ${id}`);
    study.cases = cases;
    study.controls = controls;
    study.defaultExcluded = defaultExcluded;
    if (!study.touched) study.included = !defaultExcluded;
    this.save();
  }

  /** Included despite a rejecting verdict: explicit override, flagged in the UI. */
  isOverride(study: SessionStudy): boolean {
    return study.defaultExcluded && study.included;
  }

  includedStudies(): SessionStudy[] {
    return this.studies.filter((s) => s.included);
  }

  /** Payload for /api/meta reflecting the current inclusion set. */
  metaArgs(): { studies: StudyPayload[]; forceInclude: string[] } {
    const included = this.includedStudies();
    return {
      studies: included.map((s) => s.payload),
      forceInclude: included.filter((s) => this.isOverride(s)).map((s) => s.payload.id),
    };
  }
}
