// Wire types mirroring the HTTP API payloads.

export type ScenarioCode = "s1" | "s2" | "s3" | "mean_sd" | "mean_range";

export const TESTABLE_SCENARIOS: ReadonlySet<ScenarioCode> = new Set(["s1", "s2", "s3"]);

export interface SummaryInput {
  scenario: ScenarioCode;
  n: number;
  a?: number | null;
  q1?: number | null;
  m?: number | null;
  q3?: number | null;
  b?: number | null;
  mean?: number | null;
  sd?: number | null;
}

export interface StudyPayload {
  id: string;
  label: string;
  cases: SummaryInput;
  controls: SummaryInput;
}

export interface TestResult {
  scenario: ScenarioCode;
  statistic: number;
  critical_value: number;
  critical: number;
  alpha: number;
  source: string;
  reject: boolean;
  verdict: string;
  theta1_hat: number | null;
  theta2_hat: number | null;
}

export interface EstimateResult {
  scenario: ScenarioCode;
  n: number;
  mean: number;
  sd: number;
  mean_method: string;
  sd_method: string;
}

export interface StudyEffect {
  id: string;
  md: number;
  se: number;
  weight: number;
}

export interface MetaModelResult {
  model: "fixed" | "random";
  pooled_md: number;
  ci_low: number;
  ci_high: number;
  se: number;
  q_stat: number;
  tau2: number;
  i2: number;
  per_study: StudyEffect[];
}

export interface ForestRow {
  id: string;
  md: number;
  ci_low: number;
  ci_high: number;
  weight_pct: number;
  model: string;
}

export interface ArmDecision {
  test: TestResult | null;
  moments: { mean: number; sd: number; mean_method: string; sd_method: string } | null;
}

export interface StudyDecision {
  study_id: string;
  included: boolean;
  exclusion_reason: string | null;
  cases: ArmDecision;
  controls: ArmDecision;
}

export interface MetaResponse {
  decisions: StudyDecision[];
  fixed: MetaModelResult;
  random: MetaModelResult;
  forest: ForestRow[];
}

export interface DatasetStudy {
  id: string;
  label: string;
  cases: SummaryInput;
  controls: SummaryInput;
}

export interface ApiError {
  code: string;
  message: string;
  field: string | null;
}
