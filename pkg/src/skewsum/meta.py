"""Study ingestion, the per-study decision flow, and mean-difference pooling.

The flow per study: run the scenario's skewness test on each testable arm;
if any arm rejects, the study is excluded; otherwise the arms' summaries are
converted to means/SDs (or taken verbatim when reported) and the study joins
the pool. Pooling is inverse-variance, fixed-effect and DerSimonian-Laird
random-effects, on the mean difference cases - controls.
"""

import csv
import io
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import IngestError, InvalidArgumentError, NoStudiesError
from .estimators import MomentEstimate, estimate_moments
from .normal import std_normal_quantile
from .skewtests import SkewTestResult, run_test
from .sources import ApproxFormula, CriticalValueSource
from .summaries import Scenario, SummaryRecord

CI_MULTIPLIER = std_normal_quantile(0.975)

CSV_COLUMNS = ("id", "label", "arm", "scenario", "a", "q1", "m", "q3", "b", "mean", "sd", "n")
FOREST_COLUMNS = ("id", "md", "ci_low", "ci_high", "weight_pct", "model")
DATASET_NAME = "vitamin_d.csv"


@dataclass(frozen=True)
class StudyRecord:
    id: str
    label: str
    cases: SummaryRecord
    controls: SummaryRecord


@dataclass(frozen=True)
class ArmOutcome:
    test: Optional[SkewTestResult]      # None when the scenario is untestable
    moments: Optional[MomentEstimate]   # None when the arm rejected


@dataclass(frozen=True)
class FlowDecision:
    study_id: str
    cases: ArmOutcome
    controls: ArmOutcome
    included: bool
    exclusion_reason: Optional[str] = None


@dataclass(frozen=True)
class StudyMoments:
    """One pooled study's per-arm moments."""

    id: str
    mean_cases: float
    sd_cases: float
    n_cases: int
    mean_controls: float
    sd_controls: float
    n_controls: int

    @property
    def md(self) -> float:
        return self.mean_cases - self.mean_controls

    @property
    def variance(self) -> float:
        return (self.sd_cases ** 2 / self.n_cases
                + self.sd_controls ** 2 / self.n_controls)

    @property
    def se(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class StudyEffect:
    id: str
    md: float
    se: float
    weight: float


@dataclass(frozen=True)
class MetaResult:
    model: str                     # "fixed" | "random"
    pooled_md: float
    ci_low: float
    ci_high: float
    per_study: tuple[StudyEffect, ...]
    q_stat: float
    tau2: float
    i2: float

    @property
    def se(self) -> float:
        return (self.ci_high - self.ci_low) / (2.0 * CI_MULTIPLIER)


# ---------------------------------------------------------------------------
# ingestion

_NUMERIC_FIELDS = ("a", "q1", "m", "q3", "b", "mean", "sd")


def _summary_from_fields(fields: dict, line: int | None) -> SummaryRecord:
    scenario = fields.get("scenario")
    if scenario in (None, ""):
        raise IngestError("missing scenario", line)
    kwargs = {}
    for key in _NUMERIC_FIELDS:
        raw = fields.get(key)
        if raw is None or raw == "":
            continue
        try:
            kwargs[key] = float(raw)
        except (TypeError, ValueError):
            raise IngestError(f"field {key!r} is not a number: {raw!r}", line) from None
    raw_n = fields.get("n")
    if raw_n in (None, ""):
        raise IngestError("missing n", line)
    try:
        n = int(raw_n)
    except (TypeError, ValueError):
        raise IngestError(f"n is not an integer: {raw_n!r}", line) from None
    try:
        return SummaryRecord(scenario=Scenario.parse(scenario), n=n, **kwargs)
    except (InvalidArgumentError, ValueError) as exc:
        raise IngestError(str(exc), line) from None


def _ingest_csv(stream: io.TextIOBase) -> list[StudyRecord]:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        return []
    missing = set(CSV_COLUMNS) - set(reader.fieldnames)
    if missing:
        raise IngestError(f"missing columns: {sorted(missing)}", line=1)
    arms: dict[str, dict] = {}
    order: list[str] = []
    for row in reader:
        line = reader.line_num
        study_id = (row.get("id") or "").strip()
        if not study_id:
            raise IngestError("missing study id", line)
        arm = (row.get("arm") or "").strip().lower()
        if arm not in ("cases", "controls"):
            raise IngestError(f"arm must be 'cases' or 'controls', got {row.get('arm')!r}", line)
        entry = arms.setdefault(study_id, {"label": (row.get("label") or study_id).strip()})
        if study_id not in order:
            order.append(study_id)
        if arm in entry:
            raise IngestError(f"duplicate {arm} row for study {study_id!r}", line)
        entry[arm] = _summary_from_fields(row, line)
    studies = []
    for study_id in order:
        entry = arms[study_id]
        for arm in ("cases", "controls"):
            if arm not in entry:
                raise IngestError(f"study {study_id!r} is missing its {arm} row")
        studies.append(StudyRecord(id=study_id, label=entry["label"],
                                   cases=entry["cases"], controls=entry["controls"]))
    return studies


def _ingest_json(text: str) -> list[StudyRecord]:
    try:
        payload = json.loads(text) if text.strip() else []
    except json.JSONDecodeError as exc:
        raise IngestError(f"invalid JSON: {exc}") from None
    if isinstance(payload, dict):
        payload = payload.get("studies", [])
    studies = []
    for i, item in enumerate(payload):
        if not isinstance(item, dict):
            raise IngestError(f"study #{i + 1} is not an object")
        study_id = str(item.get("id") or "").strip()
        if not study_id:
            raise IngestError(f"study #{i + 1} has no id")
        label = str(item.get("label") or study_id)
        arms = {}
        for arm in ("cases", "controls"):
            fields = item.get(arm)
            if not isinstance(fields, dict):
                raise IngestError(f"study {study_id!r} is missing its {arm} object")
            arms[arm] = _summary_from_fields(fields, line=None)
        studies.append(StudyRecord(id=study_id, label=label, **arms))
    return studies


def _ingest_text(text: str) -> list[StudyRecord]:
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return _ingest_json(text)
    return _ingest_csv(io.StringIO(text))


def ingest(source) -> list[StudyRecord]:
    """Read study records from a CSV/JSON path, stream, or text payload."""
    if hasattr(source, "read"):
        return _ingest_text(source.read())
    if isinstance(source, Path):
        return _ingest_text(source.read_text())
    text = str(source)
    if "\n" in text or text.lstrip().startswith(("[", "{")):
        return _ingest_text(text)
    return _ingest_text(Path(text).read_text())


def load_vitamin_d() -> list[StudyRecord]:
    """The bundled six-study serum vitamin D dataset."""
    text = resources.files("skewsum").joinpath(f"data/{DATASET_NAME}").read_text()
    return _ingest_csv(io.StringIO(text))


# ---------------------------------------------------------------------------
# decision flow

def apply_flowchart(
    study: StudyRecord,
    alpha: float = 0.05,
    source: CriticalValueSource = ApproxFormula(),
    force_include: bool = False,
) -> FlowDecision:
    """Test each testable arm and attach moment estimates or an exclusion.

    ``force_include`` keeps a rejecting study in the pool (its summaries are
    transformed as if not rejected), used for sensitivity comparisons.
    """
    outcomes = {}
    rejected = []
    for arm_name in ("cases", "controls"):
        arm = getattr(study, arm_name)
        test = run_test(arm, alpha, source) if arm.scenario.testable else None
        if test is not None and test.reject:
            rejected.append(arm_name)
        outcomes[arm_name] = test
    included = not rejected or force_include
    reason = None
    if rejected and not force_include:
        reason = "skewness test rejected for " + " and ".join(rejected)
    decision_arms = {}
    for arm_name in ("cases", "controls"):
        arm = getattr(study, arm_name)
        moments = estimate_moments(arm) if included else None
        decision_arms[arm_name] = ArmOutcome(test=outcomes[arm_name], moments=moments)
    return FlowDecision(study_id=study.id, cases=decision_arms["cases"],
                        controls=decision_arms["controls"], included=included,
                        exclusion_reason=reason)


def study_moments(study: StudyRecord, decision: FlowDecision) -> StudyMoments:
    if not decision.included:
        raise InvalidArgumentError(f"study {study.id!r} was excluded")
    return StudyMoments(
        id=study.id,
        mean_cases=decision.cases.moments.mean,
        sd_cases=decision.cases.moments.sd,
        n_cases=study.cases.n,
        mean_controls=decision.controls.moments.mean,
        sd_controls=decision.controls.moments.sd,
        n_controls=study.controls.n,
    )


# ---------------------------------------------------------------------------
# pooling

def _effects(studies: Sequence[StudyMoments], tau2: float) -> tuple[list[float], list[float]]:
    weights = [1.0 / (s.variance + tau2) for s in studies]
    mds = [s.md for s in studies]
    return mds, weights


def _pooled(model: str, studies: Sequence[StudyMoments], tau2: float,
            q_stat: float, i2: float) -> MetaResult:
    mds, weights = _effects(studies, tau2)
    total = sum(weights)
    pooled = sum(w * m for w, m in zip(weights, mds)) / total
    se = 1.0 / math.sqrt(total)
    per_study = tuple(
        StudyEffect(id=s.id, md=s.md, se=s.se, weight=w / total)
        for s, w in zip(studies, weights)
    )
    return MetaResult(
        model=model,
        pooled_md=pooled,
        ci_low=pooled - CI_MULTIPLIER * se,
        ci_high=pooled + CI_MULTIPLIER * se,
        per_study=per_study,
        q_stat=q_stat,
        tau2=tau2,
        i2=i2,
    )


def _heterogeneity(studies: Sequence[StudyMoments]) -> tuple[float, float, float]:
    mds, weights = _effects(studies, 0.0)
    total = sum(weights)
    pooled = sum(w * m for w, m in zip(weights, mds)) / total
    q_stat = sum(w * (m - pooled) ** 2 for w, m in zip(weights, mds))
    df = len(studies) - 1
    if df == 0:
        return q_stat, 0.0, 0.0
    denom = total - sum(w * w for w in weights) / total
    tau2 = max(0.0, (q_stat - df) / denom)
    i2 = max(0.0, (q_stat - df) / q_stat) if q_stat > 0.0 else 0.0
    return q_stat, tau2, i2


def pool_fixed(studies: Sequence[StudyMoments]) -> MetaResult:
    """Inverse-variance fixed-effect pooling of the mean differences."""
    if not studies:
        raise NoStudiesError("fixed-effect pooling needs at least one study")
    q_stat, _, i2 = _heterogeneity(studies)
    return _pooled("fixed", studies, 0.0, q_stat, i2)


def pool_random(studies: Sequence[StudyMoments]) -> MetaResult:
    """DerSimonian-Laird random-effects pooling (tau^2 truncated at zero)."""
    if not studies:
        raise NoStudiesError("random-effects pooling needs at least one study")
    q_stat, tau2, i2 = _heterogeneity(studies)
    return _pooled("random", studies, tau2, q_stat, i2)


# ---------------------------------------------------------------------------
# forest export

@dataclass(frozen=True)
class ForestRow:
    id: str
    md: float
    ci_low: float
    ci_high: float
    weight_pct: float
    model: str


def forest_data(results: Sequence[MetaResult]) -> list[ForestRow]:
    """Per-study rows (weights from the first model) plus one pooled row per model."""
    if not results:
        raise NoStudiesError("forest export needs at least one pooled result")
    first = results[0]
    rows = [
        ForestRow(
            id=e.id,
            md=e.md,
            ci_low=e.md - CI_MULTIPLIER * e.se,
            ci_high=e.md + CI_MULTIPLIER * e.se,
            weight_pct=100.0 * e.weight,
            model=first.model,
        )
        for e in first.per_study
    ]
    for result in results:
        rows.append(ForestRow(
            id=f"pooled ({result.model})",
            md=result.pooled_md,
            ci_low=result.ci_low,
            ci_high=result.ci_high,
            weight_pct=100.0,
            model=result.model,
        ))
    return rows


def forest_csv(rows: Iterable[ForestRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(FOREST_COLUMNS)
    for row in rows:
        writer.writerow([row.id, repr(row.md), repr(row.ci_low), repr(row.ci_high),
                         repr(row.weight_pct), row.model])
    return buf.getvalue()


def parse_forest_csv(text: str) -> list[ForestRow]:
    reader = csv.DictReader(io.StringIO(text))
    return [
        ForestRow(id=r["id"], md=float(r["md"]), ci_low=float(r["ci_low"]),
                  ci_high=float(r["ci_high"]), weight_pct=float(r["weight_pct"]),
                  model=r["model"])
        for r in reader
    ]


# ---------------------------------------------------------------------------
# end-to-end convenience

@dataclass(frozen=True)
class PipelineResult:
    decisions: tuple[FlowDecision, ...]
    included: tuple[StudyMoments, ...]
    fixed: MetaResult
    random: MetaResult

    def forest_rows(self) -> list[ForestRow]:
        return forest_data([self.fixed, self.random])


def meta_analyze(
    studies: Sequence[StudyRecord],
    alpha: float = 0.05,
    source: CriticalValueSource = ApproxFormula(),
    force_include: Sequence[str] = (),
) -> PipelineResult:
    """Run the decision flow over all studies and pool the included ones."""
    forced = set(force_include)
    unknown = forced - {s.id for s in studies}
    if unknown:
        raise InvalidArgumentError(f"force_include names unknown studies: {sorted(unknown)}")
    decisions = []
    included = []
    for study in studies:
        decision = apply_flowchart(study, alpha, source, force_include=study.id in forced)
        decisions.append(decision)
        if decision.included:
            included.append(study_moments(study, decision))
    if not included:
        raise NoStudiesError("every study was excluded; nothing to pool")
    return PipelineResult(
        decisions=tuple(decisions),
        included=tuple(included),
        fixed=pool_fixed(included),
        random=pool_random(included),
    )
