"""Critical-value sources a test verdict can be computed against."""

from dataclasses import dataclass
from typing import Union

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class ExactTable:
    """Embedded table of simulated critical values (alpha fixed at 0.05)."""


@dataclass(frozen=True)
class ApproxFormula:
    """Closed-form approximation of the critical values (alpha fixed at 0.05)."""


@dataclass(frozen=True)
class Asymptotic:
    """Large-sample null distribution; any alpha, scenarios S1 and S2 only."""


@dataclass(frozen=True)
class MonteCarlo:
    """Fresh simulation of the null distribution; any alpha, any scenario."""

    reps: int = 100_000
    seed: int = 0


CriticalValueSource = Union[ExactTable, ApproxFormula, Asymptotic, MonteCarlo]

_NAMES = {"table": ExactTable, "exact": ExactTable, "approx": ApproxFormula,
          "asymptotic": Asymptotic, "mc": MonteCarlo, "montecarlo": MonteCarlo}


def parse_source(name: str, reps: int | None = None, seed: int | None = None) -> CriticalValueSource:
    key = name.strip().lower()
    if key not in _NAMES:
        raise InvalidArgumentError(
            f"unknown critical-value source {name!r} (expected one of {sorted(set(_NAMES))})")
    cls = _NAMES[key]
    if cls is MonteCarlo:
        kwargs = {}
        if reps is not None:
            kwargs["reps"] = reps
        if seed is not None:
            kwargs["seed"] = seed
        return MonteCarlo(**kwargs)
    return cls()


def source_label(source: CriticalValueSource) -> str:
    if isinstance(source, ExactTable):
        return "table"
    if isinstance(source, ApproxFormula):
        return "approx"
    if isinstance(source, Asymptotic):
        return "asymptotic"
    if isinstance(source, MonteCarlo):
        return f"mc(reps={source.reps}, seed={source.seed})"
    raise InvalidArgumentError(f"unknown critical-value source: {source!r}")
