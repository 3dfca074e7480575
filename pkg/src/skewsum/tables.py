"""Embedded critical-value tables (plain-text asset, versioned).

One row per (scenario, Q) with n = 4Q + 1 and the 0.05-level critical value;
100 rows per scenario. ``dump_table_asset`` re-emits the asset verbatim so
the shipped data can be inspected from the command line.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import InvalidArgumentError
from .summaries import Scenario

ASSET_NAME = "critical_values_v1.txt"
TABLE_N_MIN = 5
TABLE_N_MAX = 401


@dataclass(frozen=True)
class CriticalTable:
    scenario: Scenario
    rows: tuple[tuple[int, int, float], ...]   # (Q, n, value)

    def value_at_q(self, q: int) -> float:
        return self.rows[q - 1][2]


def _read_asset() -> str:
    return resources.files("skewsum").joinpath(f"data/{ASSET_NAME}").read_text()


@lru_cache(maxsize=1)
def load_tables() -> dict[Scenario, CriticalTable]:
    per_scenario: dict[Scenario, list[tuple[int, int, float]]] = {
        Scenario.S1: [], Scenario.S2: [], Scenario.S3: []}
    for line in _read_asset().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, q_str, n_str, v_str = line.split()
        per_scenario[Scenario.parse(tag)].append((int(q_str), int(n_str), float(v_str)))
    out = {}
    for scenario, rows in per_scenario.items():
        rows.sort()
        if len(rows) != 100 or rows[0][0] != 1 or rows[-1][0] != 100:
            raise RuntimeError(f"corrupt table asset for scenario {scenario.value}")
        for q, n, v in rows:
            if n != 4 * q + 1 or v <= 0.0:
                raise RuntimeError(f"corrupt table row {scenario.value} Q={q}")
        out[scenario] = CriticalTable(scenario, tuple(rows))
    return out


def dump_table_asset() -> str:
    """The shipped table asset, byte for byte."""
    return _read_asset()


def table_values(scenario: Scenario) -> tuple[tuple[int, int, float], ...]:
    scenario = Scenario.parse(scenario)
    if scenario not in load_tables():
        raise InvalidArgumentError(f"no table for scenario {scenario.value}")
    return load_tables()[scenario].rows
